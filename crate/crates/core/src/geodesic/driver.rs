//! The main loop: solve, refit, look for shortcuts, insert, repeat.

use super::refit::refit_sequence;
use super::sequence::extended_normal_cube_path;
use super::shortcut::{apply_witness, check_directions, ShortcutWitness};
use super::tension::{leg, surrounding_legs, zero_tension_residual, DEGENERATE_FACTOR};
use super::touring::{touring_solve_from, TourSolution};
use super::{Certificate, CubeSequence, GeodesicError, GeodesicPath, TraceEntry, DEFAULT_TOL};
use crate::complex::{Point, DEFAULT_EMBEDDING_TOL};
use crate::interval::{interval_endpoints, IntervalError, IntervalFrame};
use crate::pip::{consistent_ideal_sets, covers_by_comparability, Pip};

/// Above this many elements the budget does not count antichains.
const COUNTED_BUDGET_LIMIT: usize = 16;
const FALLBACK_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicOptions {
    /// Solver and certification tolerance.
    pub tol: f64,
    /// Cap on accepted shortcut insertions; `None` uses [`iteration_budget`].
    pub max_iter: Option<usize>,
    /// Snapping tolerance for carrier cubes of the endpoints.
    pub embedding_tol: f64,
}

impl Default for GeodesicOptions {
    fn default() -> Self {
        GeodesicOptions { tol: DEFAULT_TOL, max_iter: None, embedding_tol: DEFAULT_EMBEDDING_TOL }
    }
}

/// `10 · (number of maximal antichains of Q)²`.
pub fn iteration_budget(q: &Pip) -> usize {
    if q.len() > COUNTED_BUDGET_LIMIT {
        return FALLBACK_BUDGET;
    }
    let m = consistent_ideal_sets(q)
        .iter()
        .filter(|i| !i.is_clear() && covers_by_comparability(q, &q.maximal_of(i)))
        .count()
        .max(1);
    10 * m * m
}

pub(crate) fn frame_for(pip: &Pip, x: &Point, y: &Point, opts: &GeodesicOptions) -> Result<IntervalFrame, GeodesicError> {
    interval_endpoints(pip, x, y, opts.embedding_tol).map_err(|e| match e {
        IntervalError::InvalidPoint(c) => GeodesicError::InvalidPoint(c),
        other => GeodesicError::Interval(other),
    })
}

/// Touring solve that falls back to the best iterate when the cap is hit.
pub(crate) fn solve(seq: &CubeSequence, x: &Point, y: &Point, init: &[Point], tol: f64) -> TourSolution {
    match touring_solve_from(seq, x, y, init, tol) {
        Ok(s) => s,
        Err(GeodesicError::ToleranceNotReached(best)) => {
            log::warn!("touring solver stopped at projected gradient {:.3e}", best.projected_gradient);
            *best
        }
        Err(e) => unreachable!("touring solver only fails on its cap: {e}"),
    }
}

fn interior(bps: &[Point]) -> Vec<Point> {
    bps[1..bps.len() - 1].to_vec()
}

pub(crate) fn straight_init(k: usize, x: &Point, y: &Point) -> Vec<Point> {
    (1..k)
        .map(|i| {
            let t = i as f64 / k as f64;
            Point::new(x.coords().iter().zip(y.coords()).map(|(a, b)| a + t * (b - a)).collect())
        })
        .collect()
}

/// Every firing shortcut test, lightest cover first.
pub(crate) fn find_witnesses(q: &Pip, seq: &CubeSequence, bps: &[Point], tol: f64) -> Vec<ShortcutWitness> {
    let cubes = seq.cubes();
    let mut out = Vec::new();
    for i in 1..cubes.len() {
        let Some((inc, outg)) = surrounding_legs(bps, i, tol) else {
            continue;
        };
        let u = leg(bps, inc);
        let v = leg(bps, outg);
        if let Some(mut w) = check_directions(q, &cubes[i - 1], &cubes[i], &u, &v, tol) {
            w.index = i;
            out.push(w);
        }
    }
    out.sort_by(|a, b| a.cover_weight.total_cmp(&b.cover_weight).then(a.index.cmp(&b.index)));
    out
}

pub(crate) fn certificate(seq: &CubeSequence, sol: &TourSolution, clean: bool, tol: f64) -> Certificate {
    let residual = if sol.objective < DEGENERATE_FACTOR * tol {
        0.0
    } else {
        zero_tension_residual(seq, &sol.breakpoints, tol).unwrap_or(0.0)
    };
    Certificate {
        zero_tension_residual: residual,
        shortcut_clean: clean,
        certified: clean && residual <= DEGENERATE_FACTOR * tol,
    }
}

pub(crate) fn build_path(
    frame: &IntervalFrame,
    seq: CubeSequence,
    sol: &TourSolution,
    certificate: Certificate,
    trace: Vec<TraceEntry>,
    iterations: usize,
) -> GeodesicPath {
    GeodesicPath {
        breakpoints: sol.breakpoints.iter().map(|p| frame.to_original(p)).collect(),
        cubes: seq.cubes().iter().map(|c| frame.cube_to_original(c)).collect(),
        carrier: seq,
        length: sol.objective,
        certificate,
        trace,
        iterations,
    }
}

/// Computes a geodesic from `x` to `y` in `X_P`.
pub fn geodesic(pip: &Pip, x: &Point, y: &Point, opts: &GeodesicOptions) -> Result<GeodesicPath, GeodesicError> {
    let tol = opts.tol;
    let frame = frame_for(pip, x, y, opts)?;
    let (q, qx, qy) = (&frame.q, &frame.x, &frame.y);
    let budget = opts.max_iter.unwrap_or_else(|| iteration_budget(q));

    let mut seq = extended_normal_cube_path(q, qx, qy, opts.embedding_tol)?;
    let mut sol = solve(&seq, qx, qy, &straight_init(seq.len(), qx, qy), tol);
    let mut trace = vec![TraceEntry { sequence: seq.clone(), objective: sol.objective }];
    let mut iterations = 0;
    log::info!("start {} length {:.12}", seq.display(q), sol.objective);

    loop {
        let refit = refit_sequence(q, &seq, &sol.breakpoints, qx, qy, tol);
        if refit.changed {
            seq = refit.sequence;
            sol = solve(&seq, qx, qy, &interior(&refit.breakpoints), tol);
            log::debug!("refit to {} length {:.12}", seq.display(q), sol.objective);
        }
        if sol.objective < DEGENERATE_FACTOR * tol {
            break;
        }
        let mut accepted = false;
        for w in find_witnesses(q, &seq, &sol.breakpoints, tol) {
            let next = match apply_witness(q, &seq, &w, qx, qy, opts.embedding_tol) {
                Ok(s) => s,
                Err(e) => {
                    log::warn!("skipping witness at breakpoint {}: {e}", w.index);
                    continue;
                }
            };
            let mut init = interior(&sol.breakpoints);
            if next.len() > seq.len() {
                init.insert(w.index - 1, sol.breakpoints[w.index].clone());
            }
            let candidate = solve(&next, qx, qy, &init, tol);
            if candidate.objective < sol.objective - tol {
                if iterations >= budget {
                    let cert = Certificate { certified: false, ..certificate(&seq, &sol, false, tol) };
                    let best = build_path(&frame, seq, &sol, cert, trace, iterations);
                    return Err(GeodesicError::IterationBudgetExceeded { budget, best: Box::new(best) });
                }
                log::info!(
                    "shortcut at breakpoint {} (cover {:.6}): insert {} length {:.12}",
                    w.index,
                    w.cover_weight,
                    w.cube.display(q),
                    candidate.objective
                );
                seq = next;
                sol = candidate;
                iterations += 1;
                trace.push(TraceEntry { sequence: seq.clone(), objective: sol.objective });
                accepted = true;
                break;
            }
            log::debug!(
                "witness at breakpoint {} (cover {:.6}) does not shorten: {:.12} vs {:.12}",
                w.index,
                w.cover_weight,
                candidate.objective,
                sol.objective
            );
        }
        if !accepted {
            break;
        }
    }
    let cert = certificate(&seq, &sol, true, tol);
    log::info!(
        "done after {iterations} shortcuts: length {:.12}, residual {:.3e}",
        sol.objective,
        cert.zero_tension_residual
    );
    Ok(build_path(&frame, seq, &sol, cert, trace, iterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_abs_diff_eq;

    #[test]
    fn equal_points_give_zero_length() {
        let g = fixtures::grid22();
        let x = Point::new(vec![1.0, 0.3, 0.0, 0.0]);
        let p = geodesic(&g, &x, &x, &GeodesicOptions::default()).unwrap();
        assert_eq!(p.length, 0.0);
        assert!(p.certificate.certified);
        assert_eq!(p.breakpoints.len(), 2);
    }

    #[test]
    fn grid32_corner_to_corner() {
        let g = fixtures::grid32();
        let p = geodesic(&g, &Point::zeros(5), &Point::new(vec![1.0; 5]), &GeodesicOptions::default()).unwrap();
        assert_abs_diff_eq!(p.length, 13f64.sqrt(), epsilon = 1e-8);
        assert!(p.certificate.certified);
    }

    #[test]
    fn book_unfolds() {
        let b = fixtures::book();
        let x = Point::new(vec![0.5, 0.2, 0.0]);
        let y = Point::new(vec![0.0, 0.8, 0.5]);
        let p = geodesic(&b, &x, &y, &GeodesicOptions::default()).unwrap();
        assert_abs_diff_eq!(p.length, 1.36f64.sqrt(), epsilon = 1e-8);
        assert_eq!(p.breakpoints.len(), 3);
        let mid = &p.breakpoints[1];
        for (a, e) in mid.coords().iter().zip([0.0, 0.5, 0.0]) {
            assert_abs_diff_eq!(*a, e, epsilon = 1e-6);
        }
        assert!(p.certificate.certified);
    }

    #[test]
    fn grid_takes_one_shortcut() {
        let g = fixtures::grid22();
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let p = geodesic(&g, &x, &y, &GeodesicOptions::default()).unwrap();
        assert_eq!(p.iterations, 1);
        assert_abs_diff_eq!(p.trace[0].objective, 2.0 * 1.64f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(p.length, 1.8 * 2f64.sqrt(), epsilon = 1e-8);
        assert!(p.certificate.certified);
    }

    #[test]
    fn invalid_points_are_rejected() {
        let b = fixtures::book();
        let bad = Point::new(vec![0.5, 0.2, 0.5]);
        assert!(matches!(
            geodesic(&b, &bad, &Point::zeros(3), &GeodesicOptions::default()),
            Err(GeodesicError::InvalidPoint(_))
        ));
    }

    #[test]
    fn breakpoints_meeting_at_a_kink() {
        // two breakpoints converge on a vertex; the smoothed Newton steps
        // stall about 2e-7 away unless the short leg is collapsed
        let raw = crate::pip::RawPip::new(
            &["1", "2", "3", "4", "5", "6", "7"],
            &[("1", "2"), ("1", "5"), ("2", "3"), ("2", "7"), ("3", "6"), ("5", "7")],
            &[],
        );
        let pip = crate::pip::validate_pip(&raw).unwrap();
        let x = Point::new(vec![1.0, 0.0, 0.0, 0.7525774087386007, 0.8722588483814202, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.3434543288947456, 1.0, 0.49447540908540555, 0.03133221041494216]);
        let p = geodesic(&pip, &x, &y, &GeodesicOptions::default()).unwrap();
        assert!(p.certificate.certified, "{:?}", p.certificate);
        assert!(p.length < 2.53280353, "{}", p.length);
    }

    #[test]
    fn budget_of_the_grid() {
        // maximal antichains of the 2x2 grid: {1,2}, {1,4}, {2,3}, {3,4}
        assert_eq!(iteration_budget(&fixtures::grid22()), 160);
    }

    #[test]
    fn zero_budget_reports_the_best_path() {
        let g = fixtures::grid22();
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let opts = GeodesicOptions { max_iter: Some(0), ..Default::default() };
        match geodesic(&g, &x, &y, &opts) {
            Err(GeodesicError::IterationBudgetExceeded { best, .. }) => {
                assert!(!best.certificate.certified);
                assert_abs_diff_eq!(best.length, 2.0 * 1.64f64.sqrt(), epsilon = 1e-10);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
