//! The touring problem: shortest polygonal path from `x` to `y` visiting the
//! shared faces of a cube sequence in order.
//!
//! The faces are axis-aligned boxes. We minimize the smoothed length
//! `Σ √(‖Δ‖² + ε²)` with a projected Newton method (two-metric active set,
//! Armijo search along the projection arc) and shrink `ε` by a factor of ten
//! per stage. Newton steps keep the iteration count small even when `ε` is
//! tiny and the curvature of a collapsed leg is of order `1/ε`.

use nalgebra::{DMatrix, DVector};

use super::{CubeSequence, GeodesicError};
use crate::complex::Point;

/// Per-solve cap on inner iterations.
pub const INNER_ITERATION_CAP: usize = 100_000;

const EPS_START: f64 = 1e-2;
const EPS_MIN: f64 = 1e-12;
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;
const SETTLE_FACTOR: f64 = 1e-3;
const COLLAPSE_RADIUS: f64 = 1e-4;
const MAX_COLLAPSE_ROUNDS: usize = 10;

/// Breakpoints of an optimal tour and how well they were resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct TourSolution {
    /// `p_0 = x, …, p_k = y`.
    pub breakpoints: Vec<Point>,
    /// True (unsmoothed) path length.
    pub objective: f64,
    /// Projected gradient norm of the last smoothed stage.
    pub projected_gradient: f64,
    /// Total inner iterations over all stages.
    pub iterations: usize,
}

/// Free coordinates of the interior breakpoints, with everything else fixed.
struct Problem {
    pts: Vec<Vec<f64>>,
    /// `(breakpoint, coordinate)` for each optimization variable.
    vars: Vec<(usize, usize)>,
    /// Box of each breakpoint, degenerate for the endpoints.
    lo: Vec<Vec<f64>>,
    hi: Vec<Vec<f64>>,
}

impl Problem {
    fn new(seq: &CubeSequence, x: &Point, y: &Point) -> Problem {
        let n = x.len();
        let k = seq.len();
        let mut pts = vec![vec![0.0; n]; k + 1];
        pts[0] = x.coords().to_vec();
        pts[k] = y.coords().to_vec();
        let mut vars = Vec::new();
        for i in 1..k {
            let face = seq.shared_face(i - 1);
            for c in 0..n {
                if face.free().contains(c) {
                    vars.push((i, c));
                    pts[i][c] = 0.5;
                } else if face.ideal().contains(c) {
                    pts[i][c] = 1.0;
                }
            }
        }
        let mut lo = pts.clone();
        let mut hi = pts.clone();
        for &(i, c) in &vars {
            lo[i][c] = 0.0;
            hi[i][c] = 1.0;
        }
        Problem { pts, vars, lo, hi }
    }

    /// Merges the ends of legs shorter than `radius` into one point of the
    /// intersection of their boxes, keeping each merge that does not lengthen
    /// the path. Returns whether anything moved.
    fn collapse_short_legs(&mut self, radius: f64) -> bool {
        let mut moved = false;
        for j in 0..self.pts.len() - 1 {
            let (a, b) = (&self.pts[j], &self.pts[j + 1]);
            let gap = a.iter().zip(b).map(|(s, t)| (s - t) * (s - t)).sum::<f64>().sqrt();
            if gap == 0.0 || gap >= radius {
                continue;
            }
            let mut merged = Vec::with_capacity(a.len());
            for c in 0..a.len() {
                let lo = self.lo[j][c].max(self.lo[j + 1][c]);
                let hi = self.hi[j][c].min(self.hi[j + 1][c]);
                if lo > hi {
                    break;
                }
                merged.push((0.5 * (a[c] + b[c])).clamp(lo, hi));
            }
            if merged.len() < a.len() {
                continue;
            }
            let before = self.true_length();
            let saved = (self.pts[j].clone(), self.pts[j + 1].clone());
            self.pts[j] = merged.clone();
            self.pts[j + 1] = merged;
            if self.true_length() <= before {
                moved = true;
            } else {
                (self.pts[j], self.pts[j + 1]) = saved;
            }
        }
        moved
    }

    fn get(&self) -> DVector<f64> {
        DVector::from_iterator(self.vars.len(), self.vars.iter().map(|&(i, c)| self.pts[i][c]))
    }

    fn set(&mut self, z: &DVector<f64>) {
        for (v, &(i, c)) in self.vars.iter().enumerate() {
            self.pts[i][c] = z[v];
        }
    }

    fn legs(&self) -> Vec<Vec<f64>> {
        self.pts
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect())
            .collect()
    }

    fn value(&self, eps: f64) -> f64 {
        self.legs()
            .iter()
            .map(|d| (d.iter().map(|t| t * t).sum::<f64>() + eps * eps).sqrt())
            .sum()
    }

    /// Gradient and the leg data needed for the Hessian.
    fn gradient(&self, eps: f64) -> (DVector<f64>, Vec<Vec<f64>>, Vec<f64>) {
        let legs = self.legs();
        let s: Vec<f64> = legs
            .iter()
            .map(|d| (d.iter().map(|t| t * t).sum::<f64>() + eps * eps).sqrt())
            .collect();
        let g = DVector::from_iterator(
            self.vars.len(),
            self.vars
                .iter()
                .map(|&(i, c)| legs[i - 1][c] / s[i - 1] - legs[i][c] / s[i]),
        );
        (g, legs, s)
    }

    fn hessian(&self, legs: &[Vec<f64>], s: &[f64]) -> DMatrix<f64> {
        // leg j contributes (I − d dᵀ/s²)/s to the blocks of its two ends
        let leg_h = |j: usize, a: usize, b: usize| {
            let d = &legs[j];
            let delta = if a == b { 1.0 } else { 0.0 };
            (delta - d[a] * d[b] / (s[j] * s[j])) / s[j]
        };
        let m = self.vars.len();
        let mut h = DMatrix::zeros(m, m);
        for r in 0..m {
            let (i1, c1) = self.vars[r];
            for col in r..m {
                let (i2, c2) = self.vars[col];
                let v = if i1 == i2 {
                    leg_h(i1 - 1, c1, c2) + leg_h(i1, c1, c2)
                } else if i2 == i1 + 1 {
                    -leg_h(i1, c1, c2)
                } else if i1 == i2 + 1 {
                    -leg_h(i2, c1, c2)
                } else {
                    0.0
                };
                h[(r, col)] = v;
                h[(col, r)] = v;
            }
        }
        h
    }

    fn true_length(&self) -> f64 {
        self.value(0.0)
    }

    fn points(&self) -> Vec<Point> {
        self.pts.iter().map(|p| Point::new(p.clone())).collect()
    }
}

fn clamp01(z: &DVector<f64>) -> DVector<f64> {
    z.map(|t| t.clamp(0.0, 1.0))
}

fn projected_gradient_norm(z: &DVector<f64>, g: &DVector<f64>) -> f64 {
    (z - clamp01(&(z - g))).norm()
}

/// Armijo search along the projection arc `z(α) = P(z + α d)`.
fn line_search(prob: &mut Problem, z: &DVector<f64>, d: &DVector<f64>, g: &DVector<f64>, f: f64, eps: f64) -> Option<(DVector<f64>, f64)> {
    let mut alpha = 1.0;
    for _ in 0..MAX_HALVINGS {
        let trial = clamp01(&(z + d * alpha));
        let dec = g.dot(&(&trial - z));
        if dec < 0.0 {
            prob.set(&trial);
            let ft = prob.value(eps);
            if ft <= f + ARMIJO * dec {
                return Some((trial, ft));
            }
        }
        alpha *= 0.5;
    }
    prob.set(z);
    None
}

/// Minimizes the smoothed length for one `ε` until the projected gradient is
/// small or no further decrease is measurable. Returns the final projected
/// gradient norm, or `Err` when the shared iteration budget runs out.
fn run_stage(prob: &mut Problem, eps: f64, tol: f64, budget: &mut usize) -> Result<f64, ()> {
    let mut z = prob.get();
    let mut tiny_steps = 0;
    loop {
        prob.set(&z);
        let f = prob.value(eps);
        let (g, legs, s) = prob.gradient(eps);
        let pg = projected_gradient_norm(&z, &g);
        if pg <= tol * (1.0 + f) {
            return Ok(pg);
        }
        if *budget == 0 {
            return Err(());
        }
        *budget -= 1;

        // two-metric split: variables pinned at a bound and pushed outward
        let delta = pg.min(1e-3);
        let m = z.len();
        let mut free = Vec::with_capacity(m);
        let mut d = DVector::zeros(m);
        let hess = prob.hessian(&legs, &s);
        for v in 0..m {
            let at_lo = z[v] <= delta && g[v] > 0.0;
            let at_hi = z[v] >= 1.0 - delta && g[v] < 0.0;
            if at_lo || at_hi {
                d[v] = -g[v] / hess[(v, v)].max(1e-12);
            } else {
                free.push(v);
            }
        }
        if !free.is_empty() {
            let h = hess.select_rows(&free).select_columns(&free);
            let gf = DVector::from_iterator(free.len(), free.iter().map(|&v| g[v]));
            let scale = (0..free.len()).map(|r| h[(r, r)].abs()).fold(0.0, f64::max).max(1e-300);
            let mut mu = 1e-12 * scale;
            let step = loop {
                let mut hm = h.clone();
                for r in 0..free.len() {
                    hm[(r, r)] += mu;
                }
                if let Some(ch) = hm.cholesky() {
                    break Some(ch.solve(&(-&gf)));
                }
                mu *= 100.0;
                if mu > scale * 1e6 {
                    break None;
                }
            };
            match step {
                Some(df) => {
                    for (r, &v) in free.iter().enumerate() {
                        d[v] = df[r];
                    }
                }
                None => {
                    for &v in &free {
                        d[v] = -g[v];
                    }
                }
            }
        }

        let accepted = line_search(prob, &z, &d, &g, f, eps).or_else(|| {
            let sd = -&g;
            line_search(prob, &z, &sd, &g, f, eps)
        });
        match accepted {
            Some((nz, nf)) => {
                if f - nf <= 1e-15 * (1.0 + f.abs()) {
                    tiny_steps += 1;
                    if tiny_steps >= 5 {
                        prob.set(&nz);
                        return Ok(pg);
                    }
                } else {
                    tiny_steps = 0;
                }
                z = nz;
            }
            None => return Ok(pg),
        }
    }
}

/// Solves the touring problem from a straight-line start projected onto the
/// faces.
pub fn touring_solve(seq: &CubeSequence, x: &Point, y: &Point, tol: f64) -> Result<TourSolution, GeodesicError> {
    let k = seq.len();
    let init: Vec<Point> = (1..k)
        .map(|i| {
            let t = i as f64 / k as f64;
            Point::new(x.coords().iter().zip(y.coords()).map(|(a, b)| a + t * (b - a)).collect())
        })
        .collect();
    touring_solve_from(seq, x, y, &init, tol)
}

/// Solves the touring problem starting from the interior breakpoints
/// `init`, which are projected onto their faces first.
pub fn touring_solve_from(seq: &CubeSequence, x: &Point, y: &Point, init: &[Point], tol: f64) -> Result<TourSolution, GeodesicError> {
    let mut prob = Problem::new(seq, x, y);
    for &(i, c) in prob.vars.clone().iter() {
        if let Some(p) = init.get(i - 1) {
            prob.pts[i][c] = p[c].clamp(0.0, 1.0);
        }
    }
    if prob.vars.is_empty() {
        return Ok(TourSolution {
            objective: prob.true_length(),
            breakpoints: prob.points(),
            projected_gradient: 0.0,
            iterations: 0,
        });
    }
    let mut budget = INNER_ITERATION_CAP;
    let mut eps = EPS_START;
    let mut prev_len = f64::INFINITY;
    let pg = loop {
        let mut stage = run_stage(&mut prob, eps, tol, &mut budget);
        // a stall away from a stationary point is a kink of a leg about to
        // collapse, where the Newton model only holds within the leg length
        let mut rounds = 0;
        while let Ok(pg) = stage {
            let stalled = pg > tol * (1.0 + prob.value(eps));
            if !stalled || rounds == MAX_COLLAPSE_ROUNDS || !prob.collapse_short_legs(COLLAPSE_RADIUS) {
                break;
            }
            rounds += 1;
            stage = run_stage(&mut prob, eps, tol, &mut budget);
        }
        let pg = match stage {
            Ok(pg) => pg,
            Err(()) => {
                let (g, _, _) = prob.gradient(eps);
                return Err(GeodesicError::ToleranceNotReached(Box::new(TourSolution {
                    objective: prob.true_length(),
                    breakpoints: prob.points(),
                    projected_gradient: projected_gradient_norm(&prob.get(), &g),
                    iterations: INNER_ITERATION_CAP,
                })));
            }
        };
        let len = prob.true_length();
        log::trace!("touring stage eps={eps:.0e} length={len:.17} pg={pg:.3e}");
        // a collapsed leg leaves breakpoints about 100ε from their limit,
        // so ε must be well below tol for the tension residual to be small
        let settled = eps <= SETTLE_FACTOR * tol && (prev_len - len).abs() < 0.1 * tol * (1.0 + len);
        if settled || eps <= EPS_MIN * 1.000_001 {
            break pg;
        }
        prev_len = len;
        eps /= 10.0;
    };
    Ok(TourSolution {
        objective: prob.true_length(),
        breakpoints: prob.points(),
        projected_gradient: pg,
        iterations: INNER_ITERATION_CAP - budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Cube;
    use crate::fixtures;
    use crate::pip::Pip;
    use approx::assert_abs_diff_eq;

    fn seq_of(q: &Pip, parts: &[(&[&str], &[&str])]) -> CubeSequence {
        CubeSequence::new(
            parts
                .iter()
                .map(|(i, m)| Cube::new_unchecked(q.set_of(i).unwrap(), q.set_of(m).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn single_square() {
        let q = fixtures::sq();
        let seq = seq_of(&q, &[(&["1", "2"], &["1", "2"])]);
        let s = touring_solve(&seq, &Point::zeros(2), &Point::new(vec![1.0, 1.0]), 1e-8).unwrap();
        assert_eq!(s.breakpoints.len(), 2);
        assert_abs_diff_eq!(s.objective, 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn grid_path_through_the_vertex() {
        let g = fixtures::grid22();
        let seq = seq_of(&g, &[(&["1", "2"], &["1", "2"]), (&["1", "2", "3", "4"], &["3", "4"])]);
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let s = touring_solve(&seq, &x, &y, 1e-8).unwrap();
        assert_eq!(s.breakpoints[1], Point::new(vec![1.0, 1.0, 0.0, 0.0]));
        assert_abs_diff_eq!(s.objective, 2.0 * 1.64f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn grid_three_cube_path_is_straight() {
        let g = fixtures::grid22();
        let seq = seq_of(
            &g,
            &[
                (&["1", "2"], &["1", "2"]),
                (&["1", "2", "3"], &["2", "3"]),
                (&["1", "2", "3", "4"], &["3", "4"]),
            ],
        );
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let s = touring_solve(&seq, &x, &y, 1e-8).unwrap();
        assert_abs_diff_eq!(s.objective, 1.8 * 2f64.sqrt(), epsilon = 1e-8);
        // unfolded: (0.2, 0) to (2, 1.8) crosses x1 = 1 at height 0.8 and
        // x2 = 1 at first coordinate 1.2, i.e. x3 = 0.2
        assert_abs_diff_eq!(s.breakpoints[1][1], 0.8, epsilon = 1e-6);
        assert_abs_diff_eq!(s.breakpoints[2][2], 0.2, epsilon = 1e-6);
    }

    #[test]
    fn warm_start_agrees_with_cold_start() {
        let g = fixtures::grid22();
        let seq = seq_of(
            &g,
            &[
                (&["1", "2"], &["1", "2"]),
                (&["1", "2", "3"], &["2", "3"]),
                (&["1", "2", "3", "4"], &["3", "4"]),
            ],
        );
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let a = touring_solve(&seq, &x, &y, 1e-8).unwrap();
        let init = vec![Point::new(vec![1.0, 0.0, 0.0, 0.0]), Point::new(vec![1.0, 1.0, 1.0, 0.0])];
        let b = touring_solve_from(&seq, &x, &y, &init, 1e-8).unwrap();
        assert_abs_diff_eq!(a.objective, b.objective, epsilon = 1e-9);
    }
}
