//! Intervals `X[v, w]` around a pair of points and their lattice embedding.
//!
//! [`interval_endpoints`] picks vertices `v`, `w` whose interval contains
//! every geodesic from `x` to `y`, reroots at `v` and restricts to the ideal
//! of `w`. The result is an inconsistency-free poset `Q` in which `x` and `y`
//! sit at opposite corners.

use thiserror::Error;

use crate::complex::{minimal_cube_containing, ComplexError, Cube, Point};
use crate::halfspace::{reroot, HalfspaceError, Rerooted};
use crate::pip::{chain_decomposition, consistent_ideal_sets, ElemSet, OrderIdeal, Pip, PipError};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum IntervalError {
    #[error(transparent)]
    InvalidPoint(#[from] ComplexError),
    /// The sign vector chosen for `v` or `w` is not a vertex.
    #[error("rooting rule produced a non-vertex: {0}")]
    RootingFailed(String),
    #[error(transparent)]
    Halfspace(#[from] HalfspaceError),
    #[error(transparent)]
    Pip(#[from] PipError),
}

/// An interval in its own frame, with the maps back to the original complex.
#[derive(Clone, Debug)]
pub struct IntervalFrame {
    /// Root vertex, original frame.
    pub v: ElemSet,
    /// Opposite vertex, original frame.
    pub w: ElemSet,
    /// The original PIP rerooted at `v`.
    pub rerooted: Rerooted,
    /// The ideal of `w` in the rerooted PIP, as its own poset.
    pub q: Pip,
    /// `q` index to element index of the original PIP.
    pub q_map: Vec<usize>,
    /// `x` in `q` coordinates.
    pub x: Point,
    /// `y` in `q` coordinates.
    pub y: Point,
}

impl IntervalFrame {
    /// Embeds a point of `X_Q` back into the original complex.
    pub fn to_original(&self, z: &Point) -> Point {
        let mut lifted = Point::zeros(self.rerooted.pip.len());
        for (i, &p) in self.q_map.iter().enumerate() {
            lifted.coords_mut()[p] = z[i];
        }
        self.rerooted.transport_point(&lifted)
    }

    fn lift_set(&self, s: &ElemSet) -> ElemSet {
        let mut out = ElemSet::with_capacity(self.rerooted.pip.len());
        for i in s.ones() {
            out.insert(self.q_map[i]);
        }
        out
    }

    /// Maps a cube of `X_Q` to the corresponding cube of the original complex.
    pub fn cube_to_original(&self, c: &Cube) -> Cube {
        let lifted = Cube::new_unchecked(self.lift_set(c.ideal()), self.lift_set(c.free()));
        self.rerooted.transport_cube(&lifted)
    }
}

fn round01(t: f64) -> bool {
    t >= 0.5
}

/// Chooses `v` and `w` by the rooting rule and builds the interval frame.
///
/// Per hyperplane `p`, with `V`, `W` the carrier cubes of `x`, `y`:
/// outside `M_V` the root copies `x`; inside `M_V` but outside `M_W` it takes
/// the side opposite to `y`; inside both it takes 0 unless `x_p > y_p`.
/// `w` follows the mirrored rule, so ties give `v_p = 0`, `w_p = 1`.
pub fn interval_endpoints(pip: &Pip, x: &Point, y: &Point, tol: f64) -> Result<IntervalFrame, IntervalError> {
    let cv = minimal_cube_containing(pip, x, tol)?;
    let cw = minimal_cube_containing(pip, y, tol)?;
    let (mv, mw) = (cv.free(), cw.free());
    let mut v = pip.empty_set();
    let mut w = pip.empty_set();
    for p in 0..pip.len() {
        let vp = match (mv.contains(p), mw.contains(p)) {
            (false, _) => round01(x[p]),
            (true, false) => !round01(y[p]),
            (true, true) => x[p] > y[p],
        };
        let wp = match (mw.contains(p), mv.contains(p)) {
            (false, _) => round01(y[p]),
            (true, false) => !round01(x[p]),
            (true, true) => x[p] <= y[p],
        };
        v.set(p, vp);
        w.set(p, wp);
    }
    for (label, s) in [("v", &v), ("w", &w)] {
        if !pip.is_down_closed(s) || !pip.is_consistent(s) {
            return Err(IntervalError::RootingFailed(format!(
                "{label} = {{{}}} is not a consistent order ideal",
                pip.names_of(s).join(",")
            )));
        }
    }
    let rerooted = reroot(pip, &OrderIdeal::new(pip, v.clone())?)?;
    let w_new = rerooted.transport_vertex(&w);
    let rp = &rerooted.pip;
    if !rp.is_down_closed(&w_new) || !rp.is_consistent(&w_new) {
        return Err(IntervalError::RootingFailed("w is not a vertex after rerooting".into()));
    }
    let (q, q_map) = rp.restrict(&w_new);
    let xt = rerooted.transport_point(x);
    let yt = rerooted.transport_point(y);
    for p in 0..pip.len() {
        if !w_new.contains(p) && (xt[p].abs() > tol || yt[p].abs() > tol) {
            return Err(IntervalError::RootingFailed(format!(
                "coordinate {} leaves the interval",
                pip.name(p)
            )));
        }
    }
    let x = Point::new(q_map.iter().map(|&p| xt[p]).collect());
    let y = Point::new(q_map.iter().map(|&p| yt[p]).collect());
    Ok(IntervalFrame { v, w, rerooted, q, q_map, x, y })
}

/// Reading's map from the ideals of an inconsistency-free poset into `Z^k`,
/// one axis per Dilworth chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    /// Chains of a minimum chain decomposition; `chains.len()` is the width.
    pub chains: Vec<Vec<usize>>,
    /// Every ideal with its lattice point, ideals in enumeration order.
    pub vertices: Vec<(ElemSet, Vec<u32>)>,
}

impl LatticeEmbedding {
    pub fn dimension(&self) -> usize {
        self.chains.len()
    }

    /// `(|R ∩ C_1|, …, |R ∩ C_k|)`.
    pub fn coordinates(&self, ideal: &ElemSet) -> Vec<u32> {
        self.chains
            .iter()
            .map(|c| c.iter().filter(|&&e| ideal.contains(e)).count() as u32)
            .collect()
    }
}

/// Embeds `X_Q` into the integer lattice.
pub fn embed_interval(q: &Pip, guard: usize) -> Result<LatticeEmbedding, PipError> {
    let chains = chain_decomposition(q)?;
    if q.len() > guard {
        return Err(PipError::TooLarge { size: q.len(), guard });
    }
    let mut emb = LatticeEmbedding { chains, vertices: Vec::new() };
    emb.vertices = consistent_ideal_sets(q)
        .into_iter()
        .map(|s| {
            let c = emb.coordinates(&s);
            (s, c)
        })
        .collect();
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_valid_point;
    use crate::fixtures;
    use crate::pip::{validate_pip, RawPip};
    use std::collections::HashSet;

    const TOL: f64 = 1e-9;

    #[test]
    fn grid_frame_is_the_whole_grid() {
        let g = fixtures::grid22();
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let f = interval_endpoints(&g, &x, &y, TOL).unwrap();
        assert!(f.v.is_clear());
        assert_eq!(f.w, g.full_set());
        assert_eq!(f.q, g);
        assert_eq!(f.x, x);
        assert_eq!(f.y, y);
    }

    #[test]
    fn equal_points_give_a_degenerate_interval() {
        let g = fixtures::grid22();
        let x = Point::new(vec![1.0, 1.0, 0.0, 0.0]);
        let f = interval_endpoints(&g, &x, &x, TOL).unwrap();
        assert_eq!(f.v, f.w);
        assert!(f.q.is_empty());
    }

    #[test]
    fn book_frame_roots_at_one() {
        let b = fixtures::book();
        let x = Point::new(vec![0.5, 0.2, 0.0]);
        let y = Point::new(vec![0.0, 0.8, 0.5]);
        let f = interval_endpoints(&b, &x, &y, TOL).unwrap();
        assert_eq!(b.names_of(&f.v), vec!["1"]);
        assert_eq!(b.names_of(&f.w), vec!["2", "3"]);
        assert_eq!(f.q.names(), &["1", "2", "3"]);
        assert!(!f.q.has_inconsistencies());
        // uncrossing 1 has to happen before crossing 3
        let covers: Vec<(usize, usize)> = f.q.covers();
        assert_eq!(covers, vec![(0, 2)]);
        assert_eq!(f.x, Point::new(vec![0.5, 0.2, 0.0]));
        assert_eq!(f.y, Point::new(vec![1.0, 0.8, 0.5]));
        assert!(f.to_original(&f.y).distance(&y) < 1e-15);
    }

    #[test]
    fn frames_of_fixture_vertices_are_well_formed() {
        for (name, p) in fixtures::all() {
            let ideals = consistent_ideal_sets(&p);
            for a in &ideals {
                for b in &ideals {
                    let x = Point::vertex(p.len(), a);
                    let y = Point::vertex(p.len(), b);
                    let f = interval_endpoints(&p, &x, &y, TOL).unwrap();
                    assert!(!f.q.has_inconsistencies(), "{name}");
                    assert!(is_valid_point(&f.q, &f.x, TOL));
                    assert!(f.x.coords().iter().all(|&c| c == 0.0), "{name}");
                    assert!(f.y.coords().iter().all(|&c| c == 1.0), "{name}");
                    assert_eq!(f.to_original(&f.y), y);
                }
            }
        }
    }

    #[test]
    fn grid32_embeds_onto_the_rectangle() {
        let e = embed_interval(&fixtures::grid32(), 20).unwrap();
        assert_eq!(e.dimension(), 2);
        let pts: HashSet<Vec<u32>> = e.vertices.iter().map(|(_, c)| c.clone()).collect();
        let mut want = HashSet::new();
        for i in 0..=3 {
            for j in 0..=2 {
                want.insert(vec![i, j]);
            }
        }
        assert_eq!(pts, want);
    }

    #[test]
    fn empty_poset_embeds_at_origin() {
        let e = embed_interval(&validate_pip(&RawPip::default()).unwrap(), 20).unwrap();
        assert_eq!(e.vertices, vec![(ElemSet::new(), vec![])]);
    }

    #[test]
    fn ex4_ideal_coordinates() {
        let p = fixtures::ex4();
        let e = embed_interval(&p, 20).unwrap();
        assert_eq!(e.chains, vec![vec![0, 1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(e.coordinates(&p.set_of(&["1", "2", "5", "6"]).unwrap()), vec![2, 2]);
    }

    #[test]
    fn embedding_rejects_inconsistent_posets() {
        assert_eq!(embed_interval(&fixtures::book(), 20), Err(PipError::HasInconsistentPairs));
    }
}
