//! The no-shortcut test at a breakpoint between two consecutive cubes.
//!
//! Leaving `C_i` the path moves in the directions `L = M_i − M_{i+1}`, and
//! entering `C_{i+1}` in `R = M_{i+1} − M_i`. Each `j < k` with `j ∈ L`,
//! `k ∈ R` forces one of the two to be "kept". A vertex cover of weight
//! below 1, with weights the squared direction components normalized over
//! `L` and over `R`, means a cube between the two shortens the path.

use super::cover::min_weight_vertex_cover;
use super::tension::norm;
use super::{CubeSequence, GeodesicError};
use crate::complex::{Cube, Point};
use crate::pip::{covers_by_comparability, ElemSet, Pip};

/// A cube insertion that strictly shortens the path.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortcutWitness {
    /// Breakpoint index `i`: the witness sits between `cubes[i-1]` and
    /// `cubes[i]`.
    pub index: usize,
    /// Covered part of `M_i − M_{i+1}`.
    pub a_i: ElemSet,
    /// Uncovered part of `M_i − M_{i+1}`.
    pub b_i: ElemSet,
    /// Uncovered part of `M_{i+1} − M_i`.
    pub a_next: ElemSet,
    /// Covered part of `M_{i+1} − M_i`.
    pub b_next: ElemSet,
    /// The cube `C(I_{i+1} − B_{i+1}, (M_i ∩ M_{i+1}) ∪ B_i ∪ A_{i+1})`.
    pub cube: Cube,
    pub cover_weight: f64,
}

/// Runs the test on `C_i`, `C_{i+1}` with the path arriving along
/// `p_i − p_prev` and leaving along `p_next − p_i`.
pub fn shortcut_check(
    q: &Pip,
    c_i: &Cube,
    c_next: &Cube,
    p_prev: &Point,
    p_i: &Point,
    p_next: &Point,
    tol: f64,
) -> Option<ShortcutWitness> {
    let u: Vec<f64> = p_i.coords().iter().zip(p_prev.coords()).map(|(a, b)| a - b).collect();
    let v: Vec<f64> = p_next.coords().iter().zip(p_i.coords()).map(|(a, b)| a - b).collect();
    check_directions(q, c_i, c_next, &u, &v, tol)
}

pub(crate) fn check_directions(q: &Pip, c_i: &Cube, c_next: &Cube, u: &[f64], v: &[f64], tol: f64) -> Option<ShortcutWitness> {
    let mut l_set = c_i.free().clone();
    l_set.difference_with(c_next.free());
    let mut r_set = c_next.free().clone();
    r_set.difference_with(c_i.free());
    let left: Vec<usize> = l_set.ones().collect();
    let right: Vec<usize> = r_set.ones().collect();
    if left.is_empty() || right.is_empty() {
        return None;
    }
    let ul: Vec<f64> = left.iter().map(|&j| u[j]).collect();
    let vr: Vec<f64> = right.iter().map(|&k| v[k]).collect();
    let (nu, nv) = (norm(&ul), norm(&vr));
    let floor = 10.0 * tol;
    if nu < floor || nv < floor {
        return None;
    }
    let wl: Vec<f64> = ul.iter().map(|t| t * t / (nu * nu)).collect();
    let wr: Vec<f64> = vr.iter().map(|t| t * t / (nv * nv)).collect();
    let mut edges = Vec::new();
    for (a, &j) in left.iter().enumerate() {
        for (b, &k) in right.iter().enumerate() {
            debug_assert!(!q.lt(k, j), "an element entering later lies below one leaving");
            if q.lt(j, k) {
                edges.push((a, b));
            }
        }
    }
    let (mut cl, mut cr, _) = min_weight_vertex_cover(&wl, &wr, &edges);

    // drop redundant cover vertices in element order so that the uncovered
    // side is a maximal independent set
    let mut order: Vec<(usize, bool, usize)> = left
        .iter()
        .enumerate()
        .map(|(a, &e)| (e, true, a))
        .chain(right.iter().enumerate().map(|(b, &e)| (e, false, b)))
        .collect();
    order.sort();
    for (_, is_left, idx) in order {
        let covered = if is_left { &mut cl } else { &mut cr };
        if !covered[idx] {
            continue;
        }
        covered[idx] = false;
        let still = edges.iter().all(|&(a, b)| cl[a] || cr[b]);
        let covered = if is_left { &mut cl } else { &mut cr };
        if !still {
            covered[idx] = true;
        }
    }
    let weight: f64 = (0..left.len()).filter(|&a| cl[a]).map(|a| wl[a]).sum::<f64>()
        + (0..right.len()).filter(|&b| cr[b]).map(|b| wr[b]).sum::<f64>();
    if weight >= 1.0 - 10.0 * tol {
        return None;
    }

    let n = q.len();
    let (mut a_i, mut b_i, mut a_next, mut b_next) = (
        ElemSet::with_capacity(n),
        ElemSet::with_capacity(n),
        ElemSet::with_capacity(n),
        ElemSet::with_capacity(n),
    );
    for (a, &j) in left.iter().enumerate() {
        if cl[a] { a_i.insert(j) } else { b_i.insert(j) }
    }
    for (b, &k) in right.iter().enumerate() {
        if cr[b] { b_next.insert(k) } else { a_next.insert(k) }
    }
    let mut ideal = c_next.ideal().clone();
    ideal.difference_with(&b_next);
    let mut free = c_i.free().clone();
    free.intersect_with(c_next.free());
    free.union_with(&b_i);
    free.union_with(&a_next);
    Some(ShortcutWitness {
        index: 0,
        a_i,
        b_i,
        a_next,
        b_next,
        cube: Cube::new_unchecked(ideal, free),
        cover_weight: weight,
    })
}

/// Puts the witness cube between `cubes[i-1]` and `cubes[i]`. When its
/// ideal coincides with a neighbour's, that neighbour is replaced instead.
pub fn apply_witness(q: &Pip, seq: &CubeSequence, w: &ShortcutWitness, x: &Point, y: &Point, tol: f64) -> Result<CubeSequence, GeodesicError> {
    let mut cubes = seq.cubes().to_vec();
    let i = w.index;
    if w.cube.ideal() == cubes[i - 1].ideal() {
        cubes[i - 1] = w.cube.clone();
    } else if w.cube.ideal() == cubes[i].ideal() {
        cubes[i] = w.cube.clone();
    } else {
        cubes.insert(i, w.cube.clone());
    }
    let out = CubeSequence::new(cubes);
    if !covers_by_comparability(q, w.cube.free()) {
        return Err(GeodesicError::NotValid("witness free set is not a maximal antichain".into()));
    }
    super::check_cube_sequence(q, &out, x, y, tol).map_err(GeodesicError::NotValid)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(q: &Pip, s: &ElemSet) -> Vec<String> {
        q.names_of(s)
    }

    #[test]
    fn grid_vertex_path_admits_a_shortcut() {
        let g = fixtures::grid22();
        let c1 = Cube::from_names(&g, &["1", "2"], &["1", "2"]).unwrap();
        let c2 = Cube::from_names(&g, &["1", "2", "3", "4"], &["3", "4"]).unwrap();
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let p = Point::new(vec![1.0, 1.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let w = shortcut_check(&g, &c1, &c2, &x, &p, &y, 1e-8).unwrap();
        assert!((w.cover_weight - 1.28 / 1.64).abs() < 1e-12);
        assert_eq!(names(&g, &w.a_i), vec!["1"]);
        assert_eq!(names(&g, &w.b_i), vec!["2"]);
        assert_eq!(names(&g, &w.a_next), vec!["3"]);
        assert_eq!(names(&g, &w.b_next), vec!["4"]);
        assert_eq!(w.cube, Cube::from_names(&g, &["1", "2", "3"], &["2", "3"]).unwrap());

        let seq = CubeSequence::new(vec![c1, c2]);
        let w = ShortcutWitness { index: 1, ..w };
        let next = apply_witness(&g, &seq, &w, &x, &y, 1e-9).unwrap();
        assert_eq!(next.len(), 3);
    }

    #[test]
    fn straight_line_admits_no_shortcut() {
        let g = fixtures::grid22();
        let cubes = [
            Cube::from_names(&g, &["1", "2"], &["1", "2"]).unwrap(),
            Cube::from_names(&g, &["1", "2", "3"], &["2", "3"]).unwrap(),
            Cube::from_names(&g, &["1", "2", "3", "4"], &["3", "4"]).unwrap(),
        ];
        let bps = [
            Point::new(vec![0.2, 0.0, 0.0, 0.0]),
            Point::new(vec![1.0, 0.8, 0.0, 0.0]),
            Point::new(vec![1.0, 1.0, 0.2, 0.0]),
            Point::new(vec![1.0, 1.0, 1.0, 0.8]),
        ];
        for i in 1..3 {
            assert!(shortcut_check(&g, &cubes[i - 1], &cubes[i], &bps[i - 1], &bps[i], &bps[i + 1], 1e-8).is_none());
        }
    }

    #[test]
    fn ex4_witness_matches_the_worked_example() {
        let q = fixtures::ex4();
        let c3 = Cube::from_names(&q, &["1", "2", "5", "6"], &["2", "6"]).unwrap();
        let c4 = Cube::from_names(&q, &["1", "2", "3", "5", "6", "7"], &["3", "7"]).unwrap();
        let p2 = Point::new(vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let p3 = Point::new(vec![1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        let p4 = Point::new(vec![1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.45]);
        let w = shortcut_check(&q, &c3, &c4, &p2, &p3, &p4, 1e-8).unwrap();
        assert_eq!(names(&q, &w.a_i), vec!["2"]);
        assert_eq!(names(&q, &w.b_i), vec!["6"]);
        assert_eq!(names(&q, &w.a_next), vec!["3"]);
        assert_eq!(names(&q, &w.b_next), vec!["7"]);
        assert_eq!(w.cube, Cube::from_names(&q, &["1", "2", "3", "5", "6"], &["3", "6"]).unwrap());
    }
}
