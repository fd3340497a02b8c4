//! Valid cube sequences over an inconsistency-free poset `Q`.
//!
//! Since each free set must be a maximal antichain and lie inside the
//! maximal elements of its ideal, it always equals them, so a valid sequence
//! is determined by its chain of ideals.

use super::{CubeSequence, GeodesicError};
use crate::complex::{Cube, Point};
use crate::pip::{covers_by_comparability, ElemSet, OrderIdeal, Pip};

/// Ideals obtained by repeatedly adding every minimal remaining element.
pub fn normal_cube_path(q: &Pip) -> Vec<OrderIdeal> {
    normal_ideals(q)
        .into_iter()
        .map(|s| OrderIdeal::new_unchecked(q, s))
        .collect()
}

fn normal_ideals(q: &Pip) -> Vec<ElemSet> {
    let mut out = Vec::new();
    let mut ideal = q.empty_set();
    while ideal.count_ones(..) < q.len() {
        let mut rest = q.full_set();
        rest.difference_with(&ideal);
        ideal.union_with(&q.minimal_of(&rest));
        out.push(ideal.clone());
    }
    out
}

pub(crate) fn cube_of(q: &Pip, ideal: ElemSet) -> Cube {
    let max = q.maximal_of(&ideal);
    Cube::new_unchecked(ideal, max)
}

/// The normal cube path with each free set enlarged to all maximal elements.
///
/// For the empty poset the sequence is the single vertex `C(∅, ∅)`.
pub fn extended_normal_cube_path(q: &Pip, x: &Point, y: &Point, tol: f64) -> Result<CubeSequence, GeodesicError> {
    let seq = if q.is_empty() {
        CubeSequence::new(vec![Cube::new_unchecked(q.empty_set(), q.empty_set())])
    } else {
        CubeSequence::new(normal_ideals(q).into_iter().map(|s| cube_of(q, s)).collect())
    };
    check_cube_sequence(q, &seq, x, y, tol).map_err(GeodesicError::NotValid)?;
    Ok(seq)
}

/// Checks the valid-sequence axioms, reporting the first violation.
pub fn check_cube_sequence(q: &Pip, seq: &CubeSequence, x: &Point, y: &Point, tol: f64) -> Result<(), String> {
    let cubes = seq.cubes();
    let (Some(first), Some(last)) = (cubes.first(), cubes.last()) else {
        return Err("empty sequence".into());
    };
    if q.is_empty() {
        if cubes.len() != 1 {
            return Err("the empty poset has a one-cube sequence".into());
        }
    } else {
        let mut prev = q.empty_set();
        for (i, c) in cubes.iter().enumerate() {
            let n = i + 1;
            if !q.is_down_closed(c.ideal()) {
                return Err(format!("I_{n} is not an order ideal"));
            }
            if !c.free().is_subset(&q.maximal_of(c.ideal())) {
                return Err(format!("M_{n} is not inside the maximal elements of I_{n}"));
            }
            if !covers_by_comparability(q, c.free()) {
                return Err(format!("M_{n} is not a maximal antichain"));
            }
            if !prev.is_subset(c.ideal()) || &prev == c.ideal() {
                return Err(format!("I_{} is not strictly inside I_{n}", n - 1));
            }
            let mut step = c.ideal().clone();
            step.difference_with(&prev);
            if !step.is_subset(c.free()) {
                return Err(format!("I_{n} \\ I_{} is not inside M_{n}", n - 1));
            }
            prev = c.ideal().clone();
        }
        if prev != q.full_set() {
            return Err("last ideal is not Q".into());
        }
    }
    if !first.contains(x, tol) {
        return Err("first cube does not contain x".into());
    }
    if !last.contains(y, tol) {
        return Err("last cube does not contain y".into());
    }
    Ok(())
}

pub fn is_valid_cube_sequence(q: &Pip, seq: &CubeSequence, x: &Point, y: &Point, tol: f64) -> bool {
    check_cube_sequence(q, seq, x, y, tol).is_ok()
}

/// Every valid sequence from `C(min Q, min Q)` to `C(Q, max Q)`, in
/// depth-first order with subsets taken in increasing bitmask order.
pub fn enumerate_valid_sequences(q: &Pip, guard: usize) -> Result<Vec<CubeSequence>, GeodesicError> {
    if q.is_empty() {
        return Ok(vec![CubeSequence::new(vec![Cube::new_unchecked(q.empty_set(), q.empty_set())])]);
    }
    let mut out = Vec::new();
    let start = q.minimal_of(&q.full_set());
    let mut stack = vec![start];
    extend(q, &mut stack, &mut out, guard)?;
    Ok(out)
}

fn extend(q: &Pip, chain: &mut Vec<ElemSet>, out: &mut Vec<CubeSequence>, guard: usize) -> Result<(), GeodesicError> {
    let ideal = chain.last().expect("chain is never empty").clone();
    if ideal.count_ones(..) == q.len() {
        if out.len() >= guard {
            return Err(GeodesicError::TooLarge { count: out.len() + 1, guard });
        }
        out.push(CubeSequence::new(chain.iter().map(|s| cube_of(q, s.clone())).collect()));
        return Ok(());
    }
    let mut rest = q.full_set();
    rest.difference_with(&ideal);
    let mins: Vec<usize> = q.minimal_of(&rest).ones().collect();
    for mask in 1u64..1 << mins.len() {
        let mut next = ideal.clone();
        for (b, &m) in mins.iter().enumerate() {
            if mask >> b & 1 == 1 {
                next.insert(m);
            }
        }
        let max = q.maximal_of(&next);
        let added_are_maximal = mins
            .iter()
            .enumerate()
            .all(|(b, &m)| mask >> b & 1 == 0 || max.contains(m));
        if !added_are_maximal || !covers_by_comparability(q, &max) {
            continue;
        }
        chain.push(next);
        extend(q, chain, out, guard)?;
        chain.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(q: &Pip, s: &ElemSet) -> Vec<String> {
        q.names_of(s)
    }

    fn seq_of(q: &Pip, parts: &[(&[&str], &[&str])]) -> CubeSequence {
        CubeSequence::new(
            parts
                .iter()
                .map(|(i, m)| Cube::new_unchecked(q.set_of(i).unwrap(), q.set_of(m).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn normal_paths() {
        let g = fixtures::grid32();
        let ideals: Vec<Vec<String>> = normal_cube_path(&g).iter().map(|i| names(&g, i.members())).collect();
        assert_eq!(ideals, vec![vec!["1", "4"], vec!["1", "2", "4", "5"], vec!["1", "2", "3", "4", "5"]]);

        let s = fixtures::s8();
        let ideals: Vec<Vec<String>> = normal_cube_path(&s).iter().map(|i| names(&s, i.members())).collect();
        assert_eq!(ideals, vec![vec!["1", "2"], vec!["1", "2", "3", "4"], vec!["1", "2", "3", "4", "5"]]);

        assert_eq!(normal_cube_path(&fixtures::sq()).len(), 1);
    }

    #[test]
    fn extended_path_on_the_grid() {
        let g = fixtures::grid22();
        let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
        let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
        let seq = extended_normal_cube_path(&g, &x, &y, 1e-9).unwrap();
        assert_eq!(seq, seq_of(&g, &[(&["1", "2"], &["1", "2"]), (&["1", "2", "3", "4"], &["3", "4"])]));
    }

    #[test]
    fn extended_path_on_a_chain_is_a_walk_along_edges() {
        let c = crate::pip::validate_pip(&crate::pip::RawPip::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[]))
            .unwrap();
        let seq = extended_normal_cube_path(&c, &Point::zeros(3), &Point::new(vec![1.0, 1.0, 1.0]), 1e-9).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.cubes().iter().all(|cube| cube.dimension() == 1));
    }

    #[test]
    fn extended_path_on_ex4_has_four_cubes() {
        let q = fixtures::ex4();
        let x = Point::zeros(7);
        let y = Point::new(vec![1.0; 7]);
        let seq = extended_normal_cube_path(&q, &x, &y, 1e-9).unwrap();
        let want = seq_of(
            &q,
            &[
                (&["1", "5"], &["1", "5"]),
                (&["1", "2", "5", "6"], &["2", "6"]),
                (&["1", "2", "3", "5", "6", "7"], &["3", "7"]),
                (&["1", "2", "3", "4", "5", "6", "7"], &["4", "7"]),
            ],
        );
        assert_eq!(seq, want);
    }

    #[test]
    fn example_sequence_on_ex4() {
        let q = fixtures::ex4();
        let x = Point::zeros(7);
        let y = Point::new(vec![1.0; 7]);
        let all = ["1", "2", "3", "4", "5", "6", "7"];
        let good = seq_of(
            &q,
            &[
                (&["1", "5"], &["1", "5"]),
                (&["1", "2", "5"], &["2", "5"]),
                (&["1", "2", "5", "6"], &["2", "6"]),
                (&["1", "2", "3", "5", "6", "7"], &["3", "7"]),
                (&all, &["4", "7"]),
            ],
        );
        assert_eq!(check_cube_sequence(&q, &good, &x, &y, 1e-9), Ok(()));

        let mut cubes = good.cubes().to_vec();
        cubes[2] = Cube::new_unchecked(q.set_of(&["1", "2", "5", "6"]).unwrap(), q.set_of(&["2"]).unwrap());
        assert!(!is_valid_cube_sequence(&q, &CubeSequence::new(cubes), &x, &y, 1e-9));

        let mut cubes = good.cubes().to_vec();
        cubes.swap(1, 2);
        assert!(!is_valid_cube_sequence(&q, &CubeSequence::new(cubes), &x, &y, 1e-9));
    }

    #[test]
    fn enumeration_contains_the_normal_path() {
        for (name, q) in fixtures::all() {
            if q.has_inconsistencies() {
                continue;
            }
            let all = enumerate_valid_sequences(&q, 100_000).unwrap();
            let x = Point::zeros(q.len());
            let y = Point::new(vec![1.0; q.len()]);
            let normal = extended_normal_cube_path(&q, &x, &y, 1e-9).unwrap();
            assert!(all.contains(&normal), "{name}");
            for s in &all {
                assert_eq!(check_cube_sequence(&q, s, &x, &y, 1e-9), Ok(()), "{name}");
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        let q = fixtures::ex4();
        assert!(matches!(enumerate_valid_sequences(&q, 1), Err(GeodesicError::TooLarge { .. })));
    }

    #[test]
    fn shared_face_of_grid_path_is_a_vertex() {
        let g = fixtures::grid22();
        let seq = seq_of(&g, &[(&["1", "2"], &["1", "2"]), (&["1", "2", "3", "4"], &["3", "4"])]);
        let f = seq.shared_face(0);
        assert_eq!(f.dimension(), 0);
        assert_eq!(names(&g, f.ideal()), vec!["1", "2"]);
    }
}
