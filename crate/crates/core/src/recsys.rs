//! Reconfigurable systems and the realization of `X_P` as a state complex.
//!
//! The system for a PIP has one binary site per element and one move per
//! element `p`, which flips site `p` when every lower cover of `p` is set,
//! every upper cover is clear and every minimal inconsistent partner is
//! clear. Its states are exactly the consistent order ideals.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::pip::{consistent_ideal_sets, ElemSet, Pip};

pub const DEFAULT_STATE_GUARD: usize = 100_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RecsysError {
    #[error("{count} states exceed the guard of {guard}")]
    TooLarge { count: usize, guard: usize },
}

/// A labeling of the graph vertices.
pub type State = Vec<u8>;

/// A local move: where the trace reads `swap.0` it writes `swap.1` and vice
/// versa, provided the rest of the support matches `context`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub support: Vec<usize>,
    pub trace: Vec<usize>,
    /// Required labels on `support − trace`.
    pub context: Vec<(usize, u8)>,
    pub swap: (Vec<u8>, Vec<u8>),
}

impl Move {
    pub fn is_admissible(&self, s: &[u8]) -> bool {
        self.context.iter().all(|&(v, l)| s[v] == l) && {
            let cur: Vec<u8> = self.trace.iter().map(|&v| s[v]).collect();
            cur == self.swap.0 || cur == self.swap.1
        }
    }

    /// Applies the move to an admissible state.
    pub fn apply(&self, s: &[u8]) -> State {
        let mut out = s.to_vec();
        let cur: Vec<u8> = self.trace.iter().map(|&v| s[v]).collect();
        let to = if cur == self.swap.0 { &self.swap.1 } else { &self.swap.0 };
        for (&v, &l) in self.trace.iter().zip(to) {
            out[v] = l;
        }
        out
    }
}

/// Neither move's trace meets the other's support.
pub fn moves_commute(a: &Move, b: &Move) -> bool {
    let meets = |t: &[usize], s: &[usize]| t.iter().any(|v| s.contains(v));
    !meets(&a.trace, &b.support) && !meets(&b.trace, &a.support)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigurableSystem {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub alphabet: Vec<u8>,
    pub moves: Vec<Move>,
    pub states: Vec<State>,
}

/// The system whose state complex is `X_P`.
pub fn pip_to_reconfigurable(pip: &Pip) -> ReconfigurableSystem {
    let mut edges: Vec<(usize, usize)> = pip.covers();
    edges.extend(pip.minimal_inconsistent_pairs());
    edges.sort();
    let moves = (0..pip.len())
        .map(|p| {
            let mut context: Vec<(usize, u8)> = pip.lower_covers(p).iter().map(|&c| (c, 1)).collect();
            context.extend(pip.upper_covers(p).iter().map(|&c| (c, 0)));
            context.extend(pip.minimal_inconsistent_partners(p).into_iter().map(|c| (c, 0)));
            context.sort();
            let mut support: Vec<usize> = context.iter().map(|&(v, _)| v).collect();
            support.push(p);
            support.sort();
            Move { support, trace: vec![p], context, swap: (vec![0], vec![1]) }
        })
        .collect();
    let states = consistent_ideal_sets(pip)
        .iter()
        .map(|i| (0..pip.len()).map(|p| u8::from(i.contains(p))).collect())
        .collect();
    ReconfigurableSystem { vertices: pip.names().to_vec(), edges, alphabet: vec![0, 1], moves, states }
}

/// Vertices and cubes of a state complex; each cube is its sorted list of
/// vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateComplex {
    pub vertices: Vec<State>,
    pub cubes: Vec<Vec<usize>>,
}

impl StateComplex {
    /// Number of cubes of each dimension, starting with vertices.
    pub fn cubes_by_dimension(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.cubes {
            let d = c.len().trailing_zeros() as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    /// Cubes as sets of vertices, each vertex the set of sites labeled 1.
    pub fn cube_vertex_sets(&self) -> BTreeSet<Vec<ElemSet>> {
        let to_set = |s: &State| {
            let mut e = ElemSet::with_capacity(s.len());
            for (i, &l) in s.iter().enumerate() {
                e.set(i, l == 1);
            }
            e
        };
        self.cubes
            .iter()
            .map(|c| {
                let mut v: Vec<ElemSet> = c.iter().map(|&i| to_set(&self.vertices[i])).collect();
                v.sort();
                v
            })
            .collect()
    }
}

/// One cube per state and set of pairwise commuting moves admissible there,
/// with duplicates removed.
pub fn state_complex(sys: &ReconfigurableSystem, guard: usize) -> Result<StateComplex, RecsysError> {
    if sys.states.len() > guard {
        return Err(RecsysError::TooLarge { count: sys.states.len(), guard });
    }
    let index: std::collections::HashMap<&State, usize> =
        sys.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut cubes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in &sys.states {
        let adm: Vec<usize> = (0..sys.moves.len()).filter(|&m| sys.moves[m].is_admissible(s)).collect();
        let mut chosen = Vec::new();
        collect_cubes(sys, &index, s, &adm, 0, &mut chosen, &mut cubes);
    }
    Ok(StateComplex { vertices: sys.states.clone(), cubes: cubes.into_iter().collect() })
}

fn collect_cubes(
    sys: &ReconfigurableSystem,
    index: &std::collections::HashMap<&State, usize>,
    s: &State,
    adm: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    // vertices reached by applying every subset of the chosen moves
    let mut verts = vec![s.clone()];
    for &m in chosen.iter() {
        let extra: Vec<State> = verts.iter().map(|v| sys.moves[m].apply(v)).collect();
        verts.extend(extra);
    }
    let mut ids: Vec<usize> = verts
        .iter()
        .map(|v| *index.get(v).expect("states are closed under admissible moves"))
        .collect();
    ids.sort();
    out.insert(ids);
    for a in from..adm.len() {
        let m = adm[a];
        if chosen.iter().all(|&c| moves_commute(&sys.moves[c], &sys.moves[m])) {
            chosen.push(m);
            collect_cubes(sys, index, s, adm, a + 1, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cube_vertices, enumerate_cubes};
    use crate::fixtures;
    use crate::pip::{validate_pip, RawPip};

    #[test]
    fn single_element() {
        let p = validate_pip(&RawPip::new(&["a"], &[], &[])).unwrap();
        let sys = pip_to_reconfigurable(&p);
        assert_eq!(sys.moves.len(), 1);
        assert_eq!(sys.states.len(), 2);
    }

    #[test]
    fn book_moves_and_states() {
        let b = fixtures::book();
        let sys = pip_to_reconfigurable(&b);
        assert_eq!(sys.moves.len(), 3);
        assert_eq!(sys.moves[0].context, vec![(2, 0)]);
        assert_eq!(sys.states.len(), 6);
        let sc = state_complex(&sys, DEFAULT_STATE_GUARD).unwrap();
        assert_eq!(sc.cubes_by_dimension(), vec![6, 7, 2]);
    }

    #[test]
    fn square_and_s8() {
        let sc = state_complex(&pip_to_reconfigurable(&fixtures::sq()), DEFAULT_STATE_GUARD).unwrap();
        assert_eq!(sc.cubes_by_dimension(), vec![4, 4, 1]);

        let s8 = fixtures::s8();
        let sys = pip_to_reconfigurable(&s8);
        assert_eq!(sys.moves.len(), 5);
        assert_eq!(sys.states.len(), 12);
        let sc = state_complex(&sys, DEFAULT_STATE_GUARD).unwrap();
        let dims = sc.cubes_by_dimension();
        assert_eq!(dims[0], 12);
        assert_eq!(dims[3], 1);
    }

    #[test]
    fn grid_commutation() {
        let sys = pip_to_reconfigurable(&fixtures::grid22());
        assert!(moves_commute(&sys.moves[0], &sys.moves[1]));
        assert!(!moves_commute(&sys.moves[0], &sys.moves[2]));
        assert!(!moves_commute(&sys.moves[2], &sys.moves[0]));
    }

    #[test]
    fn realization_on_fixtures() {
        for (name, p) in fixtures::all() {
            let sys = pip_to_reconfigurable(&p);
            for s in &sys.states {
                for m in &sys.moves {
                    if m.is_admissible(s) {
                        let t = m.apply(s);
                        assert!(sys.states.contains(&t), "{name}");
                        assert_eq!(&m.apply(&t), s, "{name}");
                    }
                }
            }
            let sc = state_complex(&sys, DEFAULT_STATE_GUARD).unwrap();
            let want: BTreeSet<Vec<ElemSet>> = enumerate_cubes(&p, 20)
                .unwrap()
                .iter()
                .map(|c| {
                    let mut v = cube_vertices(c);
                    v.sort();
                    v
                })
                .collect();
            assert_eq!(sc.cube_vertex_sets(), want, "{name}");
        }
    }

    #[test]
    fn guard() {
        let sys = pip_to_reconfigurable(&fixtures::s8());
        assert_eq!(state_complex(&sys, 5), Err(RecsysError::TooLarge { count: 12, guard: 5 }));
    }
}
