//! Halfspace systems and rerooting.
//!
//! Every hyperplane `h` has two literals `h+` and `h-`, stored at indices
//! `2h` and `2h + 1`. The order on literals is kept transitively closed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Cube, Point};
use crate::pip::{ElemSet, OrderIdeal, Pip, PipError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HalfspaceError {
    #[error("malformed literal `{0}` (expected a hyperplane name followed by + or -)")]
    BadLiteral(String),
    #[error("unknown hyperplane `{0}`")]
    UnknownHyperplane(String),
    #[error("duplicate hyperplane `{0}`")]
    DuplicateHyperplane(String),
    #[error("literal order has a cycle through `{0}`")]
    Cycle(String),
    #[error("{0}+ and {0}- are comparable")]
    ComparableOpposites(String),
    #[error("hyperplanes `{0}` and `{1}` are related in more than one way")]
    OverRelated(String, String),
    /// The all-positive assignment is not a vertex.
    #[error("system is not acyclic: {0}+ < {1}-")]
    NotAcyclic(String, String),
    #[error("vertex is not a consistent order ideal")]
    InconsistentVertex,
    #[error(transparent)]
    Pip(#[from] PipError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub hyperplane: usize,
    pub sign: Sign,
}

impl Literal {
    pub fn plus(h: usize) -> Literal {
        Literal { hyperplane: h, sign: Sign::Plus }
    }

    pub fn minus(h: usize) -> Literal {
        Literal { hyperplane: h, sign: Sign::Minus }
    }

    fn id(self) -> usize {
        2 * self.hyperplane + usize::from(self.sign == Sign::Minus)
    }

    fn from_id(id: usize) -> Literal {
        let sign = if id.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
        Literal { hyperplane: id / 2, sign }
    }

    /// The involution `*`.
    pub fn opposite(self) -> Literal {
        Literal { hyperplane: self.hyperplane, sign: self.sign.flip() }
    }
}

/// Wire format of a halfspace system: generating relations `a < b` between
/// literals written `name+` / `name-`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawHalfspace {
    pub hyperplanes: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

/// A halfspace system with its order closed under transitivity and the
/// involution.
#[derive(Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    names: Vec<String>,
    less: Vec<ElemSet>,
}

impl fmt::Debug for HalfspaceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let raw = self.to_raw();
        f.debug_struct("HalfspaceSystem")
            .field("hyperplanes", &raw.hyperplanes)
            .field("relations", &raw.relations)
            .finish()
    }
}

impl HalfspaceSystem {
    /// Closes `relations` and checks the axioms. `names` must be sorted and
    /// distinct.
    pub fn new(names: Vec<String>, relations: &[(Literal, Literal)]) -> Result<Self, HalfspaceError> {
        let n2 = 2 * names.len();
        let mut less = vec![ElemSet::with_capacity(n2); n2];
        for &(a, b) in relations {
            less[a.id()].insert(b.id());
            less[b.opposite().id()].insert(a.opposite().id());
        }
        // Warshall over literal ids
        for k in 0..n2 {
            let row_k = less[k].clone();
            for i in 0..n2 {
                if less[i].contains(k) {
                    less[i].union_with(&row_k);
                }
            }
        }
        let sys = HalfspaceSystem { names, less };
        sys.check()?;
        Ok(sys)
    }

    fn check(&self) -> Result<(), HalfspaceError> {
        for i in 0..self.less.len() {
            if self.less[i].contains(i) {
                return Err(HalfspaceError::Cycle(self.literal_name(Literal::from_id(i))));
            }
        }
        for h in 0..self.names.len() {
            if self.lt(Literal::plus(h), Literal::minus(h)) || self.lt(Literal::minus(h), Literal::plus(h)) {
                return Err(HalfspaceError::ComparableOpposites(self.names[h].clone()));
            }
            for k in h + 1..self.names.len() {
                let count = [Sign::Plus, Sign::Minus]
                    .iter()
                    .flat_map(|&s| [Sign::Plus, Sign::Minus].map(move |t| (s, t)))
                    .filter(|&(s, t)| {
                        let a = Literal { hyperplane: h, sign: s };
                        let b = Literal { hyperplane: k, sign: t };
                        self.lt(a, b) || self.lt(b, a)
                    })
                    .count();
                // a relation and its involution image are counted together
                if count > 2 {
                    return Err(HalfspaceError::OverRelated(self.names[h].clone(), self.names[k].clone()));
                }
            }
        }
        Ok(())
    }

    pub fn from_raw(raw: &RawHalfspace) -> Result<Self, HalfspaceError> {
        let mut names = raw.hyperplanes.clone();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(HalfspaceError::DuplicateHyperplane(w[0].clone()));
            }
        }
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let parse = |s: &str| -> Result<Literal, HalfspaceError> {
            let sign = match s.chars().last() {
                Some('+') => Sign::Plus,
                Some('-') => Sign::Minus,
                _ => return Err(HalfspaceError::BadLiteral(s.to_string())),
            };
            let name = &s[..s.len() - 1];
            let h = *index
                .get(name)
                .ok_or_else(|| HalfspaceError::UnknownHyperplane(name.to_string()))?;
            Ok(Literal { hyperplane: h, sign })
        };
        let mut rels = Vec::with_capacity(raw.relations.len());
        for [a, b] in &raw.relations {
            rels.push((parse(a)?, parse(b)?));
        }
        HalfspaceSystem::new(names, &rels)
    }

    /// Canonical form: the cover relations of the literal order, sorted.
    pub fn to_raw(&self) -> RawHalfspace {
        let n2 = self.less.len();
        let mut relations = Vec::new();
        for a in 0..n2 {
            for b in self.less[a].ones() {
                let covered = self.less[a].ones().any(|c| self.less[c].contains(b));
                if !covered {
                    relations.push([
                        self.literal_name(Literal::from_id(a)),
                        self.literal_name(Literal::from_id(b)),
                    ]);
                }
            }
        }
        relations.sort();
        RawHalfspace { hyperplanes: self.names.clone(), relations }
    }

    pub fn hyperplanes(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lt(&self, a: Literal, b: Literal) -> bool {
        self.less[a.id()].contains(b.id())
    }

    pub fn literal_name(&self, l: Literal) -> String {
        let s = if l.sign == Sign::Plus { '+' } else { '-' };
        format!("{}{}", self.names[l.hyperplane], s)
    }

    /// All strict relations `a < b`, in literal order.
    pub fn relations(&self) -> Vec<(Literal, Literal)> {
        let mut out = Vec::new();
        for a in 0..self.less.len() {
            for b in self.less[a].ones() {
                out.push((Literal::from_id(a), Literal::from_id(b)));
            }
        }
        out
    }

    /// Swaps `h+` and `h-` for every `h` in `flip`.
    pub fn flipped(&self, flip: &ElemSet) -> HalfspaceSystem {
        let map = |id: usize| {
            let l = Literal::from_id(id);
            if flip.contains(l.hyperplane) { l.opposite().id() } else { id }
        };
        let n2 = self.less.len();
        let mut less = vec![ElemSet::with_capacity(n2); n2];
        for a in 0..n2 {
            for b in self.less[a].ones() {
                less[map(a)].insert(map(b));
            }
        }
        HalfspaceSystem { names: self.names.clone(), less }
    }
}

/// Positive and negative copy of every element.
pub fn pip_to_halfspace(pip: &Pip) -> HalfspaceSystem {
    let mut rels = Vec::new();
    for a in 0..pip.len() {
        for b in pip.above(a).ones() {
            rels.push((Literal::plus(a), Literal::plus(b)));
        }
        for b in pip.inconsistent_with(a).ones() {
            rels.push((Literal::minus(a), Literal::plus(b)));
        }
    }
    HalfspaceSystem::new(pip.names().to_vec(), &rels).expect("the halfspace system of a PIP is valid")
}

/// Restricts an acyclic system to its positive literals.
pub fn halfspace_to_pip(h: &HalfspaceSystem) -> Result<Pip, HalfspaceError> {
    let n = h.len();
    let mut less = Vec::new();
    let mut inc = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if h.lt(Literal::plus(a), Literal::minus(b)) {
                return Err(HalfspaceError::NotAcyclic(h.names[a].clone(), h.names[b].clone()));
            }
            if h.lt(Literal::plus(a), Literal::plus(b)) {
                less.push((a, b));
            }
            if a < b && h.lt(Literal::minus(a), Literal::plus(b)) {
                inc.push((a, b));
            }
        }
    }
    Ok(Pip::from_relations(&h.names, &less, &inc)?)
}

/// A PIP rerooted at a vertex, with the coordinate transport.
///
/// The transport is an involution: applying it in the rerooted frame maps
/// back to the original one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rerooted {
    pub pip: Pip,
    pub flipped: ElemSet,
}

impl Rerooted {
    /// `x'_p = 1 − x_p` on flipped hyperplanes.
    pub fn transport_point(&self, x: &Point) -> Point {
        let mut y = x.clone();
        for p in self.flipped.ones() {
            y.coords_mut()[p] = 1.0 - x[p];
        }
        y
    }

    /// Vertex `I` maps to `I Δ v`.
    pub fn transport_vertex(&self, ideal: &ElemSet) -> ElemSet {
        let mut out = ideal.clone();
        out.symmetric_difference_with(&self.flipped);
        out
    }

    /// `C(I, M)` maps to `C((I Δ v) ∪ M, M)`.
    pub fn transport_cube(&self, cube: &Cube) -> Cube {
        let mut ideal = self.transport_vertex(cube.ideal());
        ideal.union_with(cube.free());
        Cube::new_unchecked(ideal, cube.free().clone())
    }
}

/// Moves the root of `X_P` to the vertex `v`.
pub fn reroot(pip: &Pip, v: &OrderIdeal) -> Result<Rerooted, HalfspaceError> {
    if !v.is_consistent() || !pip.is_down_closed(v.members()) {
        return Err(HalfspaceError::InconsistentVertex);
    }
    let h = pip_to_halfspace(pip).flipped(v.members());
    let rerooted = halfspace_to_pip(&h)?;
    Ok(Rerooted { pip: rerooted, flipped: v.members().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{enumerate_cubes, is_valid_point};
    use crate::fixtures;
    use crate::pip::{downset, enumerate_consistent_ideals, validate_pip, RawPip};

    fn lit(h: &HalfspaceSystem, s: &str) -> Literal {
        let sign = if s.ends_with('+') { Sign::Plus } else { Sign::Minus };
        let name = &s[..s.len() - 1];
        Literal { hyperplane: h.hyperplanes().iter().position(|x| x == name).unwrap(), sign }
    }

    #[test]
    fn book_system_relations() {
        let h = pip_to_halfspace(&fixtures::book());
        let rels: Vec<(String, String)> = h
            .relations()
            .into_iter()
            .map(|(a, b)| (h.literal_name(a), h.literal_name(b)))
            .collect();
        assert_eq!(rels, vec![("1-".into(), "3+".into()), ("3-".into(), "1+".into())]);
    }

    #[test]
    fn single_element_and_chain() {
        let one = validate_pip(&RawPip::new(&["a"], &[], &[])).unwrap();
        assert!(pip_to_halfspace(&one).relations().is_empty());
        let chain = validate_pip(&RawPip::new(&["a", "b"], &[("a", "b")], &[])).unwrap();
        let h = pip_to_halfspace(&chain);
        let mut rels: Vec<_> = h.relations();
        rels.sort();
        let mut want = vec![(lit(&h, "a+"), lit(&h, "b+")), (lit(&h, "b-"), lit(&h, "a-"))];
        want.sort();
        assert_eq!(rels, want);
    }

    #[test]
    fn roundtrip_on_fixtures() {
        for (name, p) in fixtures::all() {
            let back = halfspace_to_pip(&pip_to_halfspace(&p)).unwrap();
            assert_eq!(back, p, "{name}");
            let raw = pip_to_halfspace(&p).to_raw();
            assert_eq!(HalfspaceSystem::from_raw(&raw).unwrap(), pip_to_halfspace(&p), "{name}");
        }
    }

    #[test]
    fn figure_five_system_recovers_the_inconsistent_pair() {
        let raw = RawHalfspace {
            hyperplanes: ["1", "2", "3", "4", "5", "6"].map(String::from).to_vec(),
            relations: [
                ["2+", "3+"],
                ["2+", "4+"],
                ["3+", "5+"],
                ["1+", "6+"],
                ["3-", "6+"],
            ]
            .map(|[a, b]| [a.to_string(), b.to_string()])
            .to_vec(),
        };
        let p = halfspace_to_pip(&HalfspaceSystem::from_raw(&raw).unwrap()).unwrap();
        assert_eq!(p, fixtures::fig4());
        let (a, b) = (p.index_of("3").unwrap(), p.index_of("6").unwrap());
        assert!(p.inconsistent(a, b));
    }

    #[test]
    fn positive_below_negative_is_not_acyclic() {
        let raw = RawHalfspace {
            hyperplanes: vec!["1".into(), "2".into()],
            relations: vec![["1+".into(), "2-".into()]],
        };
        let h = HalfspaceSystem::from_raw(&raw).unwrap();
        assert_eq!(halfspace_to_pip(&h), Err(HalfspaceError::NotAcyclic("1".into(), "2".into())));
    }

    #[test]
    fn axiom_violations() {
        let names = vec!["1".to_string(), "2".to_string()];
        let bad = HalfspaceSystem::new(names.clone(), &[(Literal::plus(0), Literal::minus(0))]);
        assert!(bad.is_err());
        let over = HalfspaceSystem::new(
            names,
            &[(Literal::plus(0), Literal::plus(1)), (Literal::minus(0), Literal::plus(1))],
        );
        assert!(over.is_err());
        let bad_lit = RawHalfspace { hyperplanes: vec!["1".into()], relations: vec![["1".into(), "1+".into()]] };
        assert!(matches!(HalfspaceSystem::from_raw(&bad_lit), Err(HalfspaceError::BadLiteral(_))));
    }

    #[test]
    fn reroot_at_empty_is_identity() {
        let p = fixtures::s8();
        let r = reroot(&p, &downset::<&str>(&p, &[]).unwrap()).unwrap();
        assert_eq!(r.pip, p);
    }

    #[test]
    fn grid_rerooted_at_bottom_pair() {
        // 1 < 3 becomes 1 inconsistent with 3 once 1 is flipped
        let g = fixtures::grid22();
        let v = downset(&g, &["1", "2"]).unwrap();
        let r = reroot(&g, &v).unwrap();
        let q = &r.pip;
        assert!(q.covers().is_empty());
        let pairs: Vec<(String, String)> = q
            .minimal_inconsistent_pairs()
            .into_iter()
            .map(|(a, b)| (q.name(a).to_string(), q.name(b).to_string()))
            .collect();
        assert_eq!(pairs, vec![("1".into(), "3".into()), ("2".into(), "4".into())]);
        assert_eq!(enumerate_consistent_ideals(q, 20).unwrap().len(), 9);
    }

    #[test]
    fn reroot_preserves_cube_counts_and_returns() {
        for (name, p) in fixtures::all() {
            let base = enumerate_cubes(&p, 20).unwrap();
            for v in enumerate_consistent_ideals(&p, 20).unwrap() {
                let r = reroot(&p, &v).unwrap();
                let cubes = enumerate_cubes(&r.pip, 20).unwrap();
                assert_eq!(cubes.len(), base.len(), "{name}");
                // every cube transports to a cube of the rerooted complex
                for c in &base {
                    let t = r.transport_cube(c);
                    assert!(cubes.contains(&t), "{name}");
                }
                let back_v = OrderIdeal::new(&r.pip, r.transport_vertex(v.members())).unwrap();
                assert!(back_v.is_empty());
                let again = reroot(&r.pip, &OrderIdeal::new(&r.pip, v.members().clone()).unwrap()).unwrap();
                assert_eq!(again.pip, p, "{name}");
            }
        }
    }

    #[test]
    fn transport_keeps_points_valid() {
        let p = fixtures::s8();
        let x = Point::new(vec![1.0, 1.0, 1.0, 0.3, 0.7]);
        for v in enumerate_consistent_ideals(&p, 20).unwrap() {
            let r = reroot(&p, &v).unwrap();
            let y = r.transport_point(&x);
            assert!(is_valid_point(&r.pip, &y, 1e-12));
            assert!(r.transport_point(&y).distance(&x) < 1e-15);
        }
    }

    #[test]
    fn reroot_rejects_inconsistent_vertex() {
        let b = fixtures::book();
        let v = OrderIdeal::new(&b, b.set_of(&["1", "3"]).unwrap()).unwrap();
        assert_eq!(reroot(&b, &v), Err(HalfspaceError::InconsistentVertex));
    }
}
