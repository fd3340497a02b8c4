//! Finite posets with inconsistent pairs.
//!
//! A [`Pip`] is the combinatorial encoding of a rooted CAT(0) cube complex:
//! elements are hyperplanes, the order records which hyperplanes must be
//! crossed first, and inconsistent pairs are hyperplanes that can never both
//! be crossed. Elements are opaque strings, stored sorted so that every
//! downstream tie-break is deterministic. Internally everything works on the
//! element index in that sorted order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of element indices of some [`Pip`].
pub type ElemSet = FixedBitSet;

/// Default cap on the number of elements for exhaustive enumerations.
pub const DEFAULT_ENUMERATION_GUARD: usize = 20;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PipError {
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    /// The cover relation is not acyclic; the witness lists one cycle.
    #[error("cover relation contains a cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("inconsistent pair {{{0}, {1}}} is comparable")]
    ComparableInconsistentPair(String, String),
    #[error("inconsistent pair {{{p}, {q}}} has common upper bound `{r}`")]
    CommonUpperBound { p: String, q: String, r: String },
    #[error("poset has {size} elements, enumeration guard is {guard}")]
    TooLarge { size: usize, guard: usize },
    #[error("poset has inconsistent pairs")]
    HasInconsistentPairs,
    #[error("not an order ideal: `{missing}` lies below member `{member}`")]
    NotAnIdeal { member: String, missing: String },
    #[error("not an antichain: `{0}` < `{1}`")]
    NotAnAntichain(String, String),
}

/// Unvalidated input, also the JSON wire format.
///
/// `covers` are `(lower, upper)` pairs; they may contain non-cover relations,
/// which are reduced away on validation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPip {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
    #[serde(default)]
    pub inconsistent: Vec<[String; 2]>,
}

impl RawPip {
    /// Convenience constructor from string slices.
    pub fn new(elements: &[&str], covers: &[(&str, &str)], inconsistent: &[(&str, &str)]) -> Self {
        RawPip {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            inconsistent: inconsistent
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }
}

/// A validated poset with inconsistent pairs.
///
/// Stores the strict order in both directions as bit rows plus the full,
/// upward-closed inconsistency relation. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Pip {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    above: Vec<ElemSet>,
    below: Vec<ElemSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    inconsistent: Vec<ElemSet>,
}

impl fmt::Debug for Pip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let raw = self.to_raw();
        f.debug_struct("Pip")
            .field("elements", &raw.elements)
            .field("covers", &raw.covers)
            .field("inconsistent", &raw.inconsistent)
            .finish()
    }
}

/// Checks every axiom and materializes the order closure and the
/// inconsistency closure.
pub fn validate_pip(raw: &RawPip) -> Result<Pip, PipError> {
    Pip::new(raw)
}

impl Pip {
    pub fn new(raw: &RawPip) -> Result<Pip, PipError> {
        let mut names = raw.elements.clone();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(PipError::DuplicateElement(w[0].clone()));
            }
        }
        let n = names.len();
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let lookup = |s: &String| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PipError::UnknownElement(s.clone()))
        };

        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for [a, b] in &raw.covers {
            let (a, b) = (lookup(a)?, lookup(b)?);
            if a == b {
                return Err(PipError::CycleDetected(vec![names[a].clone(), names[a].clone()]));
            }
            succ[a].insert(b);
        }

        // Kahn's algorithm; leftovers sit on or above a cycle.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        while let Some(a) = stack.pop() {
            order.push(a);
            for &b in succ[a].iter().rev() {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
        if order.len() < n {
            let cycle = find_cycle(&succ, &indeg);
            return Err(PipError::CycleDetected(
                cycle.into_iter().map(|i| names[i].clone()).collect(),
            ));
        }

        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &a in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            for &b in &succ[a] {
                row.insert(b);
                row.union_with(&above[b]);
            }
            above[a] = row;
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in above[a].ones() {
                below[b].insert(a);
            }
        }

        let mut inconsistent = vec![FixedBitSet::with_capacity(n); n];
        for [p, q] in &raw.inconsistent {
            let (p, q) = (lookup(p)?, lookup(q)?);
            if p == q || above[p].contains(q) || above[q].contains(p) {
                return Err(PipError::ComparableInconsistentPair(
                    names[p].clone(),
                    names[q].clone(),
                ));
            }
            let mut common = above[p].clone();
            common.intersect_with(&above[q]);
            if let Some(r) = common.ones().next() {
                return Err(PipError::CommonUpperBound {
                    p: names[p].clone(),
                    q: names[q].clone(),
                    r: names[r].clone(),
                });
            }
            let mut up_p = above[p].clone();
            up_p.insert(p);
            let mut up_q = above[q].clone();
            up_q.insert(q);
            for a in up_p.ones() {
                inconsistent[a].union_with(&up_q);
            }
            for b in up_q.ones() {
                inconsistent[b].union_with(&up_p);
            }
        }

        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in above[a].ones() {
                // b covers a iff nothing sits strictly between them
                let mut between = above[a].clone();
                between.intersect_with(&below[b]);
                if between.is_clear() {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }
        for l in &mut lower_covers {
            l.sort_unstable();
        }

        Ok(Pip {
            names,
            index,
            above,
            below,
            lower_covers,
            upper_covers,
            inconsistent,
        })
    }

    /// Builds a Pip over `names` from index-based relations.
    pub(crate) fn from_relations(
        names: &[String],
        less: &[(usize, usize)],
        inconsistent: &[(usize, usize)],
    ) -> Result<Pip, PipError> {
        let raw = RawPip {
            elements: names.to_vec(),
            covers: less
                .iter()
                .map(|&(a, b)| [names[a].clone(), names[b].clone()])
                .collect(),
            inconsistent: inconsistent
                .iter()
                .map(|&(a, b)| [names[a].clone(), names[b].clone()])
                .collect(),
        };
        Pip::new(&raw)
    }

    /// Canonical form: sorted elements, Hasse covers, minimal inconsistent pairs.
    pub fn to_raw(&self) -> RawPip {
        RawPip {
            elements: self.names.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
            inconsistent: self
                .minimal_inconsistent_pairs()
                .into_iter()
                .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Resolves a list of names into a set, failing on unknown names.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet, PipError> {
        let mut s = self.empty_set();
        for n in names {
            let i = self
                .index_of(n.as_ref())
                .ok_or_else(|| PipError::UnknownElement(n.as_ref().to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn names_of(&self, set: &ElemSet) -> Vec<String> {
        set.ones().map(|i| self.names[i].clone()).collect()
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Strict order `a < b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    pub fn inconsistent(&self, a: usize, b: usize) -> bool {
        self.inconsistent[a].contains(b)
    }

    /// Elements strictly above `a`.
    pub fn above(&self, a: usize) -> &ElemSet {
        &self.above[a]
    }

    /// Elements strictly below `a`.
    pub fn below(&self, a: usize) -> &ElemSet {
        &self.below[a]
    }

    pub fn inconsistent_with(&self, a: usize) -> &ElemSet {
        &self.inconsistent[a]
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// Elements covering `a`.
    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// Hasse diagram as sorted `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_inconsistencies(&self) -> bool {
        self.inconsistent.iter().any(|r| !r.is_clear())
    }

    /// Inconsistent pairs `{p, q}` (as `p < q` by index) with no other
    /// inconsistent pair below them componentwise.
    pub fn minimal_inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.inconsistent[p].ones().filter(|&q| q > p) {
                let dominated = self.below[p].ones().any(|p2| self.inconsistent(p2, q))
                    || self.below[q].ones().any(|q2| self.inconsistent(p, q2));
                if !dominated {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Partners `q` such that `{p, q}` is a minimal inconsistent pair.
    pub fn minimal_inconsistent_partners(&self, p: usize) -> Vec<usize> {
        self.minimal_inconsistent_pairs()
            .into_iter()
            .filter_map(|(a, b)| {
                if a == p {
                    Some(b)
                } else if b == p {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Smallest down-closed set containing `set`.
    pub fn down_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = set.clone();
        for a in set.ones() {
            out.union_with(&self.below[a]);
        }
        out
    }

    pub fn is_down_closed(&self, set: &ElemSet) -> bool {
        set.ones().all(|a| self.below[a].is_subset(set))
    }

    /// True iff `set` contains no inconsistent pair.
    pub fn is_consistent(&self, set: &ElemSet) -> bool {
        set.ones().all(|a| self.inconsistent[a].is_disjoint(set))
    }

    pub fn is_antichain(&self, set: &ElemSet) -> bool {
        set.ones().all(|a| self.above[a].is_disjoint(set))
    }

    /// Members of `set` with nothing of `set` above them.
    pub fn maximal_of(&self, set: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for a in set.ones() {
            if self.above[a].is_disjoint(set) {
                out.insert(a);
            }
        }
        out
    }

    /// Members of `set` with nothing of `set` below them.
    pub fn minimal_of(&self, set: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for a in set.ones() {
            if self.below[a].is_disjoint(set) {
                out.insert(a);
            }
        }
        out
    }

    /// Induced sub-PIP on `subset`; the second value maps new indices to old.
    pub fn restrict(&self, subset: &ElemSet) -> (Pip, Vec<usize>) {
        let map: Vec<usize> = subset.ones().collect();
        let names: Vec<String> = map.iter().map(|&i| self.names[i].clone()).collect();
        let mut less = Vec::new();
        let mut inc = Vec::new();
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate() {
                if self.lt(a, b) {
                    less.push((i, j));
                }
                if i < j && self.inconsistent(a, b) {
                    inc.push((i, j));
                }
            }
        }
        let pip = Pip::from_relations(&names, &less, &inc)
            .expect("restriction of a valid PIP is valid");
        (pip, map)
    }
}

fn find_cycle(succ: &[BTreeSet<usize>], indeg: &[usize]) -> Vec<usize> {
    // every node with positive remaining in-degree has a predecessor that is
    // also left over; walk backwards until a node repeats
    let n = succ.len();
    let mut pred = vec![None; n];
    for a in 0..n {
        for &b in &succ[a] {
            if indeg[a] > 0 && indeg[b] > 0 && pred[b].is_none() {
                pred[b] = Some(a);
            }
        }
    }
    let start = (0..n).find(|&i| indeg[i] > 0 && pred[i].is_some()).unwrap_or(0);
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut cur = start;
    while seen[cur] == usize::MAX {
        seen[cur] = path.len();
        path.push(cur);
        match pred[cur] {
            Some(p) => cur = p,
            None => break,
        }
    }
    let from = seen[cur].min(path.len());
    let mut cycle: Vec<usize> = path[from..].to_vec();
    cycle.reverse();
    if let Some(&first) = cycle.first() {
        cycle.push(first);
    }
    cycle
}

/// An order ideal of some [`Pip`], with its consistency flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal {
    members: ElemSet,
    consistent: bool,
}

impl OrderIdeal {
    /// Wraps `members` after checking it is down-closed in `pip`.
    pub fn new(pip: &Pip, members: ElemSet) -> Result<Self, PipError> {
        for a in members.ones() {
            if let Some(m) = pip.below(a).ones().find(|&b| !members.contains(b)) {
                return Err(PipError::NotAnIdeal {
                    member: pip.name(a).to_string(),
                    missing: pip.name(m).to_string(),
                });
            }
        }
        let consistent = pip.is_consistent(&members);
        Ok(OrderIdeal { members, consistent })
    }

    pub(crate) fn new_unchecked(pip: &Pip, members: ElemSet) -> Self {
        debug_assert!(pip.is_down_closed(&members));
        let consistent = pip.is_consistent(&members);
        OrderIdeal { members, consistent }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn into_members(self) -> ElemSet {
        self.members
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }
}

/// A set of pairwise incomparable elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Antichain {
    members: ElemSet,
    consistent: bool,
}

impl Antichain {
    pub fn new(pip: &Pip, members: ElemSet) -> Result<Self, PipError> {
        for a in members.ones() {
            if let Some(b) = pip.above(a).ones().find(|&b| members.contains(b)) {
                return Err(PipError::NotAnAntichain(
                    pip.name(a).to_string(),
                    pip.name(b).to_string(),
                ));
            }
        }
        let consistent = pip.is_consistent(&members);
        Ok(Antichain { members, consistent })
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }
}

/// Smallest order ideal containing the named elements.
pub fn downset<S: AsRef<str>>(pip: &Pip, names: &[S]) -> Result<OrderIdeal, PipError> {
    let set = pip.set_of(names)?;
    Ok(OrderIdeal::new_unchecked(pip, pip.down_closure(&set)))
}

/// Maximal elements of an ideal; their downset is the ideal again.
pub fn maximal_elements(pip: &Pip, ideal: &OrderIdeal) -> Antichain {
    let members = pip.maximal_of(ideal.members());
    let consistent = pip.is_consistent(&members);
    Antichain { members, consistent }
}

/// True iff every element is comparable to (or equal to) some member of `a`.
pub fn is_maximal_antichain(pip: &Pip, a: &Antichain) -> bool {
    covers_by_comparability(pip, a.members())
}

pub(crate) fn covers_by_comparability(pip: &Pip, set: &ElemSet) -> bool {
    (0..pip.len()).all(|p| set.ones().any(|m| pip.comparable(p, m)))
}

/// All consistent order ideals, each once, sorted by size and then by member
/// list, which refines inclusion.
pub fn enumerate_consistent_ideals(pip: &Pip, guard: usize) -> Result<Vec<OrderIdeal>, PipError> {
    if pip.len() > guard {
        return Err(PipError::TooLarge { size: pip.len(), guard });
    }
    Ok(consistent_ideal_sets(pip)
        .into_iter()
        .map(|members| OrderIdeal { members, consistent: true })
        .collect())
}

pub(crate) fn consistent_ideal_sets(pip: &Pip) -> Vec<ElemSet> {
    let mut out = Vec::new();
    let mut layer = vec![pip.empty_set()];
    while !layer.is_empty() {
        layer.sort_by_cached_key(|s| s.ones().collect::<Vec<_>>());
        let mut next: HashSet<ElemSet> = HashSet::new();
        for ideal in &layer {
            for p in 0..pip.len() {
                if ideal.contains(p)
                    || !pip.below(p).is_subset(ideal)
                    || !pip.inconsistent_with(p).is_disjoint(ideal)
                {
                    continue;
                }
                let mut grown = ideal.clone();
                grown.insert(p);
                next.insert(grown);
            }
        }
        out.append(&mut layer);
        layer = next.into_iter().collect();
    }
    out
}

/// Dilworth decomposition of an inconsistency-free poset into `width` chains.
pub fn chain_decomposition(pip: &Pip) -> Result<Vec<Vec<usize>>, PipError> {
    if pip.has_inconsistencies() {
        return Err(PipError::HasInconsistentPairs);
    }
    Ok(dilworth_chains(pip))
}

/// Size of a largest antichain (ignoring inconsistency).
pub fn width(pip: &Pip) -> usize {
    dilworth_chains(pip).len()
}

/// Minimum chain cover from a maximum matching in the split graph
/// `a -> b` for `a < b`. Augmenting paths are searched in index order.
pub(crate) fn dilworth_chains(pip: &Pip) -> Vec<Vec<usize>> {
    let n = pip.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];

    fn augment(
        pip: &Pip,
        a: usize,
        seen: &mut [bool],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for b in pip.above(a).ones() {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            let free = match match_right[b] {
                None => true,
                Some(a2) => augment(pip, a2, seen, match_left, match_right),
            };
            if free {
                match_right[b] = Some(a);
                match_left[a] = Some(b);
                return true;
            }
        }
        false
    }

    for a in 0..n {
        let mut seen = vec![false; n];
        augment(pip, a, &mut seen, &mut match_left, &mut match_right);
    }

    let mut chains = Vec::new();
    for start in 0..n {
        if match_right[start].is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = match_left[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }
    chains
}
