//! Seeded generators for random PIPs and random points, used by the
//! property tests, the acceptance suite and the examples.

use rand::{Rng, RngExt};

use crate::complex::Point;
use crate::pip::{validate_pip, ElemSet, Pip, RawPip};

/// Shape parameters for [`random_pip`].
#[derive(Clone, Debug, PartialEq)]
pub struct RandomPipParams {
    pub min_elements: usize,
    pub max_elements: usize,
    /// Probability of a relation `i < j` for each index pair `i < j`.
    pub relation_prob: f64,
    /// Probability of trying an inconsistency for each eligible pair.
    pub inconsistency_prob: f64,
}

impl Default for RandomPipParams {
    fn default() -> Self {
        RandomPipParams { min_elements: 1, max_elements: 7, relation_prob: 0.3, inconsistency_prob: 0.2 }
    }
}

impl RandomPipParams {
    /// Posets without inconsistent pairs.
    pub fn consistent(max_elements: usize) -> Self {
        RandomPipParams { max_elements, inconsistency_prob: 0.0, ..Default::default() }
    }
}

fn element_names(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("{i:0width$}")).collect()
}

/// A random PIP: a random order on `1..n` compatible with the index order,
/// plus inconsistencies between incomparable pairs with no common upper
/// bound.
pub fn random_pip<R: Rng + ?Sized>(rng: &mut R, params: &RandomPipParams) -> Pip {
    let n = rng.random_range(params.min_elements..=params.max_elements);
    let names = element_names(n);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(params.relation_prob) {
                covers.push([names[i].clone(), names[j].clone()]);
            }
        }
    }
    let order = validate_pip(&RawPip { elements: names.clone(), covers: covers.clone(), inconsistent: vec![] })
        .expect("index-ordered relations are acyclic");
    let mut inconsistent = Vec::new();
    if params.inconsistency_prob > 0.0 {
        for i in 0..n {
            for j in i + 1..n {
                let eligible =
                    !order.comparable(i, j) && order.above(i).is_disjoint(order.above(j));
                if eligible && rng.random_bool(params.inconsistency_prob) {
                    inconsistent.push([names[i].clone(), names[j].clone()]);
                }
            }
        }
    }
    validate_pip(&RawPip { elements: names, covers, inconsistent }).expect("generated PIP satisfies the axioms")
}

/// A random consistent order ideal, grown one addable element at a time.
pub fn random_vertex<R: Rng + ?Sized>(rng: &mut R, pip: &Pip) -> ElemSet {
    let mut ideal = pip.empty_set();
    loop {
        let addable: Vec<usize> = (0..pip.len())
            .filter(|&p| {
                !ideal.contains(p)
                    && pip.below(p).is_subset(&ideal)
                    && pip.inconsistent_with(p).is_disjoint(&ideal)
            })
            .collect();
        if addable.is_empty() || rng.random_bool(1.0 / (1.0 + addable.len() as f64)) {
            return ideal;
        }
        ideal.insert(addable[rng.random_range(0..addable.len())]);
    }
}

/// A random point: a random cube `C(I, M)` and uniform coordinates on `M`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, pip: &Pip) -> Point {
    let ideal = random_vertex(rng, pip);
    let max = pip.maximal_of(&ideal);
    let mut x = Point::vertex(pip.len(), &ideal);
    for m in max.ones() {
        if rng.random_bool(0.7) {
            x.coords_mut()[m] = rng.random::<f64>();
        }
    }
    x
}

/// A random point on a maximal consistent ideal, so that intervals from
/// small vertices are large.
pub fn random_far_point<R: Rng + ?Sized>(rng: &mut R, pip: &Pip) -> Point {
    let mut ideal = pip.empty_set();
    loop {
        let addable: Vec<usize> = (0..pip.len())
            .filter(|&p| {
                !ideal.contains(p) && pip.below(p).is_subset(&ideal) && pip.inconsistent_with(p).is_disjoint(&ideal)
            })
            .collect();
        if addable.is_empty() {
            break;
        }
        ideal.insert(addable[rng.random_range(0..addable.len())]);
    }
    let mut x = Point::vertex(pip.len(), &ideal);
    for m in pip.maximal_of(&ideal).ones() {
        if rng.random_bool(0.7) {
            x.coords_mut()[m] = rng.random::<f64>();
        }
    }
    x
}

/// A uniform point in the interior of the cube `C(ideal, free)`.
pub fn random_point_in<R: Rng + ?Sized>(rng: &mut R, n: usize, ideal: &ElemSet, free: &ElemSet) -> Point {
    let mut x = Point::vertex(n, ideal);
    for m in free.ones() {
        x.coords_mut()[m] = 0.05 + 0.9 * rng.random::<f64>();
    }
    x
}
