//! The cube complex of a PIP in its standard embedding.
//!
//! A point assigns each element a coordinate in `[0, 1]`. A coordinate may
//! leave 0 only once every element below it sits at 1, and two inconsistent
//! elements never both leave 0. Cubes are value types `C(I, M)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Index;

use thiserror::Error;

use crate::pip::{consistent_ideal_sets, ElemSet, Pip, PipError};

/// Coordinates within this distance of 0 or 1 are snapped when classifying
/// carriers.
pub const DEFAULT_EMBEDDING_TOL: f64 = 1e-9;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ComplexError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid cube: {0}")]
    InvalidCube(String),
    #[error(transparent)]
    Pip(#[from] PipError),
}

/// A point of the standard embedding, indexed like the elements of its PIP.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Point(vec![0.0; n])
    }

    /// Indicator vector of a vertex.
    pub fn vertex(n: usize, ideal: &ElemSet) -> Self {
        Point((0..n).map(|i| if ideal.contains(i) { 1.0 } else { 0.0 }).collect())
    }

    /// Builds a point from named coordinates; absent names are 0.
    pub fn from_named(pip: &Pip, coords: &BTreeMap<String, f64>) -> Result<Self, ComplexError> {
        let mut out = vec![0.0; pip.len()];
        for (k, &v) in coords {
            let i = pip
                .index_of(k)
                .ok_or_else(|| PipError::UnknownElement(k.clone()))?;
            out[i] = v;
        }
        Ok(Point(out))
    }

    pub fn to_named(&self, pip: &Pip) -> BTreeMap<String, f64> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &v)| (pip.name(i).to_string(), v))
            .collect()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// True iff `x` satisfies the standard-embedding constraints within `tol`.
pub fn is_valid_point(pip: &Pip, x: &Point, tol: f64) -> bool {
    point_violation(pip, x, tol).is_none()
}

fn point_violation(pip: &Pip, x: &Point, tol: f64) -> Option<String> {
    if x.len() != pip.len() {
        return Some(format!("{} coordinates for {} elements", x.len(), pip.len()));
    }
    for i in 0..pip.len() {
        let xi = x[i];
        if !xi.is_finite() || xi < -tol || xi > 1.0 + tol {
            return Some(format!("coordinate {} = {xi} outside [0,1]", pip.name(i)));
        }
        if xi < 1.0 - tol {
            if let Some(j) = pip.above(i).ones().find(|&j| x[j] > tol) {
                return Some(format!(
                    "{} < {} but x_{} = {xi} < 1 and x_{} = {} > 0",
                    pip.name(i),
                    pip.name(j),
                    pip.name(i),
                    pip.name(j),
                    x[j]
                ));
            }
        }
        if xi > tol {
            if let Some(j) = pip.inconsistent_with(i).ones().find(|&j| x[j] > tol) {
                return Some(format!(
                    "{} and {} are inconsistent but both positive",
                    pip.name(i),
                    pip.name(j)
                ));
            }
        }
    }
    None
}

/// A cube `C(I, M)`: consistent ideal `I`, free directions `M ⊆ max(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    ideal: ElemSet,
    free: ElemSet,
}

impl Cube {
    pub fn new(pip: &Pip, ideal: ElemSet, free: ElemSet) -> Result<Cube, ComplexError> {
        if !pip.is_down_closed(&ideal) {
            return Err(ComplexError::InvalidCube("ideal is not down-closed".into()));
        }
        if !pip.is_consistent(&ideal) {
            return Err(ComplexError::InvalidCube("ideal is inconsistent".into()));
        }
        if !free.is_subset(&pip.maximal_of(&ideal)) {
            return Err(ComplexError::InvalidCube(
                "free set is not made of maximal elements of the ideal".into(),
            ));
        }
        Ok(Cube { ideal, free })
    }

    pub(crate) fn new_unchecked(ideal: ElemSet, free: ElemSet) -> Cube {
        Cube { ideal, free }
    }

    /// Named constructor for tests and examples.
    pub fn from_names<S: AsRef<str>>(pip: &Pip, ideal: &[S], free: &[S]) -> Result<Cube, ComplexError> {
        Cube::new(pip, pip.set_of(ideal)?, pip.set_of(free)?)
    }

    pub fn ideal(&self) -> &ElemSet {
        &self.ideal
    }

    pub fn free(&self) -> &ElemSet {
        &self.free
    }

    pub fn dimension(&self) -> usize {
        self.free.count_ones(..)
    }

    /// Coordinates pinned at 1 inside this cube.
    pub fn fixed_ones(&self) -> ElemSet {
        let mut s = self.ideal.clone();
        s.difference_with(&self.free);
        s
    }

    /// Membership of `x` in this cube's box, within `tol`.
    pub fn contains(&self, x: &Point, tol: f64) -> bool {
        (0..x.len()).all(|i| {
            if self.free.contains(i) {
                x[i] >= -tol && x[i] <= 1.0 + tol
            } else if self.ideal.contains(i) {
                (x[i] - 1.0).abs() <= tol
            } else {
                x[i].abs() <= tol
            }
        })
    }

    /// True iff `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cube) -> bool {
        if !self.ideal.is_subset(&other.ideal) {
            return false;
        }
        let mut dropped = other.ideal.clone();
        dropped.difference_with(&self.ideal);
        if !dropped.is_subset(&other.free) {
            return false;
        }
        let mut allowed = other.free.clone();
        allowed.intersect_with(&self.ideal);
        self.free.is_subset(&allowed)
    }

    /// Short human form, e.g. `C({1,2},{2})`.
    pub fn display(&self, pip: &Pip) -> String {
        let mut s = String::from("C({");
        s.push_str(&pip.names_of(&self.ideal).join(","));
        s.push_str("},{");
        s.push_str(&pip.names_of(&self.free).join(","));
        let _ = write!(s, "}})");
        s
    }
}

/// The `2^|M|` vertices `I \ S` for `S ⊆ M`.
pub fn cube_vertices(cube: &Cube) -> Vec<ElemSet> {
    let free: Vec<usize> = cube.free.ones().collect();
    (0u64..1 << free.len())
        .map(|mask| {
            let mut v = cube.ideal.clone();
            for (bit, &m) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    v.set(m, false);
                }
            }
            v
        })
        .collect()
}

/// The `3^|N|` faces `C(J − N1, N − N1 − N2)` for disjoint `N1, N2 ⊆ N`.
pub fn cube_faces(cube: &Cube) -> Vec<Cube> {
    let free: Vec<usize> = cube.free.ones().collect();
    let mut out = Vec::with_capacity(3usize.pow(free.len() as u32));
    let mut digits = vec![0u8; free.len()];
    loop {
        let mut ideal = cube.ideal.clone();
        let mut kept = cube.free.clone();
        for (d, &m) in digits.iter().zip(&free) {
            match d {
                1 => {
                    ideal.set(m, false);
                    kept.set(m, false);
                }
                2 => kept.set(m, false),
                _ => {}
            }
        }
        out.push(Cube { ideal, free: kept });
        // base-3 counter
        let mut k = 0;
        while k < digits.len() && digits[k] == 2 {
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
        digits[k] += 1;
    }
    out
}

/// Carrier cube of `x`: free where `x` is strictly fractional, ideal where
/// `x` is 1 or fractional.
pub fn minimal_cube_containing(pip: &Pip, x: &Point, tol: f64) -> Result<Cube, ComplexError> {
    if let Some(why) = point_violation(pip, x, tol) {
        return Err(ComplexError::InvalidPoint(why));
    }
    let mut free = pip.empty_set();
    let mut ideal = pip.empty_set();
    for i in 0..pip.len() {
        if x[i] > tol && x[i] < 1.0 - tol {
            free.insert(i);
            ideal.insert(i);
        } else if x[i] >= 1.0 - tol {
            ideal.insert(i);
        }
    }
    Cube::new(pip, ideal, free).map_err(|e| ComplexError::InvalidPoint(e.to_string()))
}

/// Every cube of the complex; guarded by the ideal enumeration guard.
pub fn enumerate_cubes(pip: &Pip, guard: usize) -> Result<Vec<Cube>, ComplexError> {
    if pip.len() > guard {
        return Err(PipError::TooLarge { size: pip.len(), guard }.into());
    }
    let mut out = Vec::new();
    for ideal in consistent_ideal_sets(pip) {
        let max = pip.maximal_of(&ideal);
        let top = Cube { ideal: ideal.clone(), free: max };
        // every subset of the maximal elements
        for face in cube_faces(&top) {
            if face.ideal == ideal {
                out.push(face);
            }
        }
    }
    Ok(out)
}

/// Alternating count of cubes by dimension; 1 for every finite PIP complex.
pub fn euler_characteristic(pip: &Pip, guard: usize) -> Result<i64, ComplexError> {
    Ok(enumerate_cubes(pip, guard)?
        .iter()
        .map(|c| if c.dimension() % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// Maximal cubes `C(P_{≤A}, A)` for maximal consistent antichains `A`, in
/// the order of their ideals (size, then members).
pub fn maximal_cubes(pip: &Pip, guard: usize) -> Result<Vec<Cube>, ComplexError> {
    if pip.len() > guard {
        return Err(PipError::TooLarge { size: pip.len(), guard }.into());
    }
    let mut out = Vec::new();
    for ideal in consistent_ideal_sets(pip) {
        let max = pip.maximal_of(&ideal);
        let extendable = (0..pip.len()).any(|p| {
            !max.contains(p)
                && max.ones().all(|a| !pip.comparable(a, p))
                && pip.inconsistent_with(p).is_disjoint(&max)
        });
        if !extendable {
            out.push(Cube { ideal, free: max });
        }
    }
    Ok(out)
}

/// Dimension of the largest cube.
pub fn max_cube_dimension(pip: &Pip, guard: usize) -> Result<usize, ComplexError> {
    Ok(maximal_cubes(pip, guard)?
        .iter()
        .map(Cube::dimension)
        .max()
        .unwrap_or(0))
}
