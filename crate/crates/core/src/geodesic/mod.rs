//! Geodesics in `X_P`.
//!
//! The computation happens inside the interval poset `Q` of the endpoints
//! (see [`crate::interval`]). A geodesic there is carried by a valid cube
//! sequence; for a fixed sequence the shortest path is a convex touring
//! problem through the shared faces. The driver starts from the extended
//! normal cube path and inserts cubes while the no-shortcut test finds a
//! strictly shorter route.

mod cover;
mod driver;
mod oracle;
mod refit;
mod sequence;
mod shortcut;
mod tension;
mod touring;

use thiserror::Error;

use crate::complex::{ComplexError, Cube, Point};
use crate::interval::IntervalError;
use crate::pip::Pip;

pub use cover::min_weight_vertex_cover;
pub use driver::{geodesic, iteration_budget, GeodesicOptions};
pub use oracle::{brute_force_geodesic, OracleResult, DEFAULT_SEQUENCE_GUARD};
pub use refit::{refit_sequence, Refit};
pub use sequence::{
    check_cube_sequence, enumerate_valid_sequences, extended_normal_cube_path, is_valid_cube_sequence,
    normal_cube_path,
};
pub use shortcut::{apply_witness, shortcut_check, ShortcutWitness};
pub use tension::zero_tension_residual;
pub use touring::{touring_solve, touring_solve_from, TourSolution, INNER_ITERATION_CAP};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Error, Debug, Clone)]
pub enum GeodesicError {
    #[error(transparent)]
    InvalidPoint(#[from] ComplexError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    /// An internal construction broke the valid-sequence axioms.
    #[error("cube sequence is not valid: {0}")]
    NotValid(String),
    #[error("touring solver hit its iteration cap (projected gradient {:.3e})", .0.projected_gradient)]
    ToleranceNotReached(Box<TourSolution>),
    #[error("every leg of the path is degenerate")]
    DegenerateLeg,
    #[error("outer iteration budget of {budget} exhausted")]
    IterationBudgetExceeded { budget: usize, best: Box<GeodesicPath> },
    #[error("{count} valid cube sequences exceed the guard of {guard}")]
    TooLarge { count: usize, guard: usize },
}

/// An ordered list of cubes of `X_Q`, one per leg of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSequence {
    cubes: Vec<Cube>,
}

impl CubeSequence {
    /// Wraps cubes without checking; see [`check_cube_sequence`].
    pub fn new(cubes: Vec<Cube>) -> Self {
        CubeSequence { cubes }
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn into_cubes(self) -> Vec<Cube> {
        self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// The face `C(I_i, M_i ∩ M_{i+1})` shared by cubes `i` and `i + 1`.
    pub fn shared_face(&self, i: usize) -> Cube {
        let mut free = self.cubes[i].free().clone();
        free.intersect_with(self.cubes[i + 1].free());
        Cube::new_unchecked(self.cubes[i].ideal().clone(), free)
    }

    pub fn display(&self, q: &Pip) -> String {
        self.cubes.iter().map(|c| c.display(q)).collect::<Vec<_>>().join(" -> ")
    }
}

/// Evidence attached to a computed path.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Largest mismatch of projected unit directions over all breakpoints.
    pub zero_tension_residual: f64,
    /// No breakpoint admits a shortening cube insertion.
    pub shortcut_clean: bool,
    /// Both conditions hold within tolerance.
    pub certified: bool,
}

/// One visited cube sequence and its optimal touring length.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry {
    pub sequence: CubeSequence,
    pub objective: f64,
}

/// A piecewise linear path with its carrier and certificate.
#[derive(Clone, Debug)]
pub struct GeodesicPath {
    /// `p_0 = x, …, p_k = y` in the original complex.
    pub breakpoints: Vec<Point>,
    /// Carrier cubes in the original complex; leg `j` lies in `cubes[j]`.
    pub cubes: Vec<Cube>,
    /// The same carrier as a sequence over the interval poset.
    pub carrier: CubeSequence,
    pub length: f64,
    pub certificate: Certificate,
    /// Accepted sequences, objective strictly decreasing.
    pub trace: Vec<TraceEntry>,
    /// Number of accepted shortcut insertions.
    pub iterations: usize,
}

impl GeodesicPath {
    /// Lengths of the individual legs.
    pub fn leg_lengths(&self) -> Vec<f64> {
        self.breakpoints.windows(2).map(|w| w[0].distance(&w[1])).collect()
    }
}
