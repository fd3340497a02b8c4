//! Shrinking a cube sequence to the cubes the path actually uses.

use super::tension::degenerate;
use super::{check_cube_sequence, CubeSequence};
use crate::complex::Point;
use crate::pip::Pip;

/// Result of [`refit_sequence`].
#[derive(Clone, Debug, PartialEq)]
pub struct Refit {
    pub sequence: CubeSequence,
    /// Breakpoints with the removed cubes' entries dropped.
    pub breakpoints: Vec<Point>,
    pub changed: bool,
    /// Cubes traversed with zero length that had to stay for validity.
    pub kept: Vec<String>,
}

/// Drops middle cubes whose leg has collapsed, as long as the sequence stays
/// valid. Cubes that cannot go are kept and reported in [`Refit::kept`].
pub fn refit_sequence(q: &Pip, seq: &CubeSequence, bps: &[Point], x: &Point, y: &Point, tol: f64) -> Refit {
    let mut cubes = seq.cubes().to_vec();
    let mut pts = bps.to_vec();
    let mut kept = Vec::new();
    let mut changed = false;
    let mut j = 1;
    while j + 1 < cubes.len() {
        if !degenerate(&pts, j, tol) {
            j += 1;
            continue;
        }
        let mut trial = cubes.clone();
        trial.remove(j);
        let trial = CubeSequence::new(trial);
        if check_cube_sequence(q, &trial, x, y, tol).is_ok() {
            cubes = trial.into_cubes();
            // leg j ran from pts[j] to pts[j+1]; the two coincide
            pts.remove(j + 1);
            changed = true;
        } else {
            kept.push(cubes[j].display(q));
            j += 1;
        }
    }
    if !kept.is_empty() {
        log::debug!("refit kept zero-length cubes {}", kept.join(", "));
    }
    Refit { sequence: CubeSequence::new(cubes), breakpoints: pts, changed, kept }
}
