//! The zero-tension condition: at each breakpoint the incoming and outgoing
//! unit directions have the same projection onto the face the breakpoint
//! moves in.

use super::{CubeSequence, GeodesicError};
use crate::complex::Point;

/// Legs shorter than this multiple of the tolerance count as collapsed.
pub(crate) const DEGENERATE_FACTOR: f64 = 10.0;

pub(crate) fn leg(bps: &[Point], j: usize) -> Vec<f64> {
    bps[j + 1].coords().iter().zip(bps[j].coords()).map(|(b, a)| b - a).collect()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|t| t * t).sum::<f64>().sqrt()
}

pub(crate) fn degenerate(bps: &[Point], j: usize, tol: f64) -> bool {
    norm(&leg(bps, j)) < DEGENERATE_FACTOR * tol
}

/// Nearest non-collapsed legs arriving at and leaving breakpoint `i`:
/// the last one among legs `0..i` and the first one among `i..k`.
pub(crate) fn surrounding_legs(bps: &[Point], i: usize, tol: f64) -> Option<(usize, usize)> {
    let k = bps.len() - 1;
    let incoming = (0..i).rev().find(|&j| !degenerate(bps, j, tol))?;
    let outgoing = (i..k).find(|&j| !degenerate(bps, j, tol))?;
    Some((incoming, outgoing))
}

/// Largest zero-tension mismatch over the interior breakpoints.
///
/// Runs of coincident breakpoints are treated as one point. The projection
/// uses the coordinates that are free in every face of the run and strictly
/// inside `(0, 1)` there; on a 0-dimensional face the condition is vacuous.
pub fn zero_tension_residual(seq: &CubeSequence, bps: &[Point], tol: f64) -> Result<f64, GeodesicError> {
    let k = bps.len() - 1;
    debug_assert_eq!(k, seq.len());
    if (0..k).all(|j| degenerate(bps, j, tol)) {
        return Err(GeodesicError::DegenerateLeg);
    }
    let margin = DEGENERATE_FACTOR * tol;
    let mut worst: f64 = 0.0;
    let mut a = 1;
    while a < k {
        let mut b = a;
        while b + 1 < k && degenerate(bps, b, tol) {
            b += 1;
        }
        if let Some((inc, out)) = surrounding_legs(bps, a, tol) {
            // surrounding_legs(a) skips collapsed legs, so `out` is the first
            // real leg after the run
            let u = leg(bps, inc);
            let v = leg(bps, out);
            let (nu, nv) = (norm(&u), norm(&v));
            let mut sq = 0.0;
            for c in 0..u.len() {
                let moving = (a..=b).all(|i| {
                    let p = bps[i][c];
                    seq.shared_face(i - 1).free().contains(c) && p > margin && p < 1.0 - margin
                });
                if moving {
                    let diff = u[c] / nu - v[c] / nv;
                    sq += diff * diff;
                }
            }
            worst = worst.max(sq.sqrt());
        }
        a = b + 1;
    }
    Ok(worst)
}
