//! Exhaustive reference: touring-solve every valid cube sequence and keep
//! the shortest. Every geodesic lies in some valid sequence, so this is the
//! global optimum up to solver tolerance.

use rayon::prelude::*;

use super::driver::{build_path, certificate, find_witnesses, frame_for, solve, straight_init, GeodesicOptions};
use super::sequence::enumerate_valid_sequences;
use super::{GeodesicError, GeodesicPath, TraceEntry};
use crate::complex::Point;
use crate::pip::Pip;

pub const DEFAULT_SEQUENCE_GUARD: usize = 100_000;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub path: GeodesicPath,
    /// Number of valid sequences examined.
    pub sequences: usize,
}

/// Global minimum over all valid cube sequences of the interval of `x`, `y`.
pub fn brute_force_geodesic(pip: &Pip, x: &Point, y: &Point, opts: &GeodesicOptions, guard: usize) -> Result<OracleResult, GeodesicError> {
    let tol = opts.tol;
    let frame = frame_for(pip, x, y, opts)?;
    let (q, qx, qy) = (&frame.q, &frame.x, &frame.y);
    let all = enumerate_valid_sequences(q, guard)?;
    let count = all.len();
    // total order on (objective, index) keeps the reduction deterministic
    let (idx, sol) = all
        .par_iter()
        .enumerate()
        .map(|(i, s)| (i, solve(s, qx, qy, &straight_init(s.len(), qx, qy), tol)))
        .min_by(|a, b| a.1.objective.total_cmp(&b.1.objective).then(a.0.cmp(&b.0)))
        .expect("at least one valid sequence");
    let seq = all[idx].clone();
    let clean = sol.objective < 10.0 * tol || find_witnesses(q, &seq, &sol.breakpoints, tol).is_empty();
    let cert = certificate(&seq, &sol, clean, tol);
    let trace = vec![TraceEntry { sequence: seq.clone(), objective: sol.objective }];
    Ok(OracleResult { path: build_path(&frame, seq, &sol, cert, trace, 0), sequences: count })
}
