//! Small named PIPs used throughout the tests, the examples and the CLI
//! fixtures directory.

use crate::pip::{validate_pip, Pip, RawPip};

fn build(raw: RawPip) -> Pip {
    validate_pip(&raw).expect("fixture is a valid PIP")
}

/// Two incomparable elements: the unit square.
pub fn raw_sq() -> RawPip {
    RawPip::new(&["1", "2"], &[], &[])
}

/// Two squares glued along an edge: `{1, 3}` inconsistent, 2 free.
pub fn raw_book() -> RawPip {
    RawPip::new(&["1", "2", "3"], &[], &[("1", "3")])
}

/// Two 2-chains: a 2x2 grid of squares.
pub fn raw_grid22() -> RawPip {
    RawPip::new(&["1", "2", "3", "4"], &[("1", "3"), ("2", "4")], &[])
}

/// Chains `1 < 2 < 3` and `4 < 5`: a 3x2 grid of squares.
pub fn raw_grid32() -> RawPip {
    RawPip::new(&["1", "2", "3", "4", "5"], &[("1", "2"), ("2", "3"), ("4", "5")], &[])
}

/// A 3-cube with two squares attached on skew edges.
pub fn raw_s8() -> RawPip {
    RawPip::new(
        &["1", "2", "3", "4", "5"],
        &[("1", "3"), ("1", "4"), ("2", "5"), ("3", "5")],
        &[],
    )
}

/// An ascending antichain poset whose geodesics skip the middle cube.
pub fn raw_bent() -> RawPip {
    RawPip::new(
        &["1", "2", "3", "4", "5", "6"],
        &[("1", "2"), ("2", "4"), ("2", "5"), ("3", "5"), ("5", "6")],
        &[],
    )
}

/// Chains `1 < 2 < 3 < 4` and `5 < 6 < 7`.
pub fn raw_ex4() -> RawPip {
    RawPip::new(
        &["1", "2", "3", "4", "5", "6", "7"],
        &[("1", "2"), ("2", "3"), ("3", "4"), ("5", "6"), ("6", "7")],
        &[],
    )
}

/// Six hyperplanes with `{3, 6}` inconsistent and `C({1,2,3,4},{1,3,4})` a
/// maximal 3-cube.
pub fn raw_fig4() -> RawPip {
    RawPip::new(
        &["1", "2", "3", "4", "5", "6"],
        &[("2", "3"), ("2", "4"), ("3", "5"), ("1", "6")],
        &[("3", "6")],
    )
}

pub fn sq() -> Pip {
    build(raw_sq())
}

pub fn book() -> Pip {
    build(raw_book())
}

pub fn grid22() -> Pip {
    build(raw_grid22())
}

pub fn grid32() -> Pip {
    build(raw_grid32())
}

pub fn s8() -> Pip {
    build(raw_s8())
}

pub fn bent() -> Pip {
    build(raw_bent())
}

pub fn ex4() -> Pip {
    build(raw_ex4())
}

pub fn fig4() -> Pip {
    build(raw_fig4())
}

/// All fixtures by name.
pub fn all() -> Vec<(&'static str, Pip)> {
    vec![
        ("sq", sq()),
        ("book", book()),
        ("grid22", grid22()),
        ("grid32", grid32()),
        ("s8", s8()),
        ("bent", bent()),
        ("ex4", ex4()),
        ("fig4", fig4()),
    ]
}
