//! Load a PIP from JSON, validate it and summarize its cube complex.
//!
//! Run with `cargo run --example validate_pip [path]`; defaults to the bent
//! poset shipped in `fixtures/`.

use catzero::complex::{enumerate_cubes, euler_characteristic, maximal_cubes};
use catzero::json::parse_pip;
use catzero::pip::{enumerate_consistent_ideals, validate_pip, RawPip};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| format!("{}/fixtures/bent.json", env!("CARGO_MANIFEST_DIR")));
    let pip = parse_pip(&std::fs::read_to_string(&path)?)?;

    let ideals = enumerate_consistent_ideals(&pip, 20)?;
    let cubes = enumerate_cubes(&pip, 20)?;
    println!("{path}: {} elements, {} vertices, {} cubes", pip.len(), ideals.len(), cubes.len());
    println!("Euler characteristic {}", euler_characteristic(&pip, 20)?);
    println!("maximal cubes:");
    for c in maximal_cubes(&pip, 20)? {
        println!("  {} (dimension {})", c.display(&pip), c.dimension());
    }

    // the validator names a witness for each broken axiom
    let broken = [
        RawPip::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")], &[]),
        RawPip::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")], &[("a", "b")]),
        RawPip::new(&["a", "b"], &[("a", "b")], &[("a", "b")]),
    ];
    for raw in &broken {
        println!("rejected: {}", validate_pip(raw).unwrap_err());
    }
    Ok(())
}
