//! Watch the driver insert a cube when the no-shortcut test fires.
//!
//! Set `CATZERO_LOG=debug` for the solver's own account.

use catzero::complex::Point;
use catzero::fixtures;
use catzero::geodesic::{geodesic, shortcut_check, touring_solve, GeodesicOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CATZERO_LOG", "info")).init();
    let grid = fixtures::grid22();
    let x = Point::new(vec![0.2, 0.0, 0.0, 0.0]);
    let y = Point::new(vec![1.0, 1.0, 1.0, 0.8]);
    let p = geodesic(&grid, &x, &y, &GeodesicOptions::default())?;

    for (i, t) in p.trace.iter().enumerate() {
        println!("step {i}: {:.12} via {}", t.objective, t.sequence.display(&grid));
    }

    // the same test by hand, on the first sequence
    let first = &p.trace[0].sequence;
    let sol = touring_solve(first, &x, &y, 1e-8)?;
    let c = first.cubes();
    let bp = &sol.breakpoints;
    if let Some(w) = shortcut_check(&grid, &c[0], &c[1], &bp[0], &bp[1], &bp[2], 1e-8) {
        println!(
            "at breakpoint {:?}: cover weight {:.4} < 1, insert {}",
            bp[1].coords(),
            w.cover_weight,
            w.cube.display(&grid)
        );
    }
    println!("final length {:.12}, certified {}", p.length, p.certificate.certified);
    Ok(())
}
