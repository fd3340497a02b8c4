//! A geodesic that unfolds across the spine of a book of three pages.

use catzero::complex::Point;
use catzero::fixtures;
use catzero::geodesic::{geodesic, GeodesicOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let book = fixtures::book();
    let x = Point::new(vec![0.5, 0.2, 0.0]);
    let y = Point::new(vec![0.0, 0.8, 0.5]);
    let p = geodesic(&book, &x, &y, &GeodesicOptions::default())?;

    println!("length {:.12} (unfolded straight line: {:.12})", p.length, 1.36f64.sqrt());
    for (b, c) in p.breakpoints.iter().zip(&p.cubes) {
        println!("  {:?} then through {}", b.coords(), c.display(&book));
    }
    println!("  {:?}", p.breakpoints.last().unwrap().coords());
    println!(
        "certified: {} (zero-tension residual {:.2e})",
        p.certificate.certified, p.certificate.zero_tension_residual
    );
    Ok(())
}
