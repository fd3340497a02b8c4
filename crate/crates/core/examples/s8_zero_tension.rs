//! On the five-element poset S8 the geodesic bends twice; its free breakpoint
//! coordinates solve two polynomial balance equations.

use catzero::complex::Point;
use catzero::fixtures;
use catzero::geodesic::{geodesic, GeodesicOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b, c, d) = (0.5, 0.3, 0.4, 0.7);
    let s8 = fixtures::s8();
    let p = geodesic(
        &s8,
        &Point::new(vec![a, b, 0.0, 0.0, 0.0]),
        &Point::new(vec![1.0, 1.0, 1.0, c, d]),
        &GeodesicOptions::default(),
    )?;
    println!("carrier {}", p.carrier.display(&s8));
    for bp in &p.breakpoints {
        println!("  {:?}", bp.coords());
    }

    // breakpoints (1, x, 0, 0, 0) and (1, 1, 1, y, 0)
    let x = p.breakpoints[1][1];
    let y = p.breakpoints[2][3];
    let e1 = (b - x).powi(2) * ((x - 1.0).powi(2) + y * y + 1.0) - (x - 1.0).powi(2) * ((a - 1.0).powi(2) + (b - x).powi(2));
    let e2 = y * y * ((y - c).powi(2) + d * d) - (y - c).powi(2) * ((x - 1.0).powi(2) + y * y + 1.0);
    println!("x = {x:.12}, y = {y:.12}");
    println!("balance residuals {e1:.2e}, {e2:.2e}");
    println!("length {:.12}, certified {}", p.length, p.certificate.certified);
    Ok(())
}
