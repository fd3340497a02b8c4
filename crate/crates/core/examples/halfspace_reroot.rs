//! Translate a PIP into its halfspace system and back, then move the root of
//! a complex to another vertex.

use catzero::complex::Point;
use catzero::fixtures;
use catzero::halfspace::{halfspace_to_pip, pip_to_halfspace, reroot};
use catzero::pip::OrderIdeal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig4 = fixtures::fig4();
    let h = pip_to_halfspace(&fig4);
    println!("halfspace system of {:?}:", fig4);
    for r in h.to_raw().relations {
        println!("  {} < {}", r[0], r[1]);
    }
    assert_eq!(halfspace_to_pip(&h)?, fig4);
    println!("and back again: identical poset");

    // rerooting the 2x2 grid at the far corner of its first square
    let grid = fixtures::grid22();
    let v = OrderIdeal::new(&grid, grid.set_of(&["1", "2"])?)?;
    let r = reroot(&grid, &v)?;
    println!("grid rerooted at {{1,2}}: {:?}", r.pip);
    println!("flipped hyperplanes: {:?}", grid.names_of(&r.flipped));

    let x = Point::new(vec![1.0, 0.3, 0.0, 0.0]);
    let moved = r.transport_point(&x);
    println!("{:?} becomes {:?} in the new frame", x.coords(), moved.coords());
    Ok(())
}
