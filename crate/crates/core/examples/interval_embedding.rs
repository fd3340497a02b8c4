//! The interval spanned by two points, and the embedding of its vertices in
//! the integer lattice.

use catzero::complex::{Cube, Point};
use catzero::fixtures;
use catzero::interval::{embed_interval, interval_endpoints};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bent = fixtures::bent();
    let x = Point::new(vec![0.4, 0.0, 0.7, 0.0, 0.0, 0.0]);
    let y = Point::new(vec![1.0, 1.0, 1.0, 0.6, 1.0, 0.3]);
    let f = interval_endpoints(&bent, &x, &y, 1e-9)?;
    println!("root {:?}, opposite {:?}", bent.names_of(&f.v), bent.names_of(&f.w));
    println!("interval poset {:?}", f.q);
    println!("endpoints in the interval frame: {:?} and {:?}", f.x.coords(), f.y.coords());

    let e = embed_interval(&f.q, 20)?;
    println!("{} vertices in Z^{}:", e.vertices.len(), e.dimension());
    for (ideal, coords) in &e.vertices {
        let v = f.cube_to_original(&Cube::new(&f.q, ideal.clone(), f.q.empty_set())?);
        println!("  {:<32} {:?}", format!("{:?}", bent.names_of(v.ideal())), coords);
    }

    // the vertices fill a staircase region of the plane
    let side = e.chains.iter().map(Vec::len).max().unwrap_or(0) + 1;
    let mut grid = vec![vec!['.'; side]; side];
    for (_, c) in &e.vertices {
        grid[side - 1 - c[1] as usize][c[0] as usize] = '#';
    }
    for row in grid {
        println!("  {}", row.into_iter().collect::<String>());
    }
    Ok(())
}
