//! Cubes, faces and points of the complex of a small PIP.

use catzero::complex::{cube_faces, enumerate_cubes, is_valid_point, minimal_cube_containing, Cube, Point};
use catzero::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // three squares glued along an edge, two of them forbidden to meet
    let book = fixtures::book();
    let cubes = enumerate_cubes(&book, 20)?;
    let mut by_dim = vec![0; 3];
    for c in &cubes {
        by_dim[c.dimension()] += 1;
    }
    println!("book: {} cubes, by dimension {:?}", cubes.len(), by_dim);

    let page = Cube::from_names(&book, &["1", "2"], &["1", "2"])?;
    println!("faces of {}:", page.display(&book));
    for f in cube_faces(&page) {
        println!("  {}", f.display(&book));
    }

    for coords in [vec![0.5, 0.2, 0.0], vec![0.0, 0.8, 0.5], vec![0.5, 0.2, 0.5]] {
        let x = Point::new(coords);
        if is_valid_point(&book, &x, 1e-9) {
            let c = minimal_cube_containing(&book, &x, 1e-9)?;
            println!("{:?} lies in {}", x.coords(), c.display(&book));
        } else {
            println!("{:?} is not a point of the complex", x.coords());
        }
    }
    Ok(())
}
