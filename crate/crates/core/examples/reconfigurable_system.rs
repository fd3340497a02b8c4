//! Any PIP complex is the state complex of a reconfigurable system: one
//! binary site per element, one local move per site.

use std::collections::BTreeSet;

use catzero::complex::{cube_vertices, enumerate_cubes};
use catzero::fixtures;
use catzero::recsys::{moves_commute, pip_to_reconfigurable, state_complex, DEFAULT_STATE_GUARD};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s8 = fixtures::s8();
    let sys = pip_to_reconfigurable(&s8);
    println!("sites {:?}", sys.vertices);
    for m in &sys.moves {
        let ctx: Vec<String> = m.context.iter().map(|&(v, l)| format!("{}={l}", sys.vertices[v])).collect();
        println!("  flip {} when {}", sys.vertices[m.trace[0]], if ctx.is_empty() { "always".into() } else { ctx.join(", ") });
    }
    let commuting = (0..sys.moves.len())
        .flat_map(|a| (a + 1..sys.moves.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| moves_commute(&sys.moves[a], &sys.moves[b]))
        .count();
    println!("{commuting} commuting pairs of moves");

    let sc = state_complex(&sys, DEFAULT_STATE_GUARD)?;
    println!("{} states, cubes by dimension {:?}", sc.vertices.len(), sc.cubes_by_dimension());

    let direct: BTreeSet<_> = enumerate_cubes(&s8, 20)?
        .iter()
        .map(|c| {
            let mut v = cube_vertices(c);
            v.sort();
            v
        })
        .collect();
    println!("same cubes as the PIP complex: {}", sc.cube_vertex_sets() == direct);
    Ok(())
}
