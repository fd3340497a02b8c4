//! Compare the shortcut driver with exhaustive search over all valid cube
//! sequences on random PIPs.
//!
//! `cargo run --release --example oracle_compare -- [cases] [seed]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use catzero::geodesic::{brute_force_geodesic, geodesic, GeodesicOptions, DEFAULT_SEQUENCE_GUARD};
use catzero::random::{random_far_point, random_pip, random_point, RandomPipParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cases: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomPipParams { min_elements: 4, max_elements: 7, relation_prob: 0.35, inconsistency_prob: 0.1 };
    let opts = GeodesicOptions::default();

    let (mut worst, mut multi, mut shortcuts, mut sequences) = (0.0f64, 0, 0, 0);
    let start = std::time::Instant::now();
    for _ in 0..cases {
        let pip = random_pip(&mut rng, &params);
        let x = random_point(&mut rng, &pip);
        let y = random_far_point(&mut rng, &pip);
        let main = geodesic(&pip, &x, &y, &opts)?;
        let oracle = brute_force_geodesic(&pip, &x, &y, &opts, DEFAULT_SEQUENCE_GUARD)?;
        worst = worst.max((main.length - oracle.path.length).abs());
        multi += usize::from(oracle.sequences > 1);
        shortcuts += main.iterations;
        sequences += oracle.sequences;
    }
    println!("{cases} random instances in {:?}", start.elapsed());
    println!("{multi} with more than one valid sequence, {sequences} sequences solved by the oracle");
    println!("{shortcuts} shortcuts taken by the driver");
    println!("largest |driver - oracle| = {worst:.3e}");
    Ok(())
}
