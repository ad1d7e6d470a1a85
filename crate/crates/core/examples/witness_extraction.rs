//! Eigenvector witness for a subgraph with one vertex more than half the
//! cube: the argmax coordinate of an eigenvector supported on H has degree
//! at least √n.
//!
//! `cargo run --example witness_extraction -- [n] [seed]`

use sensitivity::cube::{Cube, InducedSubgraph};
use sensitivity::exterior::WeightConfig;
use sensitivity::scalars::{integer, QuadraticScalar as Q};
use sensitivity::witness::{default_mode, eigenvectors_in_span, witness};

fn main() -> sensitivity::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let cube = Cube::new(n)?;
    let h = InducedSubgraph::random(cube, cube.order() / 2 + 1, seed)?;
    print!("H =\n{}", h.to_text());

    let w = WeightConfig::uniform(n, integer(1), integer(1))?;
    if n <= 6 {
        let kernel = eigenvectors_in_span::<Q>(&w, &h, 0.0)?;
        println!("eigenvectors for +√n supported on H: {}", kernel.len());
        println!("ω = {:?}", kernel[0]);
    }

    let report = witness(&w, &h, default_mode(n))?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    let (v, d) = h.max_degree()?;
    println!("combinatorial max degree {d} at {}", cube.format_vertex(v));
    Ok(())
}
