//! Same subgraph, several weight ratios: each `C` gives its own certified
//! inequality `C·indeg + outdeg/C ≥ √n`.
//!
//! `cargo run --example weighted_scan`

use sensitivity::cube::{Cube, InducedSubgraph};
use sensitivity::scalars::{rational, ScalarMode};
use sensitivity::witness::weighted_scan;

fn main() -> sensitivity::Result<()> {
    let cube = Cube::new(4)?;
    let h = InducedSubgraph::random(cube, 9, 3)?;
    let grid = [rational(1, 4), rational(1, 2), rational(1, 1), rational(2, 1), rational(4, 1)];
    for r in weighted_scan(&h, &grid, ScalarMode::Exact)? {
        println!(
            "C = {:>3}: beta {} in {} out {}  {} ≥ {}  {}",
            r.c,
            r.beta,
            r.indegree,
            r.outdegree,
            r.bound_rhs,
            r.bound_lhs,
            if r.certified { "certified" } else { "NOT certified" }
        );
    }
    Ok(())
}
