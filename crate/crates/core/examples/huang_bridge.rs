//! The recursive signed matrix `B_n = [[B, I], [I, −B]]` and the diagonal
//! sign change taking the exterior-algebra matrix to it.
//!
//! `cargo run --example huang_bridge`

use sensitivity::exterior::WeightConfig;
use sensitivity::operator::{build_matrix, four_cycle_violations, huang_recursive_matrix, switching_equivalent};
use sensitivity::scalars::{integer, QuadraticScalar as Q, Scalar};

fn main() -> sensitivity::Result<()> {
    for n in 1..=6 {
        let a = build_matrix::<Q>(&WeightConfig::uniform(n, integer(1), integer(1))?)?;
        let b = huang_recursive_matrix::<Q>(n)?;
        let (_, square) = b.square_deviation(&Q::from_i64(n as i64), 0.0);
        let d = switching_equivalent(&a, &b)?.expect("switching exists");
        let flips: String = d.iter().map(|&f| if f { '-' } else { '+' }).collect();
        println!(
            "n = {n}: B² = nI {square}, D = {flips}, D·A·D = B {}, bad 4-cycles {}",
            a.conjugate_by(&d) == b,
            four_cycle_violations(&a, 2)
        );
    }
    Ok(())
}
