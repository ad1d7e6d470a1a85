//! Matrix of `A` in the cube basis: `A² = λ(v)·I`, zero trace, and the
//! magnitude pattern of its entries.
//!
//! `cargo run --example operator_identities -- [n]`

use sensitivity::exterior::WeightConfig;
use sensitivity::operator::{build_matrix, verify_square_identity};
use sensitivity::scalars::{rational, QuadraticScalar as Q};

fn main() -> sensitivity::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let v = (1..=n as i64).map(|k| rational(k, 1)).collect();
    let lambda = (1..=n as i64).map(|k| rational(1, k)).collect();
    let w = WeightConfig::new(v, lambda)?;

    let exact = build_matrix::<Q>(&w)?;
    let report = verify_square_identity(&exact, &w, 0.0)?;
    println!("n = {n}, λ(v) = {}, nonzeros = {}", w.pairing(), exact.nonzeros());
    println!("exact: A² = λ(v)·I {} (max deviation {}), trace {}", report.holds, report.max_deviation, exact.trace());

    let float = build_matrix::<f64>(&w)?;
    let report = verify_square_identity(&float, &w, 1e-9)?;
    println!("float: A² = λ(v)·I {} (max deviation {:e})", report.holds, report.max_deviation);

    if n <= 3 {
        print!("{}", exact.dump());
    }
    Ok(())
}
