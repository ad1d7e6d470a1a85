//! Eigenspace split `P± = (I ± A/s)/2` with `s = √λ(v)`: traces and
//! matrix-free projector checks, exact and in floating point.
//!
//! `cargo run --example spectral_split`

use sensitivity::exterior::WeightConfig;
use sensitivity::operator::{build_matrix, spectral_report, EigenSplit};
use sensitivity::scalars::{integer, QuadraticScalar as Q, Scalar};

fn main() -> sensitivity::Result<()> {
    for n in 1..=6 {
        let w = WeightConfig::uniform(n, integer(1), integer(1))?;
        let m = build_matrix::<Q>(&w)?;
        let r = spectral_report(&m, &w, 10, 0, 0.0)?;
        println!(
            "n = {n}: eigenvalues ±({}), dim G+ = {}, dim G− = {}, projectors ok: {}",
            r.eigenvalue, r.plus_dimension, r.minus_dimension, r.projectors_ok
        );
    }

    // one projection by hand
    let w = WeightConfig::uniform(2, integer(1), integer(1))?;
    let m = build_matrix::<Q>(&w)?;
    let split = EigenSplit::new(&m, &w)?;
    let x = vec![Q::one(), Q::zero(), Q::zero(), Q::zero()];
    let plus = split.project_plus(&x);
    println!("P+ e_00 = {plus:?}");
    println!("A P+ e_00 = {:?}", m.apply(&plus));

    let w = WeightConfig::uniform(12, integer(2), integer(3))?;
    let m = build_matrix::<f64>(&w)?;
    let r = spectral_report(&m, &w, 5, 1, 1e-9)?;
    println!("n = 12 float: trace {}, projector deviation {:e}, ok {}", r.trace, r.projector_max_deviation, r.ok);
    Ok(())
}
