//! Arithmetic in ℚ(√d): exact signs, inverses and square roots of rationals.
//!
//! `cargo run --example exact_arithmetic`

use sensitivity::scalars::{rational, sqrt_decompose, QuadraticScalar, Scalar};

fn main() -> sensitivity::Result<()> {
    let s2 = QuadraticScalar::sqrt_of(&rational(2, 1))?;
    let x = QuadraticScalar::new(rational(3, 2), rational(-1, 1), 2)?; // 3/2 − √2
    println!("x = {x}, x·√2 = {}", x.clone() * &s2);
    println!("1/x = {}", x.inverse()?);
    println!("sign(x) = {:?}, sign(1 − √2) = {:?}", x.signum(), (QuadraticScalar::one() - s2.clone()).signum());

    for q in [rational(18, 1), rational(8, 3), rational(9, 4), rational(12, 49)] {
        let (r, d) = sqrt_decompose(&q)?;
        println!("sqrt({q}) = {r}·sqrt({d}) = {}", QuadraticScalar::sqrt_of(&q)?);
    }

    let y: QuadraticScalar = "1/3-2*sqrt(5)".parse()?;
    println!("parsed {y}, norm {}, ≈ {:.6}", y.norm(), y.to_f64());

    // √2 + √3 has no home in a single quadratic field
    let s3 = QuadraticScalar::sqrt_of(&rational(3, 1))?;
    match s2.checked_add(&s3) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("√2 + √3: {e}"),
    }
    Ok(())
}
