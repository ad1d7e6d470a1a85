//! Interior products, wedges and the operator `A(ω) = i_v ω + λ ∧ ω` on
//! basis forms indexed by cube vertices.
//!
//! `cargo run --example exterior_algebra`

use sensitivity::exterior::{apply_a, interior_product, wedge, wedge_lambda, Multivector, WeightConfig};
use sensitivity::scalars::{rational, QuadraticScalar as Q, Scalar};

fn main() -> sensitivity::Result<()> {
    let n = 3;
    let v: Vec<Q> = [1, 2, 3].iter().map(|&x| Q::from_i64(x)).collect();
    let lambda: Vec<Q> = [1, 2, -1].iter().map(|&x| Q::from_i64(x)).collect();

    // e*_1 ∧ e*_3 is the vertex 101
    let e13 = Multivector::basis(n, 0b101)?;
    println!("i_v(e1∧e3)  = {:?}", interior_product(&v, &e13)?);
    println!("λ ∧ (e1∧e3) = {:?}", wedge_lambda(&lambda, &e13)?);

    let e2 = Multivector::<Q>::basis(n, 0b010)?;
    let e1 = Multivector::<Q>::basis(n, 0b001)?;
    println!("e2 ∧ e1 = {:?}", wedge(&e2, &e1)?);

    let w = WeightConfig::new(
        vec![rational(1, 1), rational(2, 1), rational(3, 1)],
        vec![rational(1, 2), rational(1, 1), rational(1, 3)],
    )?;
    let omega = Multivector::from_terms(n, [(0b000, Q::one()), (0b011, Q::from_i64(2))])?;
    let once = apply_a(&w, &omega)?;
    let twice = apply_a(&w, &once)?;
    println!("A(ω)  = {once:?}");
    println!("A²(ω) = {twice:?}");
    println!("λ(v)  = {}, A²(ω) = λ(v)·ω: {}", w.pairing(), twice == omega.scale(&Q::rational(w.pairing())));
    Ok(())
}
