//! Brute force over all subsets of size 2^{n−1} + 1, sharded across threads,
//! and a cross-check of the spectral witness against it.
//!
//! `cargo run --release --example exhaustive_search -- [n] [shards]`

use std::time::Instant;

use sensitivity::exhaustive::{cross_check_with_witness, enumerate_and_verify, EnumerationPlan};

fn main() -> sensitivity::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let shards: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);

    let plan = EnumerationPlan::exhaustive(n).with_shards(shards);
    let start = Instant::now();
    let report = enumerate_and_verify(&plan)?;
    println!(
        "n = {n}, size {}: {} subsets in {:.2?}, min max degree {} (need {}), violations {}",
        plan.subset_size,
        report.subsets_checked,
        start.elapsed(),
        report.min_max_degree,
        report.required_degree,
        report.violations
    );
    println!("histogram {:?}", report.histogram);
    print!("a tight subset:\n{}", report.argmin_subset);

    let check = cross_check_with_witness(&EnumerationPlan::sampled(n, 50, 1), 50)?;
    println!("witness vs brute force: {}/{} consistent", check.consistent, check.checked);

    let sampled = enumerate_and_verify(&EnumerationPlan::sampled(6, 20_000, 5).with_shards(shards))?;
    println!("n = 6 sample of {}: min max degree {}", sampled.subsets_checked, sampled.min_max_degree);
    Ok(())
}
