use std::cmp::Ordering;

use proptest::prelude::*;
use sensitivity::cube::{direction, Cube, Direction, InducedSubgraph};
use sensitivity::exhaustive::{cross_check_with_witness, enumerate_and_verify, EnumerationPlan};
use sensitivity::exterior::{apply_a, interior_product, wedge, wedge_lambda, Multivector, WeightConfig};
use sensitivity::operator::{build_matrix, verify_square_identity};
use sensitivity::scalars::{integer, rational, sqrt_decompose, QuadraticScalar, Rational, Scalar, ScalarMode};
use sensitivity::witness::{eigen_residual, eigenvectors_in_span, extract_witness, weighted_scan};

type Q = QuadraticScalar;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(p, q)| rational(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=9).prop_map(|(p, q)| rational(p, q))
}

fn quadratic(d: u64) -> impl Strategy<Value = Q> {
    (small_rational(), small_rational()).prop_map(move |(x, y)| Q::new(x, y, d).unwrap())
}

fn coords(n: u32) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(small_rational().prop_map(Q::rational), n as usize)
}

fn multivector(n: u32) -> impl Strategy<Value = Multivector<Q>> {
    let order = 1u32 << n;
    prop::collection::vec((0..order, -5i64..=5), 0..12)
        .prop_map(move |terms| Multivector::from_terms(n, terms.into_iter().map(|(b, c)| (b, Q::from_i64(c)))).unwrap())
}

fn homogeneous(n: u32) -> impl Strategy<Value = Multivector<Q>> {
    (0..=n, multivector(n)).prop_map(|(k, m)| m.homogeneous_component(k))
}

fn dim_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(u32) -> S + Clone + 'static,
) -> impl Strategy<Value = (u32, T)> {
    (1u32..=8).prop_flat_map(move |n| (Just(n), f(n)))
}

proptest! {
    #[test]
    fn direction_is_antisymmetric(n in 1u32..=10, u in 0u32..1024, v in 0u32..1024) {
        let mask = (1u32 << n) - 1;
        let (u, v) = (u & mask, v & mask);
        let d = direction(u, v);
        prop_assert_eq!(direction(v, u), d.reversed());
        prop_assert_eq!(Cube::new(n).unwrap().adjacent(u, v).unwrap(), d != Direction::NotAdjacent);
    }

    #[test]
    fn handshake(n in 1u32..=7, size in 1usize..=128, seed in any::<u64>()) {
        let cube = Cube::new(n).unwrap();
        let h = InducedSubgraph::random(cube, size.min(cube.order()), seed).unwrap();
        let total: u32 = h.iter().map(|v| h.degree_profile(v).unwrap().degree).sum();
        prop_assert_eq!(total % 2, 0);
        let ins: u32 = h.iter().map(|v| h.degree_profile(v).unwrap().indegree).sum();
        let outs: u32 = h.iter().map(|v| h.degree_profile(v).unwrap().outdegree).sum();
        prop_assert_eq!(ins, outs);
    }

    #[test]
    fn field_axioms(
        d in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10]),
        parts in prop::collection::vec(small_rational(), 6),
    ) {
        let make = |i: usize| Q::new(parts[i].clone(), parts[i + 1].clone(), d).unwrap();
        let (a, b, c) = (make(0), make(2), make(4));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * &a.inverse().unwrap(), Q::one());
        }
    }

    #[test]
    fn sqrt_decompose_round_trip(q in positive_rational()) {
        let (r, d) = sqrt_decompose(&q).unwrap();
        prop_assert_eq!(&r * &r * integer(d as i64), q);
        prop_assert!(sensitivity::scalars::is_square_free(d));
    }

    #[test]
    fn exact_sign_matches_float(x in quadratic(2), d in prop::sample::select(vec![2u64, 3, 7])) {
        let x = Q::new(x.rational_part().clone(), x.irrational_part().clone(), d).unwrap();
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.signum(), f.partial_cmp(&0.0).unwrap());
        } else {
            prop_assert_eq!(x.signum() == Ordering::Equal, x.is_zero());
        }
    }

    #[test]
    fn anticommutator((n, (v, l, omega)) in dim_and(|n| (coords(n), coords(n), multivector(n)))) {
        let lhs = interior_product(&v, &wedge_lambda(&l, &omega).unwrap()).unwrap()
            .add(&wedge_lambda(&l, &interior_product(&v, &omega).unwrap()).unwrap()).unwrap();
        let pairing = v.iter().zip(&l).fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b);
        prop_assert_eq!(lhs, omega.scale(&pairing), "n = {}", n);
    }

    #[test]
    fn interior_is_antiderivation((_, (v, a, b)) in dim_and(|n| (coords(n), homogeneous(n), homogeneous(n)))) {
        let deg = a.degrees().first().copied().unwrap_or(0);
        let lhs = interior_product(&v, &wedge(&a, &b).unwrap()).unwrap();
        let first = wedge(&interior_product(&v, &a).unwrap(), &b).unwrap();
        let second = wedge(&a, &interior_product(&v, &b).unwrap()).unwrap();
        let sign = if deg % 2 == 0 { Q::one() } else { -Q::one() };
        prop_assert_eq!(lhs, first.add(&second.scale(&sign)).unwrap());
    }

    #[test]
    fn nilpotent_parts((_, (v, l, omega)) in dim_and(|n| (coords(n), coords(n), multivector(n)))) {
        prop_assert!(interior_product(&v, &interior_product(&v, &omega).unwrap()).unwrap().is_zero());
        prop_assert!(wedge_lambda(&l, &wedge_lambda(&l, &omega).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn degree_shift((n, (k, omega, v, l)) in dim_and(|n| (0..=n, multivector(n), prop::collection::vec(positive_rational(), n as usize), prop::collection::vec(positive_rational(), n as usize)))) {
        let w = WeightConfig::new(v, l).unwrap();
        let part = omega.homogeneous_component(k);
        let image = apply_a(&w, &part).unwrap();
        for d in image.degrees() {
            prop_assert!(d + 1 == k || d == k + 1, "degree {} from {} in n = {}", d, k, n);
        }
    }

    #[test]
    fn matrix_square_random_weights(n in 1u32..=6, v in prop::collection::vec(positive_rational(), 6), l in prop::collection::vec(small_rational(), 6)) {
        let v = v[..n as usize].to_vec();
        let l = l[..n as usize].to_vec();
        if let Ok(w) = WeightConfig::new(v, l) {
            let m = build_matrix::<Q>(&w).unwrap();
            let r = verify_square_identity(&m, &w, 0.0).unwrap();
            prop_assert!(r.holds);
            prop_assert_eq!(m.trace(), Q::zero());
        }
    }

    #[test]
    fn matrix_columns_match_operator((n, (v, l)) in dim_and(|n| (prop::collection::vec(positive_rational(), n as usize), prop::collection::vec(positive_rational(), n as usize)))) {
        let w = WeightConfig::new(v, l).unwrap();
        let m = build_matrix::<Q>(&w).unwrap();
        for gamma in w.cube().vertices() {
            let e = Multivector::<Q>::basis(n, gamma).unwrap();
            prop_assert_eq!(m.column(gamma), apply_a(&w, &e).unwrap());
        }
    }

    #[test]
    fn magnitudes_depend_only_on_coordinate_and_direction(n in 1u32..=5, v in prop::collection::vec(positive_rational(), 5), l in prop::collection::vec(positive_rational(), 5)) {
        let w = WeightConfig::new(v[..n as usize].to_vec(), l[..n as usize].to_vec()).unwrap();
        let m = build_matrix::<Q>(&w).unwrap();
        for gamma in w.cube().vertices() {
            for (k, beta) in w.cube().neighbors(gamma) {
                let expected = match direction(gamma, beta) {
                    Direction::Up(_) => &w.lambda()[k as usize - 1],
                    Direction::Down(_) => &w.v()[k as usize - 1],
                    Direction::NotAdjacent => unreachable!(),
                };
                prop_assert_eq!(m.entry(beta, gamma).abs(), Q::rational(expected.clone()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Every vector of the kernel basis, not only the first, yields a
    /// certificate, and rescaling the weights keeps certification.
    #[test]
    fn every_kernel_vector_certifies(n in 2u32..=4, seed in any::<u64>(), scale in 1i64..=5, extra in 0usize..=2) {
        let cube = Cube::new(n).unwrap();
        let h = InducedSubgraph::random(cube, (cube.order() / 2 + 1 + extra).min(cube.order()), seed).unwrap();
        let base = WeightConfig::uniform(n, integer(1), integer(1)).unwrap();
        for w in [base.clone(), base.scaled(&integer(scale), &rational(1, scale)).unwrap(), base.scaled(&integer(scale), &integer(3)).unwrap()] {
            let kernel = eigenvectors_in_span::<Q>(&w, &h, 0.0).unwrap();
            prop_assert!(!kernel.is_empty());
            for omega in &kernel {
                prop_assert_eq!(eigen_residual(&w, omega).unwrap(), 0.0);
                prop_assert!(omega.support().iter().all(|&b| h.contains(b)));
                let report = extract_witness(&w, &h, omega, ScalarMode::Exact).unwrap();
                prop_assert!(report.certified);
                prop_assert!(report.degree <= h.max_degree().unwrap().1);
            }
        }
    }

    /// Complementing every vertex reverses edge directions: the `1/C` run on
    /// the complemented subgraph sees the same coordinate magnitudes at the
    /// mirrored vertices, so the mirrored witness has swapped in/out degrees
    /// and the same bound.
    #[test]
    fn complement_swaps_directions(n in 2u32..=4, seed in any::<u64>(), c in prop::sample::select(vec![(1i64, 2i64), (1, 1), (2, 1), (3, 1)])) {
        let cube = Cube::new(n).unwrap();
        let c = rational(c.0, c.1);
        let h = InducedSubgraph::random(cube, cube.order() / 2 + 1, seed).unwrap();
        let hc = h.complemented();
        let w = WeightConfig::with_ratio(n, &c).unwrap();
        let wc = WeightConfig::with_ratio(n, &c.recip()).unwrap();
        let kernel = eigenvectors_in_span::<Q>(&w, &h, 0.0).unwrap();
        let kernel_c = eigenvectors_in_span::<Q>(&wc, &hc, 0.0).unwrap();
        prop_assert_eq!(kernel.len(), kernel_c.len());
        let report = weighted_scan(&h, std::slice::from_ref(&c), ScalarMode::Exact).unwrap().remove(0);
        let report_c = weighted_scan(&hc, &[c.recip()], ScalarMode::Exact).unwrap().remove(0);
        prop_assert!(report.certified && report_c.certified);
        if kernel.len() == 1 {
            for b in cube.vertices() {
                prop_assert_eq!(kernel[0].get(b).abs(), kernel_c[0].get(cube.complement(b)).abs());
            }
            let mirrored = extract_witness(&wc, &hc, &kernel_c[0], ScalarMode::Exact).unwrap();
            let at_mirror = hc.degree_profile(cube.complement(report.vertex)).unwrap();
            prop_assert_eq!((at_mirror.indegree, at_mirror.outdegree), (report.outdegree, report.indegree));
            // mirrored argmax may differ only through tie-breaking
            prop_assert_eq!(kernel_c[0].get(mirrored.vertex).abs(), kernel_c[0].get(cube.complement(report.vertex)).abs());
        }
    }
}

#[test]
fn exhaustive_is_deterministic_across_shards() {
    for n in 2..=4 {
        let one = enumerate_and_verify(&EnumerationPlan::exhaustive(n)).unwrap();
        for shards in [2, 3, 8, 13] {
            let many = enumerate_and_verify(&EnumerationPlan::exhaustive(n).with_shards(shards)).unwrap();
            assert_eq!(many.subsets_checked, one.subsets_checked);
            assert_eq!(many.min_max_degree, one.min_max_degree);
            assert_eq!(many.argmin_subset, one.argmin_subset);
            assert_eq!(many.histogram, one.histogram);
            assert_eq!(many.violations, 0);
        }
    }
}

#[test]
fn sampling_is_reproducible() {
    let plan = EnumerationPlan::sampled(5, 2000, 42).with_shards(4);
    let a = enumerate_and_verify(&plan).unwrap();
    let b = enumerate_and_verify(&plan).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.subsets_checked, 2000);
    assert_eq!(a.violations, 0);
    let other = enumerate_and_verify(&EnumerationPlan::sampled(5, 2000, 43)).unwrap();
    assert_ne!(a.histogram, other.histogram);
}

#[test]
fn min_max_degree_is_monotone_in_size() {
    let mut previous = 0;
    for size in 5..=8 {
        let r = enumerate_and_verify(&EnumerationPlan::exhaustive(3).with_size(size)).unwrap();
        assert!(r.min_max_degree >= previous, "size {size}");
        previous = r.min_max_degree;
    }
}

#[test]
fn weighted_scan_at_unit_ratio_is_unweighted_bound() {
    let cube = Cube::new(4).unwrap();
    let h = InducedSubgraph::random(cube, 9, 7).unwrap();
    let scan = weighted_scan(&h, &[integer(1)], ScalarMode::Exact).unwrap().remove(0);
    let plain = sensitivity::witness::witness(
        &WeightConfig::uniform(4, integer(1), integer(1)).unwrap(),
        &h,
        ScalarMode::Exact,
    )
    .unwrap();
    assert_eq!(scan, plain);
    assert!(scan.degree >= 2);
}

#[test]
fn witness_degree_never_exceeds_combinatorial_max() {
    for n in 2..=5u32 {
        let cube = Cube::new(n).unwrap();
        let w = WeightConfig::uniform(n, integer(1), integer(1)).unwrap();
        for seed in 0..20 {
            let h = InducedSubgraph::random(cube, cube.order() / 2 + 1, seed).unwrap();
            let r = sensitivity::witness::witness(&w, &h, ScalarMode::Exact).unwrap();
            let (_, max) = h.max_degree().unwrap();
            assert!(r.certified);
            assert!(r.degree <= max);
            assert!(max * max >= n, "max degree {max} below sqrt({n})");
        }
    }
}

#[test]
fn witness_agrees_with_enumeration_on_every_n3_subset() {
    let plan = EnumerationPlan::exhaustive(3);
    let report = cross_check_with_witness(&plan, 56).unwrap();
    assert_eq!((report.checked, report.consistent), (56, 56));
    assert!(report.inconsistent_masks.is_empty());
}

#[test]
fn witness_agrees_with_enumeration_on_sampled_n4_subsets() {
    let plan = EnumerationPlan::sampled(4, 200, 17);
    let report = cross_check_with_witness(&plan, 200).unwrap();
    assert_eq!((report.checked, report.consistent), (200, 200));
}
