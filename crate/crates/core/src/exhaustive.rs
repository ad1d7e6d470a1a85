//! Brute-force check of the degree bound over all (or sampled) vertex subsets
//! of a small cube.
//!
//! A subset of `Q_n` with `n ≤ 6` fits in one `u64` membership mask. Subsets
//! of a fixed size are walked in colexicographic order, which for masks is
//! plain numeric order, using Gosper's next-combination step. Shards are
//! contiguous rank intervals, so merging them in order is deterministic.

use std::collections::BTreeMap;
use std::thread;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cube::{Cube, InducedSubgraph};
use crate::error::{Error, Result};
use crate::exterior::WeightConfig;
use crate::scalars::{ceil_sqrt, integer, ScalarMode};
use crate::witness::witness;

/// Largest dimension whose vertex subsets fit in a `u64` mask.
pub const MAX_EXHAUSTIVE_DIM: u32 = 6;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    RandomSample { count: u64, seed: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationPlan {
    pub n: u32,
    pub subset_size: usize,
    pub strategy: Strategy,
    pub parallel_shards: usize,
    pub budget: u128,
}

impl EnumerationPlan {
    /// Exhaustive scan of subsets of size `2^{n−1} + 1`, single shard.
    pub fn exhaustive(n: u32) -> Self {
        EnumerationPlan {
            n,
            subset_size: (1usize << n.min(MAX_EXHAUSTIVE_DIM)) / 2 + 1,
            strategy: Strategy::Exhaustive,
            parallel_shards: 1,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn sampled(n: u32, count: u64, seed: u64) -> Self {
        EnumerationPlan { strategy: Strategy::RandomSample { count, seed: Some(seed) }, ..Self::exhaustive(n) }
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.subset_size = size;
        self
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.parallel_shards = shards;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn cube(&self) -> Result<Cube> {
        Cube::with_cap(self.n, MAX_EXHAUSTIVE_DIM)
    }

    /// Number of subsets the plan visits.
    pub fn workload(&self) -> Result<u128> {
        let cube = self.cube()?;
        if self.subset_size == 0 || self.subset_size > cube.order() {
            return Err(Error::InvalidPlan(format!(
                "subset size {} must lie in 1..={}",
                self.subset_size,
                cube.order()
            )));
        }
        if self.parallel_shards == 0 {
            return Err(Error::InvalidPlan("at least one shard is required".into()));
        }
        let required = match self.strategy {
            Strategy::Exhaustive => binomial(cube.order() as u64, self.subset_size as u64),
            Strategy::RandomSample { seed: None, .. } => {
                return Err(Error::InvalidPlan("random sampling needs a seed".into()));
            }
            Strategy::RandomSample { count, .. } => count as u128,
        };
        if required > self.budget {
            return Err(Error::BudgetExceeded { required, budget: self.budget });
        }
        Ok(required)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub plan: EnumerationPlan,
    pub subsets_checked: u64,
    /// `⌈√n⌉`, the smallest integer degree the bound allows.
    pub required_degree: u32,
    pub min_max_degree: u32,
    /// A subset attaining `min_max_degree`, one binary vertex per line.
    pub argmin_subset: String,
    /// Max induced degree → number of subsets attaining it.
    pub histogram: BTreeMap<u32, u64>,
    /// Subsets larger than half the cube whose max degree falls below the bound.
    pub violations: u64,
    #[serde(skip)]
    pub argmin_mask: u64,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The `rank`-th `k`-subset of `{0, …, 63}` in colex order, as a mask.
pub fn colex_unrank(mut rank: u128, k: u32) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k as u64).rev() {
        // largest c with C(c, i) ≤ rank
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        mask |= 1 << c;
    }
    mask
}

/// Next mask with the same popcount (Gosper). `x` must be nonzero.
#[inline]
pub fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// Maximum induced degree of the subset `mask` of `Q_n`.
pub fn max_degree_of_mask(mask: u64, n: u32) -> u32 {
    let mut best = 0;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let degree = (0..n).filter(|&k| mask >> (v ^ (1 << k)) & 1 == 1).count() as u32;
        if degree > best {
            best = degree;
            if best == n {
                break;
            }
        }
    }
    best
}

#[derive(Clone, Debug)]
struct Accumulator {
    checked: u64,
    min: u32,
    argmin_rank: u128,
    argmin_mask: u64,
    histogram: BTreeMap<u32, u64>,
    violations: u64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            checked: 0,
            min: u32::MAX,
            argmin_rank: u128::MAX,
            argmin_mask: 0,
            histogram: BTreeMap::new(),
            violations: 0,
        }
    }

    fn record(&mut self, rank: u128, mask: u64, degree: u32, required: Option<u32>) {
        self.checked += 1;
        *self.histogram.entry(degree).or_default() += 1;
        if degree < self.min || (degree == self.min && rank < self.argmin_rank) {
            self.min = degree;
            self.argmin_rank = rank;
            self.argmin_mask = mask;
        }
        if required.is_some_and(|r| degree < r) {
            self.violations += 1;
        }
    }

    fn merge(mut self, other: Accumulator) -> Self {
        self.checked += other.checked;
        self.violations += other.violations;
        for (d, c) in other.histogram {
            *self.histogram.entry(d).or_default() += c;
        }
        if other.min < self.min || (other.min == self.min && other.argmin_rank < self.argmin_rank) {
            self.min = other.min;
            self.argmin_rank = other.argmin_rank;
            self.argmin_mask = other.argmin_mask;
        }
        self
    }
}

fn sample_masks(cube: Cube, size: usize, count: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| index::sample(&mut rng, cube.order(), size).into_iter().fold(0u64, |m, i| m | 1 << i)).collect()
}

/// Scans the plan's subsets and aggregates max induced degrees.
pub fn enumerate_and_verify(plan: &EnumerationPlan) -> Result<ExhaustiveReport> {
    let total = plan.workload()?;
    let cube = plan.cube()?;
    let n = plan.n;
    let large = plan.subset_size > cube.order() / 2;
    let required = ceil_sqrt(n as u64) as u32;
    let check = large.then_some(required);

    let samples = match plan.strategy {
        Strategy::RandomSample { count, seed: Some(seed) } => Some(sample_masks(cube, plan.subset_size, count, seed)),
        _ => None,
    };
    let samples = samples.as_deref();
    let k = plan.subset_size as u32;

    let scan = |lo: u128, hi: u128| -> Accumulator {
        let mut acc = Accumulator::new();
        if lo >= hi {
            return acc;
        }
        match samples {
            Some(masks) => {
                for rank in lo..hi {
                    let mask = masks[rank as usize];
                    acc.record(rank, mask, max_degree_of_mask(mask, n), check);
                }
            }
            None => {
                let mut mask = colex_unrank(lo, k);
                for rank in lo..hi {
                    acc.record(rank, mask, max_degree_of_mask(mask, n), check);
                    if rank + 1 < hi {
                        mask = next_combination(mask);
                    }
                }
            }
        }
        acc
    };

    let shards = (plan.parallel_shards as u128).min(total.max(1));
    let chunk = total.div_ceil(shards);
    let acc = if shards <= 1 {
        scan(0, total)
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..shards)
                .map(|s| {
                    let (lo, hi) = (s * chunk, ((s + 1) * chunk).min(total));
                    scope.spawn(move || scan(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("shard panicked")).fold(Accumulator::new(), Accumulator::merge)
        })
    };

    let argmin = InducedSubgraph::from_mask(cube, acc.argmin_mask)?;
    Ok(ExhaustiveReport {
        plan: plan.clone(),
        subsets_checked: acc.checked,
        required_degree: required,
        min_max_degree: if acc.checked == 0 { 0 } else { acc.min },
        argmin_subset: argmin.to_text(),
        histogram: acc.histogram,
        violations: acc.violations,
        argmin_mask: acc.argmin_mask,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: u32,
    pub checked: u64,
    pub consistent: u64,
    /// Subsets (as masks) where the witness and the combinatorial oracle disagree.
    pub inconsistent_masks: Vec<u64>,
}

/// Runs the spectral witness (exact, `C = 1`) on `sample` subsets of the plan
/// and compares with the combinatorial max degree: the certified witness
/// degree may not exceed it, and both must reach `√n`.
///
/// When `sample` covers the whole exhaustive plan every subset is used in
/// colex order; otherwise subsets are drawn with the plan's seed (0 for
/// exhaustive plans).
pub fn cross_check_with_witness(plan: &EnumerationPlan, sample: u64) -> Result<CrossCheckReport> {
    let cube = plan.cube()?;
    let total = match plan.strategy {
        Strategy::Exhaustive => binomial(cube.order() as u64, plan.subset_size as u64),
        Strategy::RandomSample { .. } => 0,
    };
    if plan.subset_size == 0 || plan.subset_size > cube.order() {
        return Err(Error::InvalidPlan(format!("subset size {} out of range", plan.subset_size)));
    }
    let masks: Vec<u64> = if plan.strategy == Strategy::Exhaustive && sample as u128 >= total {
        let mut mask = colex_unrank(0, plan.subset_size as u32);
        (0..total)
            .map(|i| {
                let current = mask;
                if i + 1 < total {
                    mask = next_combination(mask);
                }
                current
            })
            .collect()
    } else {
        let seed = match plan.strategy {
            Strategy::RandomSample { seed: Some(seed), .. } => seed,
            Strategy::RandomSample { seed: None, .. } => {
                return Err(Error::InvalidPlan("random sampling needs a seed".into()));
            }
            Strategy::Exhaustive => 0,
        };
        sample_masks(cube, plan.subset_size, sample, seed)
    };

    let w = WeightConfig::uniform(plan.n, integer(1), integer(1))?;
    let n = plan.n;
    let mut report = CrossCheckReport { n, checked: 0, consistent: 0, inconsistent_masks: Vec::new() };
    for mask in masks {
        let h = InducedSubgraph::from_mask(cube, mask)?;
        let witnessed = witness(&w, &h, ScalarMode::Exact)?;
        let (_, combinatorial) = h.max_degree()?;
        report.checked += 1;
        let ok = witnessed.certified
            && witnessed.degree <= combinatorial
            && witnessed.degree * witnessed.degree >= n
            && combinatorial * combinatorial >= n;
        if ok {
            report.consistent += 1;
        } else {
            report.inconsistent_masks.push(mask);
        }
    }
    Ok(report)
}
