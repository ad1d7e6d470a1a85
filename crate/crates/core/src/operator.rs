//! The matrix of `A` in the standard basis, its spectral structure, and the
//! relation to the recursive `±1` signing of the cube.
//!
//! Storage is column-major with exactly `n` slots per column: slot `k` of
//! column `γ` holds `A[γ ⊕ 2^k, γ]`. Matrix-vector products are plain loops
//! over these fixed neighbour offsets.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write as _;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cube::{Cube, CubeVertex};
use crate::error::{Error, Result};
use crate::exterior::{apply_a, Multivector, WeightConfig};
use crate::scalars::{format_rational, Scalar};

/// Largest dimension for which the matrix is materialised.
pub const MAX_MATRIX_DIM: u32 = 20;

#[derive(Clone, PartialEq)]
pub struct SignedCubeMatrix<S> {
    n: u32,
    entries: Vec<S>,
}

impl<S: Scalar> std::fmt::Debug for SignedCubeMatrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SignedCubeMatrix").field("n", &self.n).field("dense", &self.to_dense()).finish()
    }
}

impl<S: Scalar> SignedCubeMatrix<S> {
    /// Fills slot `(row, col)` for every cube edge from `entry(row, col)`.
    pub fn from_fn(n: u32, mut entry: impl FnMut(CubeVertex, CubeVertex) -> S) -> Result<Self> {
        let cube = Cube::with_cap(n, MAX_MATRIX_DIM)?;
        let mut entries = Vec::with_capacity(n as usize * cube.order());
        for col in cube.vertices() {
            for bit in 0..n {
                entries.push(entry(col ^ (1 << bit), col));
            }
        }
        Ok(SignedCubeMatrix { n, entries })
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    fn slot(&self, col: CubeVertex, bit: u32) -> &S {
        &self.entries[col as usize * self.n as usize + bit as usize]
    }

    /// `A[row, col]`; zero off the cube edges.
    pub fn entry(&self, row: CubeVertex, col: CubeVertex) -> S {
        let diff = row ^ col;
        if diff.count_ones() != 1 || col as usize >= self.order() {
            return S::zero();
        }
        self.slot(col, diff.trailing_zeros()).clone()
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Column `col` as a multivector.
    pub fn column(&self, col: CubeVertex) -> Multivector<S> {
        let mut out = Multivector::zero_sparse(self.n).expect("dimension validated");
        for bit in 0..self.n {
            out.add_term(col ^ (1 << bit), self.slot(col, bit));
        }
        out
    }

    /// Nonzero entries as `(row, col, value)` sorted by row, then column.
    pub fn triplets(&self) -> Vec<(CubeVertex, CubeVertex, &S)> {
        let mut out: Vec<_> = (0..self.order() as CubeVertex)
            .flat_map(|col| (0..self.n).map(move |bit| (col ^ (1 << bit), col, bit)))
            .map(|(row, col, bit)| (row, col, self.slot(col, bit)))
            .filter(|(_, _, x)| !x.is_zero())
            .collect();
        out.sort_by_key(|&(r, c, _)| (r, c));
        out
    }

    /// Text dump, one `row col value` line per nonzero.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (r, c, x) in self.triplets() {
            let _ = writeln!(out, "{r} {c} {}", x.render());
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut rows = vec![vec![S::zero(); self.order()]; self.order()];
        for (r, c, x) in self.triplets() {
            rows[r as usize][c as usize] = x.clone();
        }
        rows
    }

    /// `y = A·x`.
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.order(), "vector length must be 2^n");
        let mut y = vec![S::zero(); self.order()];
        for (col, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for bit in 0..self.n {
                let a = self.slot(col as CubeVertex, bit);
                if !a.is_zero() {
                    y[col ^ (1 << bit)] += &(a.clone() * xc);
                }
            }
        }
        y
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for v in 0..self.order() as CubeVertex {
            t += &self.entry(v, v);
        }
        t
    }

    pub fn negated(&self) -> Self {
        SignedCubeMatrix { n: self.n, entries: self.entries.iter().map(|x| -x.clone()).collect() }
    }

    /// `D·A·D` for the diagonal sign matrix `D = diag(signs)`, `true` = −1.
    pub fn conjugate_by(&self, flips: &[bool]) -> Self {
        assert_eq!(flips.len(), self.order());
        let mut out = self.clone();
        for col in 0..self.order() {
            for bit in 0..self.n as usize {
                if flips[col] != flips[col ^ (1 << bit)] {
                    let x = &mut out.entries[col * self.n as usize + bit];
                    *x = -x.clone();
                }
            }
        }
        out
    }

    /// Column `δ` of `A²` as `(row, value)` pairs: row `δ` first, then rows
    /// `δ ⊕ 2^i ⊕ 2^j` for `i < j`.
    fn square_column(&self, delta: CubeVertex) -> Vec<(CubeVertex, S)> {
        let n = self.n;
        let mut diag = S::zero();
        let mut off: Vec<(CubeVertex, S)> = Vec::with_capacity((n * (n.saturating_sub(1)) / 2) as usize);
        for i in 0..n {
            for j in (i + 1)..n {
                off.push((delta ^ (1 << i) ^ (1 << j), S::zero()));
            }
        }
        let index = |i: u32, j: u32| -> usize {
            let (i, j) = (i.min(j), i.max(j));
            (i * (2 * n - i - 1) / 2 + (j - i - 1)) as usize
        };
        for b1 in 0..n {
            let gamma = delta ^ (1 << b1);
            let first = self.slot(delta, b1);
            if first.is_zero() {
                continue;
            }
            for b2 in 0..n {
                let term = self.slot(gamma, b2).clone() * first;
                if b1 == b2 {
                    diag += &term;
                } else {
                    off[index(b1, b2)].1 += &term;
                }
            }
        }
        let mut out = vec![(delta, diag)];
        out.extend(off);
        out
    }

    /// Maximum deviation of `A²` from `expected·I`, and whether every entry
    /// matches (exactly, or within `tau` relative to `max(1, |expected|)`).
    pub fn square_deviation(&self, expected: &S, tau: f64) -> (f64, bool) {
        let tol = tau * expected.to_f64().abs().max(1.0);
        let mut worst = 0.0f64;
        let mut holds = true;
        for delta in 0..self.order() as CubeVertex {
            for (row, value) in self.square_column(delta) {
                let diff = if row == delta { value - expected } else { value };
                worst = worst.max(diff.to_f64().abs());
                holds &= diff.is_negligible(tol);
            }
        }
        (worst, holds)
    }
}

/// The matrix of `A` for the given weights, computed entry by entry.
///
/// An up-edge `γ → γ ∪ {k}` carries `±λ_k` and a down-edge `γ → γ ∖ {k}`
/// carries `±v_k`, with sign `(−1)^{|γ ∩ [1, k−1]|}`.
pub fn build_matrix<S: Scalar>(w: &WeightConfig) -> Result<SignedCubeMatrix<S>> {
    let v: Vec<S> = w.v_as();
    let lambda: Vec<S> = w.lambda_as();
    SignedCubeMatrix::from_fn(w.dim(), |row, col| {
        let bit = (row ^ col).trailing_zeros();
        let below = (col & ((1 << bit) - 1)).count_ones();
        let magnitude = if row > col { &lambda[bit as usize] } else { &v[bit as usize] };
        if below % 2 == 1 {
            -magnitude.clone()
        } else {
            magnitude.clone()
        }
    })
}

/// The recursive signing `B₁ = [[0,1],[1,0]]`, `B_n = [[B_{n−1}, I], [I, −B_{n−1}]]`.
pub fn huang_recursive_matrix<S: Scalar>(n: u32) -> Result<SignedCubeMatrix<S>> {
    Cube::with_cap(n, MAX_MATRIX_DIM)?;
    let mut current = SignedCubeMatrix { n: 1, entries: vec![S::one(), S::one()] };
    for m in 2..=n {
        let half = 1usize << (m - 1);
        let mut entries = Vec::with_capacity(m as usize * 2 * half);
        for col in 0..2 * half {
            let (lower, upper) = (col < half, col % half);
            for bit in 0..m - 1 {
                let x = current.slot(upper as CubeVertex, bit).clone();
                entries.push(if lower { x } else { -x });
            }
            entries.push(S::one());
        }
        current = SignedCubeMatrix { n: m, entries };
    }
    Ok(current)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareIdentityReport {
    pub n: u32,
    pub pairing: String,
    pub max_deviation: f64,
    pub holds: bool,
}

/// Checks `A² = λ(v)·I`. Failure is reported, not raised.
pub fn verify_square_identity<S: Scalar>(
    matrix: &SignedCubeMatrix<S>,
    w: &WeightConfig,
    tau: f64,
) -> Result<SquareIdentityReport> {
    if matrix.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: matrix.dim() });
    }
    let pairing = w.pairing();
    let (max_deviation, holds) = matrix.square_deviation(&S::from_rational(&pairing), tau);
    Ok(SquareIdentityReport { n: w.dim(), pairing: format_rational(&pairing), max_deviation, holds })
}

/// Matrix-free projectors `P± = (I ± A/s)/2` onto the `±s` eigenspaces.
pub struct EigenSplit<'a, S> {
    matrix: &'a SignedCubeMatrix<S>,
    s: S,
    half_over_s: S,
    half: S,
}

impl<'a, S: Scalar> EigenSplit<'a, S> {
    pub fn new(matrix: &'a SignedCubeMatrix<S>, w: &WeightConfig) -> Result<Self> {
        let s: S = w.eigenvalue()?;
        let half = S::from_rational(&crate::scalars::rational(1, 2));
        let half_over_s = s.inverse()? * &half;
        Ok(EigenSplit { matrix, s, half_over_s, half })
    }

    pub fn eigenvalue(&self) -> &S {
        &self.s
    }

    fn project(&self, x: &[S], sign: Ordering) -> Vec<S> {
        let ax = self.matrix.apply(x);
        x.iter()
            .zip(ax)
            .map(|(xi, axi)| {
                let scaled = axi * &self.half_over_s;
                let base = xi.clone() * &self.half;
                if sign == Ordering::Greater {
                    base + scaled
                } else {
                    base - scaled
                }
            })
            .collect()
    }

    pub fn project_plus(&self, x: &[S]) -> Vec<S> {
        self.project(x, Ordering::Greater)
    }

    pub fn project_minus(&self, x: &[S]) -> Vec<S> {
        self.project(x, Ordering::Less)
    }

    /// `trace(P+) = (2^n + trace(A)/s)/2`.
    pub fn trace_plus(&self, trace: &S) -> S {
        let order = S::from_i64(self.matrix.order() as i64);
        order * &self.half + &(trace.clone() * &self.half_over_s)
    }

    pub fn trace_minus(&self, trace: &S) -> S {
        let order = S::from_i64(self.matrix.order() as i64);
        order * &self.half - &(trace.clone() * &self.half_over_s)
    }
}

/// `Σ_β ⟨e*_β, A e*_β⟩`, computed through the exterior-algebra operator
/// rather than the matrix.
pub fn trace_via_operator<S: Scalar>(w: &WeightConfig) -> Result<S> {
    let mut t = S::zero();
    for beta in w.cube().vertices() {
        let mut e = Multivector::zero_sparse(w.dim())?;
        e.add_term(beta, &S::one());
        t += &apply_a(w, &e)?.get(beta);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub n: u32,
    pub eigenvalue: String,
    pub trace: String,
    pub trace_via_operator: String,
    pub trace_is_zero: bool,
    pub plus_dimension: String,
    pub minus_dimension: String,
    pub dimensions_balanced: bool,
    pub projector_probes: usize,
    pub projector_max_deviation: f64,
    pub projectors_ok: bool,
    pub ok: bool,
}

fn max_diff<S: Scalar>(a: &[S], b: &[S]) -> (f64, bool, f64) {
    let mut worst = 0.0f64;
    let mut all_zero = true;
    let mut scale = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = x.clone() - y;
        worst = worst.max(d.to_f64().abs());
        all_zero &= d.is_zero();
        scale = scale.max(x.to_f64().abs()).max(y.to_f64().abs());
    }
    (worst, all_zero, scale)
}

/// Trace, eigenspace dimensions and projector identities of `A`.
///
/// Projector checks apply `P±` to `probes` random integer vectors drawn from
/// `seed` and test `P±² = P±`, `P+ + P− = I` and `A·P± = ±s·P±`.
pub fn spectral_report<S: Scalar>(
    matrix: &SignedCubeMatrix<S>,
    w: &WeightConfig,
    probes: usize,
    seed: u64,
    tau: f64,
) -> Result<SpectralReport> {
    if matrix.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: matrix.dim() });
    }
    let split = EigenSplit::new(matrix, w)?;
    let trace = matrix.trace();
    let trace_op: S = trace_via_operator(w)?;
    let trace_is_zero = trace.is_negligible(tau) && trace_op.is_negligible(tau);

    let half_dim = S::from_i64((matrix.order() / 2) as i64);
    let plus = split.trace_plus(&trace);
    let minus = split.trace_minus(&trace);
    let dim_tol = tau * matrix.order() as f64;
    let dimensions_balanced =
        (plus.clone() - &half_dim).is_negligible(dim_tol) && (minus.clone() - &half_dim).is_negligible(dim_tol);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut projectors_ok = true;
    let s = split.eigenvalue().clone();
    for _ in 0..probes {
        let x: Vec<S> = (0..matrix.order()).map(|_| S::from_i64(rng.random_range(-5..=5))).collect();
        let p = split.project_plus(&x);
        let m = split.project_minus(&x);
        let sum: Vec<S> = p.iter().zip(&m).map(|(a, b)| a.clone() + b).collect();
        let ap = matrix.apply(&p);
        let am = matrix.apply(&m);
        let sp: Vec<S> = p.iter().map(|a| a.clone() * &s).collect();
        let sm: Vec<S> = m.iter().map(|a| -(a.clone() * &s)).collect();
        for (a, b) in [
            (split.project_plus(&p), p.clone()),
            (split.project_minus(&m), m.clone()),
            (sum, x.clone()),
            (ap, sp),
            (am, sm),
        ] {
            let (d, exact_zero, scale) = max_diff(&a, &b);
            worst = worst.max(d);
            projectors_ok &= if S::EXACT { exact_zero } else { d <= tau * scale.max(1.0) };
        }
    }

    Ok(SpectralReport {
        n: w.dim(),
        eigenvalue: s.render(),
        trace: trace.render(),
        trace_via_operator: trace_op.render(),
        trace_is_zero,
        plus_dimension: plus.render(),
        minus_dimension: minus.render(),
        dimensions_balanced,
        projector_probes: probes,
        projector_max_deviation: worst,
        projectors_ok,
        ok: trace_is_zero && dimensions_balanced && projectors_ok,
    })
}

fn sign_of<S: Scalar>(x: &S, row: CubeVertex, col: CubeVertex) -> Result<bool> {
    if *x == S::one() {
        Ok(false)
    } else if *x == -S::one() {
        Ok(true)
    } else {
        Err(Error::NotASigning { row, col })
    }
}

/// Finds `D = diag(±1)` with `D·M1·D = M2`, if one exists.
///
/// Fixes `D₀ = +1` and propagates `D_γ = D_β · M1[γ,β] · M2[γ,β]` breadth
/// first; every edge is then verified in both orientations. `true` in the
/// returned vector stands for −1.
pub fn switching_equivalent<S: Scalar>(
    m1: &SignedCubeMatrix<S>,
    m2: &SignedCubeMatrix<S>,
) -> Result<Option<Vec<bool>>> {
    if m1.dim() != m2.dim() {
        return Err(Error::DimensionMismatch { expected: m1.dim(), found: m2.dim() });
    }
    let n = m1.dim();
    let order = m1.order();
    // sign tables: flip1[col*n + bit] = (M1[col^bit, col] == −1)
    let mut flip1 = Vec::with_capacity(order * n as usize);
    let mut flip2 = Vec::with_capacity(order * n as usize);
    for col in 0..order as CubeVertex {
        for bit in 0..n {
            let row = col ^ (1 << bit);
            flip1.push(sign_of(m1.slot(col, bit), row, col)?);
            flip2.push(sign_of(m2.slot(col, bit), row, col)?);
        }
    }
    let idx = |col: CubeVertex, bit: u32| col as usize * n as usize + bit as usize;

    let mut flips: Vec<Option<bool>> = vec![None; order];
    flips[0] = Some(false);
    let mut queue = VecDeque::from([0 as CubeVertex]);
    while let Some(beta) = queue.pop_front() {
        let fb = flips[beta as usize].expect("queued vertices are assigned");
        for bit in 0..n {
            let gamma = beta ^ (1 << bit);
            if flips[gamma as usize].is_none() {
                // entry (γ, β) lives in column β
                let k = idx(beta, bit);
                flips[gamma as usize] = Some(fb ^ flip1[k] ^ flip2[k]);
                queue.push_back(gamma);
            }
        }
    }
    let flips: Vec<bool> = flips.into_iter().map(|f| f.expect("the cube is connected")).collect();
    for col in 0..order as CubeVertex {
        for bit in 0..n {
            let row = col ^ (1 << bit);
            let k = idx(col, bit);
            if flips[row as usize] ^ flips[col as usize] ^ flip1[k] != flip2[k] {
                return Ok(None);
            }
        }
    }
    Ok(Some(flips))
}

/// Number of 2-faces `{β, β⊕i, β⊕i⊕j, β⊕j}` whose four oriented edge
/// entries multiply to a non-negative value. Zero for every `±1` matrix with
/// `A² = nI` and symmetric sign pattern.
pub fn four_cycle_violations<S: Scalar>(matrix: &SignedCubeMatrix<S>, threads: usize) -> usize {
    let n = matrix.dim();
    let order = matrix.order();
    let count_range = |lo: usize, hi: usize| -> usize {
        let mut bad = 0;
        for beta in lo as CubeVertex..hi as CubeVertex {
            for i in 0..n {
                for j in (i + 1)..n {
                    if beta & ((1 << i) | (1 << j)) != 0 {
                        continue;
                    }
                    let (bi, bj) = (beta ^ (1 << i), beta ^ (1 << j));
                    let bij = bi ^ (1 << j);
                    let product = matrix.entry(bi, beta)
                        * &matrix.entry(bij, bi)
                        * &matrix.entry(bj, bij)
                        * &matrix.entry(beta, bj);
                    if product.signum() != Ordering::Less {
                        bad += 1;
                    }
                }
            }
        }
        bad
    };
    let threads = threads.clamp(1, order);
    let chunk = order.div_ceil(threads);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let (lo, hi) = (t * chunk, ((t + 1) * chunk).min(order));
                scope.spawn(move || count_range(lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{integer, QuadraticScalar};

    type Q = QuadraticScalar;

    fn dense_ints(m: &SignedCubeMatrix<Q>) -> Vec<Vec<i64>> {
        m.to_dense().into_iter().map(|r| r.into_iter().map(|x| x.to_f64() as i64).collect()).collect()
    }

    #[test]
    fn build_matrix_n2() {
        let w = WeightConfig::uniform(2, integer(1), integer(1)).unwrap();
        let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        // columns (0,1,1,0), (1,0,0,−1), (1,0,0,1), (0,−1,1,0)
        assert_eq!(dense_ints(&m), vec![vec![0, 1, 1, 0], vec![1, 0, 0, -1], vec![1, 0, 0, 1], vec![0, -1, 1, 0]]);
        assert_eq!(m.nonzeros(), 8);
    }

    #[test]
    fn build_matrix_n1() {
        let w = WeightConfig::new(vec![integer(3)], vec![integer(5)]).unwrap();
        let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        assert_eq!(dense_ints(&m), vec![vec![0, 3], vec![5, 0]]);
    }

    #[test]
    fn nonzero_count() {
        for n in 1..=6 {
            let w = WeightConfig::uniform(n, integer(2), integer(3)).unwrap();
            let m: SignedCubeMatrix<f64> = build_matrix(&w).unwrap();
            assert_eq!(m.nonzeros(), (n as usize) << n);
        }
    }

    #[test]
    fn square_identity_examples() {
        let cases =
            [(vec![1, 1], vec![1, 1], "2"), (vec![1, 2], vec![3, 4], "11"), (vec![1, 1, 1, 1], vec![1, 1, 1, 1], "4")];
        for (v, l, expected) in cases {
            let w =
                WeightConfig::new(v.into_iter().map(integer).collect(), l.into_iter().map(integer).collect()).unwrap();
            let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
            let r = verify_square_identity(&m, &w, 0.0).unwrap();
            assert!(r.holds);
            assert_eq!(r.max_deviation, 0.0);
            assert_eq!(r.pairing, expected);
        }
    }

    #[test]
    fn square_identity_detects_corruption() {
        let w = WeightConfig::uniform(3, integer(1), integer(1)).unwrap();
        let mut m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        m.entries[5] = -m.entries[5].clone();
        let r = verify_square_identity(&m, &w, 0.0).unwrap();
        assert!(!r.holds);
        assert!(r.max_deviation >= 2.0);
    }

    #[test]
    fn spectral_examples() {
        let w = WeightConfig::uniform(3, integer(1), integer(1)).unwrap();
        let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        let r = spectral_report(&m, &w, 4, 1, 0.0).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!((r.plus_dimension.as_str(), r.minus_dimension.as_str()), ("4", "4"));
        assert_eq!(r.trace, "0");
        assert_eq!(r.eigenvalue, "0+1*sqrt(3)");

        let w = WeightConfig::new(vec![integer(2)], vec![integer(3)]).unwrap();
        let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        let r = spectral_report(&m, &w, 4, 1, 0.0).unwrap();
        assert!(r.ok);
        assert_eq!(r.eigenvalue, "0+1*sqrt(6)");
        assert_eq!((r.plus_dimension.as_str(), r.minus_dimension.as_str()), ("1", "1"));
    }

    /// Determinant of a small dense integer matrix by cofactor expansion.
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    #[test]
    fn characteristic_polynomial_n2() {
        // det(tI − A) sampled at t = 0..=4 must match (t² − 2)²
        let w = WeightConfig::uniform(2, integer(1), integer(1)).unwrap();
        let a = dense_ints(&build_matrix::<Q>(&w).unwrap());
        for t in 0..=4i64 {
            let shifted: Vec<Vec<i64>> =
                (0..4).map(|r| (0..4).map(|c| if r == c { t } else { 0 } - a[r][c]).collect()).collect();
            assert_eq!(det(&shifted), (t * t - 2).pow(2), "t = {t}");
        }
    }

    #[test]
    fn huang_matrix_small() {
        let b1: SignedCubeMatrix<Q> = huang_recursive_matrix(1).unwrap();
        assert_eq!(dense_ints(&b1), vec![vec![0, 1], vec![1, 0]]);
        let b2: SignedCubeMatrix<Q> = huang_recursive_matrix(2).unwrap();
        assert_eq!(dense_ints(&b2), vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 0, 0, -1], vec![0, 1, -1, 0]]);
    }

    #[test]
    fn huang_matrix_squares_to_n() {
        for n in 1..=8 {
            let b: SignedCubeMatrix<Q> = huang_recursive_matrix(n).unwrap();
            let (_, holds) = b.square_deviation(&Q::from_i64(n as i64), 0.0);
            assert!(holds, "n = {n}");
        }
    }

    #[test]
    fn switching_examples() {
        let b3: SignedCubeMatrix<Q> = huang_recursive_matrix(3).unwrap();
        assert_eq!(switching_equivalent(&b3, &b3).unwrap(), Some(vec![false; 8]));

        let b1: SignedCubeMatrix<Q> = huang_recursive_matrix(1).unwrap();
        assert_eq!(switching_equivalent(&b1, &b1.negated()).unwrap(), Some(vec![false, true]));

        // negation keeps every 4-face product, so B_2 ~ −B_2
        let b2: SignedCubeMatrix<Q> = huang_recursive_matrix(2).unwrap();
        let d = switching_equivalent(&b2, &b2.negated()).unwrap().unwrap();
        assert_eq!(b2.conjugate_by(&d), b2.negated());

        // the unsigned adjacency matrix is not equivalent to B_2
        let plain: SignedCubeMatrix<Q> = SignedCubeMatrix::from_fn(2, |_, _| Q::one()).unwrap();
        assert_eq!(switching_equivalent(&plain, &b2).unwrap(), None);
    }

    #[test]
    fn switching_rejects_non_signings() {
        let w = WeightConfig::uniform(2, integer(2), integer(1)).unwrap();
        let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        let b2: SignedCubeMatrix<Q> = huang_recursive_matrix(2).unwrap();
        assert!(matches!(switching_equivalent(&m, &b2), Err(Error::NotASigning { .. })));
        let b3: SignedCubeMatrix<Q> = huang_recursive_matrix(3).unwrap();
        assert!(matches!(switching_equivalent(&b2, &b3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn four_cycles() {
        for n in 2..=5 {
            let b: SignedCubeMatrix<Q> = huang_recursive_matrix(n).unwrap();
            assert_eq!(four_cycle_violations(&b, 3), 0);
        }
        let plain: SignedCubeMatrix<Q> = SignedCubeMatrix::from_fn(3, |_, _| Q::one()).unwrap();
        assert_eq!(four_cycle_violations(&plain, 2), 6);
    }

    #[test]
    fn dump_format() {
        let w = WeightConfig::new(vec![integer(1)], vec![crate::scalars::rational(1, 2)]).unwrap();
        let m: SignedCubeMatrix<Q> = build_matrix(&w).unwrap();
        assert_eq!(m.dump(), "0 1 1\n1 0 1/2\n");
        let f: SignedCubeMatrix<f64> = build_matrix(&w).unwrap();
        assert_eq!(f.dump(), "0 1 1.0000000000000000e0\n1 0 5.0000000000000000e-1\n");
    }

    #[test]
    fn matrix_dimension_cap() {
        assert!(huang_recursive_matrix::<f64>(21).is_err());
        assert!(huang_recursive_matrix::<f64>(0).is_err());
    }
}
