//! Multivectors over the dual basis and the operator `A = i_v + λ∧`.
//!
//! Basis forms are wedges `e*_{i_1} ∧ … ∧ e*_{i_k}` with ascending indices and
//! are addressed by the cube vertex whose set bits are `{i_1 − 1, …, i_k − 1}`.
//! Moving `e*_k` to its sorted place past the lower factors costs the sign
//! `(−1)^{|S ∩ [1, k−1]|}`, a masked popcount.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cube::{Cube, CubeVertex};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, Rational, Scalar};

/// Above this dimension [`Multivector::zero`] picks sparse storage.
pub const DENSE_MAX_DIM: u32 = 12;

/// True when an odd number of members of `set` lie below bit `bit`.
#[inline]
pub fn transposition_parity(bit: u32, set: CubeVertex) -> bool {
    (set & ((1u32 << bit) - 1)).count_ones() & 1 == 1
}

#[inline]
fn signed<S: Scalar>(negative: bool, value: S) -> S {
    if negative {
        -value
    } else {
        value
    }
}

/// The vector `v` and covector `λ` that define `A`.
///
/// Construction enforces `λ(v) > 0`, which puts both eigenvalues `±√(λ(v))`
/// on the real line.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightConfig {
    v: Vec<Rational>,
    lambda: Vec<Rational>,
}

impl fmt::Debug for WeightConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[Rational]| xs.iter().map(format_rational).collect::<Vec<_>>().join(",");
        f.debug_struct("WeightConfig").field("v", &show(&self.v)).field("lambda", &show(&self.lambda)).finish()
    }
}

impl WeightConfig {
    pub fn new(v: Vec<Rational>, lambda: Vec<Rational>) -> Result<Self> {
        if v.len() != lambda.len() {
            return Err(Error::DimensionMismatch { expected: v.len() as u32, found: lambda.len() as u32 });
        }
        Cube::new(v.len() as u32)?;
        let w = WeightConfig { v, lambda };
        let pairing = w.pairing();
        if !pairing.is_positive() {
            return Err(Error::NonPositivePairing { pairing: format_rational(&pairing) });
        }
        Ok(w)
    }

    /// `λ_k ≡ a`, `v_ℓ ≡ b`; requires `a, b > 0`.
    pub fn uniform(n: u32, a: Rational, b: Rational) -> Result<Self> {
        for (name, x) in [("a", &a), ("b", &b)] {
            if !x.is_positive() {
                return Err(Error::NonPositiveWeight(format!("{name} = {}", format_rational(x))));
            }
        }
        Self::new(vec![b; n as usize], vec![a; n as usize])
    }

    /// Uniform weights with `a = C`, `b = 1/C`, so `ab = 1`, `λ(v) = n` and
    /// `√(a/b) = C`.
    pub fn with_ratio(n: u32, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::NonPositiveWeight(format!("C = {}", format_rational(c))));
        }
        Self::uniform(n, c.clone(), c.recip())
    }

    pub fn dim(&self) -> u32 {
        self.v.len() as u32
    }

    pub fn cube(&self) -> Cube {
        Cube::new(self.dim()).expect("validated on construction")
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// `λ(v) = Σ λ_k v_k`.
    pub fn pairing(&self) -> Rational {
        self.v.iter().zip(&self.lambda).map(|(v, l)| v * l).fold(Rational::zero(), |acc, x| acc + x)
    }

    /// The positive eigenvalue `√(λ(v))`.
    pub fn eigenvalue<S: Scalar>(&self) -> Result<S> {
        S::sqrt_rational(&self.pairing())
    }

    /// `‖v‖_∞`, the largest coordinate magnitude.
    pub fn v_sup_norm(&self) -> Rational {
        sup_norm(&self.v)
    }

    /// `‖λ‖_∞`.
    pub fn lambda_sup_norm(&self) -> Rational {
        sup_norm(&self.lambda)
    }

    /// `Some((a, b))` when every `λ_k = a` and every `v_ℓ = b`.
    pub fn uniform_weights(&self) -> Option<(Rational, Rational)> {
        let a = &self.lambda[0];
        let b = &self.v[0];
        (self.lambda.iter().all(|x| x == a) && self.v.iter().all(|x| x == b)).then(|| (a.clone(), b.clone()))
    }

    /// Multiplies `λ` by `alpha` and `v` by `beta`.
    pub fn scaled(&self, alpha: &Rational, beta: &Rational) -> Result<Self> {
        Self::new(self.v.iter().map(|x| x * beta).collect(), self.lambda.iter().map(|x| x * alpha).collect())
    }

    pub fn v_as<S: Scalar>(&self) -> Vec<S> {
        self.v.iter().map(S::from_rational).collect()
    }

    pub fn lambda_as<S: Scalar>(&self) -> Vec<S> {
        self.lambda.iter().map(S::from_rational).collect()
    }
}

fn sup_norm(xs: &[Rational]) -> Rational {
    xs.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[derive(Clone)]
enum Storage<S> {
    Dense(Vec<S>),
    Sparse(BTreeMap<CubeVertex, S>),
}

/// An element `ω = Σ ω_β e*_β` of the exterior algebra.
#[derive(Clone)]
pub struct Multivector<S> {
    n: u32,
    storage: Storage<S>,
}

impl<S: Scalar> Multivector<S> {
    /// Zero element; dense up to [`DENSE_MAX_DIM`], sparse above.
    pub fn zero(n: u32) -> Result<Self> {
        if n <= DENSE_MAX_DIM {
            Self::zero_dense(n)
        } else {
            Self::zero_sparse(n)
        }
    }

    pub fn zero_dense(n: u32) -> Result<Self> {
        let cube = Cube::new(n)?;
        Ok(Multivector { n, storage: Storage::Dense(vec![S::zero(); cube.order()]) })
    }

    pub fn zero_sparse(n: u32) -> Result<Self> {
        Cube::new(n)?;
        Ok(Multivector { n, storage: Storage::Sparse(BTreeMap::new()) })
    }

    fn zero_like(&self) -> Self {
        let storage = match &self.storage {
            Storage::Dense(c) => Storage::Dense(vec![S::zero(); c.len()]),
            Storage::Sparse(_) => Storage::Sparse(BTreeMap::new()),
        };
        Multivector { n: self.n, storage }
    }

    /// The basis form `e*_β`.
    pub fn basis(n: u32, beta: CubeVertex) -> Result<Self> {
        Self::from_terms(n, [(beta, S::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (CubeVertex, S)>>(n: u32, terms: I) -> Result<Self> {
        let mut m = Self::zero(n)?;
        let cube = Cube::new(n)?;
        for (beta, c) in terms {
            cube.check(beta as u64)?;
            m.add_term(beta, &c);
        }
        Ok(m)
    }

    /// Dense coefficients indexed by bitmask.
    pub fn from_dense(n: u32, coeffs: Vec<S>) -> Result<Self> {
        let cube = Cube::new(n)?;
        if coeffs.len() != cube.order() {
            return Err(Error::DimensionMismatch { expected: cube.order() as u32, found: coeffs.len() as u32 });
        }
        Ok(Multivector { n, storage: Storage::Dense(coeffs) })
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, beta: CubeVertex) -> S {
        match &self.storage {
            Storage::Dense(c) => c.get(beta as usize).cloned().unwrap_or_else(S::zero),
            Storage::Sparse(m) => m.get(&beta).cloned().unwrap_or_else(S::zero),
        }
    }

    /// `ω_β += c`. `beta` must already be validated.
    pub fn add_term(&mut self, beta: CubeVertex, c: &S) {
        if c.is_zero() {
            return;
        }
        match &mut self.storage {
            Storage::Dense(v) => v[beta as usize] += c,
            Storage::Sparse(m) => {
                let slot = m.entry(beta).or_insert_with(S::zero);
                *slot += c;
                if slot.is_zero() {
                    m.remove(&beta);
                }
            }
        }
    }

    /// Nonzero coefficients in ascending bitmask order.
    pub fn terms(&self) -> Box<dyn Iterator<Item = (CubeVertex, &S)> + '_> {
        match &self.storage {
            Storage::Dense(c) => {
                Box::new(c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i as CubeVertex, x)))
            }
            Storage::Sparse(m) => Box::new(m.iter().filter(|(_, x)| !x.is_zero()).map(|(&k, x)| (k, x))),
        }
    }

    pub fn support(&self) -> Vec<CubeVertex> {
        self.terms().map(|(b, _)| b).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    pub fn to_dense_vec(&self) -> Vec<S> {
        match &self.storage {
            Storage::Dense(c) => c.clone(),
            Storage::Sparse(_) => {
                let mut out = vec![S::zero(); 1usize << self.n];
                for (b, x) in self.terms() {
                    out[b as usize] = x.clone();
                }
                out
            }
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = self.zero_like();
        for (b, x) in self.terms() {
            out.add_term(b, &(x.clone() * factor));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.n)?;
        let mut out = self.clone();
        for (b, x) in other.terms() {
            out.add_term(b, x);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-S::one())))
    }

    /// Restriction to basis forms of exterior degree `k`.
    pub fn homogeneous_component(&self, k: u32) -> Self {
        let mut out = self.zero_like();
        for (b, x) in self.terms().filter(|(b, _)| b.count_ones() == k) {
            out.add_term(b, x);
        }
        out
    }

    /// Exterior degrees carrying a nonzero coefficient.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms().map(|(b, _)| b.count_ones()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `max_β |ω_β|` in binary64.
    pub fn sup_norm_f64(&self) -> f64 {
        self.terms().map(|(_, x)| x.to_f64().abs()).fold(0.0, f64::max)
    }

    fn check_dim(&self, n: u32) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch { expected: self.n, found: n });
        }
        Ok(())
    }
}

impl<S: Scalar> PartialEq for Multivector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms().eq(other.terms())
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cube = Cube::new(self.n).map_err(|_| fmt::Error)?;
        f.debug_map().entries(self.terms().map(|(b, x)| (cube.format_vertex(b), x))).finish()
    }
}

fn check_coords<S>(coords: &[S], n: u32) -> Result<()> {
    if coords.len() != n as usize {
        return Err(Error::DimensionMismatch { expected: n, found: coords.len() as u32 });
    }
    Ok(())
}

/// Interior product `i_v ω`:
/// `i_v e*_S = Σ_{ℓ∈S} (−1)^{pos(ℓ,S)−1} v_ℓ e*_{S∖{ℓ}}`.
pub fn interior_product<S: Scalar>(v: &[S], omega: &Multivector<S>) -> Result<Multivector<S>> {
    check_coords(v, omega.n)?;
    let mut out = omega.zero_like();
    for (set, c) in omega.terms() {
        let mut rest = set;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            rest &= rest - 1;
            if v[bit as usize].is_zero() {
                continue;
            }
            let term = signed(transposition_parity(bit, set), v[bit as usize].clone() * c);
            out.add_term(set ^ (1 << bit), &term);
        }
    }
    Ok(out)
}

/// Left multiplication by the 1-form `λ`:
/// `λ ∧ e*_S = Σ_{k∉S} (−1)^{|{i∈S : i<k}|} λ_k e*_{S∪{k}}`.
pub fn wedge_lambda<S: Scalar>(lambda: &[S], omega: &Multivector<S>) -> Result<Multivector<S>> {
    check_coords(lambda, omega.n)?;
    let full = ((1u64 << omega.n) - 1) as CubeVertex;
    let mut out = omega.zero_like();
    for (set, c) in omega.terms() {
        let mut missing = !set & full;
        while missing != 0 {
            let bit = missing.trailing_zeros();
            missing &= missing - 1;
            if lambda[bit as usize].is_zero() {
                continue;
            }
            let term = signed(transposition_parity(bit, set), lambda[bit as usize].clone() * c);
            out.add_term(set | (1 << bit), &term);
        }
    }
    Ok(out)
}

/// `A(ω) = i_v ω + λ ∧ ω`.
pub fn apply_a<S: Scalar>(w: &WeightConfig, omega: &Multivector<S>) -> Result<Multivector<S>> {
    apply_a_with(&w.v_as(), &w.lambda_as(), omega)
}

/// [`apply_a`] with coordinates already converted to the scalar type.
pub fn apply_a_with<S: Scalar>(v: &[S], lambda: &[S], omega: &Multivector<S>) -> Result<Multivector<S>> {
    interior_product(v, omega)?.add(&wedge_lambda(lambda, omega)?)
}

/// General exterior product `α ∧ β`.
pub fn wedge<S: Scalar>(alpha: &Multivector<S>, beta: &Multivector<S>) -> Result<Multivector<S>> {
    alpha.check_dim(beta.n)?;
    let mut out = alpha.zero_like();
    for (s, x) in alpha.terms() {
        for (t, y) in beta.terms() {
            if s & t != 0 {
                continue;
            }
            // count pairs (i ∈ S, j ∈ T) with i > j
            let mut inversions = 0u32;
            let mut rest = t;
            while rest != 0 {
                let j = rest.trailing_zeros();
                rest &= rest - 1;
                inversions += (s >> j).count_ones();
            }
            out.add_term(s | t, &signed(inversions & 1 == 1, x.clone() * y));
        }
    }
    Ok(out)
}
