//! Exact arithmetic in `ℚ` and in a real quadratic field `ℚ(√d)`, plus the
//! [`Scalar`] abstraction that lets the linear algebra run either exactly or
//! in binary64.
//!
//! The eigenvalue `√(λ(v))` is generically irrational, but every other number
//! met by the pipeline is rational, so a single extension `ℚ(√d)` suffices.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default relative tolerance for binary64 mode.
pub const DEFAULT_TAU: f64 = 1e-9;

/// Trial division bound used by the square-free factorisation.
const TRIAL_DIVISION_BOUND: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float { tau: f64 },
}

impl ScalarMode {
    pub fn float() -> Self {
        ScalarMode::Float { tau: DEFAULT_TAU }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float { .. } => "float",
        }
    }

    /// Tolerance to hand to the generic routines; ignored by exact scalars.
    pub fn tau(&self) -> f64 {
        match *self {
            ScalarMode::Exact => 0.0,
            ScalarMode::Float { tau } => tau,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ScalarMode::Float { tau } if !(tau > 0.0 && tau.is_finite()) => {
                Err(Error::Parse(format!("float tolerance must be positive, got {tau}")))
            }
            _ => Ok(()),
        }
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if (int.is_empty() && frac.is_empty()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(num, den));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Splits a positive integer as `m = r² · d` with `d` square-free.
pub fn square_free_split(m: &BigUint) -> Result<(BigUint, u64)> {
    if m.is_zero() {
        return Err(Error::NonPositiveRadicand("0".into()));
    }
    let mut rest = m.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut exponent = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            exponent += 1;
        }
        if exponent > 0 {
            root *= pb.pow(exponent / 2);
            if exponent % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Every prime factor left in `rest` exceeds the trial bound (or `rest` is
    // prime). If `rest < bound³` it is p, p² or p·q, and only p² is a square.
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            let bound = BigUint::from(TRIAL_DIVISION_BOUND);
            if rest >= &bound * &bound * &bound {
                return Err(Error::RadicandTooLarge(m.to_string()));
            }
            free *= rest;
        }
    }
    let d = free.to_u64().ok_or_else(|| Error::RadicandTooLarge(m.to_string()))?;
    Ok((root, d))
}

/// Writes `q > 0` as `r² · d` with `d` square-free, so that `√q = r·√d`.
pub fn sqrt_decompose(q: &Rational) -> Result<(Rational, u64)> {
    if !q.is_positive() {
        return Err(Error::NonPositiveRadicand(format_rational(q)));
    }
    // q = a/b = (a·b) / b²
    let ab = (q.numer() * q.denom()).to_biguint().expect("positive");
    let (root, d) = square_free_split(&ab)?;
    let r = Rational::new(BigInt::from(root), q.denom().clone());
    Ok((r, d))
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= d) {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `x + y·√d` with rational `x`, `y` and square-free `d ≥ 1`.
///
/// Canonical form: `y = 0` exactly when `d = 1`, so equality is componentwise.
/// A rational value is compatible with every radicand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticScalar {
    x: Rational,
    y: Rational,
    d: u64,
}

impl QuadraticScalar {
    pub fn new(x: Rational, y: Rational, d: u64) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::Parse(format!("radicand {d} is not square-free")));
        }
        Ok(Self::normalized(x, y, d))
    }

    fn normalized(x: Rational, y: Rational, d: u64) -> Self {
        if d == 1 {
            QuadraticScalar { x: x + y, y: Rational::zero(), d: 1 }
        } else if y.is_zero() {
            QuadraticScalar { x, y, d: 1 }
        } else {
            QuadraticScalar { x, y, d }
        }
    }

    pub fn rational(x: Rational) -> Self {
        QuadraticScalar { x, y: Rational::zero(), d: 1 }
    }

    /// Exact `√q` for positive rational `q`.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        let (r, d) = sqrt_decompose(q)?;
        Ok(Self::normalized(Rational::zero(), r, d))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.x
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.y
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.x)
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(Error::MixedRadicands(a, b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.x + &other.x, &self.y + &other.y, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.x - &other.x, &self.y - &other.y, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dq = Rational::from_integer(BigInt::from(d));
        let x = &self.x * &other.x + &self.y * &other.y * dq;
        let y = &self.x * &other.y + &self.y * &other.x;
        Ok(Self::normalized(x, y, d))
    }

    /// `(x + y√d)⁻¹ = (x − y√d) / (x² − d·y²)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.norm();
        Ok(Self::normalized(&self.x / &norm, -(&self.y / &norm), self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.common_radicand(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Field norm `x² − d·y²`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - &self.y * &self.y * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Exact sign, decided by rational comparisons only.
    pub fn signum(&self) -> Ordering {
        let sx = self.x.cmp(&Rational::zero());
        let sy = self.y.cmp(&Rational::zero());
        match (sx, sy) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            // Opposite signs: the larger of x² and d·y² wins; they cannot tie.
            _ => {
                let x2 = &self.x * &self.x;
                let dy2 = &self.y * &self.y * Rational::from_integer(BigInt::from(self.d));
                if x2 > dy2 {
                    sx
                } else {
                    sy
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        if self.y.is_zero() {
            return x;
        }
        x + self.y.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

impl Display for QuadraticScalar {
    /// `<rat>` for rationals, else `<rat>(+|-)<rat>*sqrt(<d>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return f.write_str(&format_rational(&self.x));
        }
        let sign = if self.y.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", format_rational(&self.x), sign, format_rational(&self.y.abs()), self.d)
    }
}

impl Debug for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl FromStr for QuadraticScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix(')') else {
            return Ok(Self::rational(parse_rational(s)?));
        };
        let bad = || Error::Parse(format!("not a quadratic scalar: {s:?}"));
        let (head, d) = body.rsplit_once("*sqrt(").ok_or_else(bad)?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        // split at the sign that separates the two rationals (skip a leading sign)
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let x = parse_rational(&head[..split])?;
        let y = parse_rational(&head[split..])?;
        Self::new(x, y, d)
    }
}

impl Serialize for QuadraticScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $Trait<&'a QuadraticScalar> for &'a QuadraticScalar {
            type Output = QuadraticScalar;
            fn $method(self, rhs: &'a QuadraticScalar) -> QuadraticScalar {
                self.$checked(rhs).expect("quadratic scalars from different fields")
            }
        }
        impl<'a> $Trait<&'a QuadraticScalar> for QuadraticScalar {
            type Output = QuadraticScalar;
            fn $method(self, rhs: &'a QuadraticScalar) -> QuadraticScalar {
                (&self).$method(rhs)
            }
        }
        impl $Trait<QuadraticScalar> for QuadraticScalar {
            type Output = QuadraticScalar;
            fn $method(self, rhs: QuadraticScalar) -> QuadraticScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&QuadraticScalar> for QuadraticScalar {
    fn add_assign(&mut self, rhs: &QuadraticScalar) {
        *self = &*self + rhs;
    }
}

impl Neg for QuadraticScalar {
    type Output = QuadraticScalar;
    fn neg(self) -> QuadraticScalar {
        QuadraticScalar { x: -self.x, y: -self.y, d: self.d }
    }
}

/// Coefficient type of multivectors and matrices.
///
/// Implemented by [`QuadraticScalar`] (exact) and `f64` (binary64). Generic
/// routines take a tolerance which exact scalars ignore.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
{
    const EXACT: bool;

    fn zero() -> Self;

    fn one() -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_rational(&integer(value))
    }

    /// `√q` for `q > 0`.
    fn sqrt_rational(q: &Rational) -> Result<Self>;

    fn inverse(&self) -> Result<Self>;

    fn is_zero(&self) -> bool;

    /// Sign relative to zero.
    fn signum(&self) -> Ordering;

    fn to_f64(&self) -> f64;

    /// Exact strings for exact scalars, 17 significant digits otherwise.
    fn render(&self) -> String;

    /// Zero for exact scalars; `|x| ≤ tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }

    fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Compares `|self|` with `|other|`.
    fn cmp_abs(&self, other: &Self) -> Ordering {
        (self.abs() - &other.abs()).signum()
    }
}

impl Scalar for QuadraticScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn one() -> Self {
        Self::rational(Rational::one())
    }

    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }

    fn sqrt_rational(q: &Rational) -> Result<Self> {
        Self::sqrt_of(q)
    }

    fn inverse(&self) -> Result<Self> {
        QuadraticScalar::inverse(self)
    }

    fn is_zero(&self) -> bool {
        QuadraticScalar::is_zero(self)
    }

    fn signum(&self) -> Ordering {
        QuadraticScalar::signum(self)
    }

    fn to_f64(&self) -> f64 {
        QuadraticScalar::to_f64(self)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn sqrt_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::NonPositiveRadicand(format_rational(q)));
        }
        Ok(Self::from_rational(q).sqrt())
    }

    fn inverse(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn signum(&self) -> Ordering {
        self.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format_float(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// Integer `⌈√m⌉`.
pub fn ceil_sqrt(m: u64) -> u64 {
    let r = m.sqrt();
    if r * r == m {
        r
    } else {
        r + 1
    }
}

/// Whether `q` is the square of a rational.
pub fn is_rational_square(q: &Rational) -> bool {
    matches!(sqrt_decompose(q), Ok((_, 1)))
}
