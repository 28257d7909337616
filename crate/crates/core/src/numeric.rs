//! Scalar foundations shared by every other module.
//!
//! Two scalar kinds are supported and never mixed inside one operation:
//! IEEE `f64` for evaluation-grade work and arbitrary-precision rationals
//! for decision-grade work. The [`Scalar`] trait is the small surface the
//! rest of the crate programs against.
//!
//! The quantities computed here:
//!
//! * rising factorial  `(v)_n = v (v+1) ... (v+n-1)`, with `(v)_0 = 1`;
//! * Dirichlet log-normalizer  `log c(alpha) = lgamma(sum alpha_j) - sum_j
//!   lgamma(alpha_j)`, so that the density on the open simplex is
//!   `c(alpha) * prod x_j^(alpha_j - 1)`;
//! * exact monomial moments  `E[x^m] = prod_j (alpha_j)_{m_j} /
//!   (alpha_+)_{|m|}` under a Dirichlet with rational parameters.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DirimixError, Result};
use crate::tol;

/// Arbitrary-precision rational scalar. Always stored in lowest terms with a
/// positive denominator (the backing type normalizes on construction).
pub type Rational = num_rational::BigRational;

/// Operations every scalar kind must support. `f64` is the evaluation kind;
/// [`Rational`] is the exact kind. The flag `EXACT` lets shared code pick
/// between exact comparisons and tolerance-based ones without mixing kinds.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;

    /// Strictly positive, and finite for the float kind.
    fn is_positive_finite(&self) -> bool;

    /// Nearest integer if this scalar is within `eps` of one (exact kind:
    /// integral or nothing, `eps` ignored). Used by congruence partitioning.
    fn to_integer_within(&self, eps: f64) -> Option<i64>;

    /// Lossy numeric view for reporting and float-path formulas.
    fn approx_f64(&self) -> f64;

    /// Whether a sum of mixture weights counts as 1 for this kind.
    fn sums_to_one(sum: &Self) -> bool;

    /// Whether two atom coordinate slices describe the same support point
    /// (exact equality, or sup-norm within [`tol::ATOM_MERGE`] for floats).
    fn same_atom(a: &[Self], b: &[Self]) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn is_positive_finite(&self) -> bool {
        self.is_finite() && *self > 0.0
    }

    fn to_integer_within(&self, eps: f64) -> Option<i64> {
        let r = self.round();
        if (self - r).abs() <= eps && r.abs() < 2_f64.powi(53) {
            Some(r as i64)
        } else {
            None
        }
    }

    fn approx_f64(&self) -> f64 {
        *self
    }

    fn sums_to_one(sum: &Self) -> bool {
        (sum - 1.0).abs() <= tol::WEIGHT_SUM
    }

    fn same_atom(a: &[Self], b: &[Self]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x - y).abs() <= tol::ATOM_MERGE)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn is_positive_finite(&self) -> bool {
        self.is_positive()
    }

    fn to_integer_within(&self, _eps: f64) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn approx_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn sums_to_one(sum: &Self) -> bool {
        sum.is_one()
    }

    fn same_atom(a: &[Self], b: &[Self]) -> bool {
        a == b
    }
}

/// Correctly handles ratios whose numerator and denominator are both far
/// outside the double range (where a naive `num/den` division would produce
/// `inf/inf`). Falls back to a mantissa shift when the backing conversion
/// declines.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if !v.is_nan() {
            return v;
        }
    }
    if r.is_zero() {
        return 0.0;
    }
    let (num, den) = (r.numer(), r.denom());
    let shift_n = num.bits().saturating_sub(64) as i64;
    let shift_d = den.bits().saturating_sub(64) as i64;
    let n = (num >> shift_n as u64).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift_d as u64).to_f64().unwrap_or(f64::NAN);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Exact conversion of a finite double into a rational (every finite double
/// is a dyadic rational). Errors on NaN or infinity.
pub fn f64_to_rational(x: f64) -> Result<Rational> {
    Rational::from_float(x)
        .ok_or_else(|| DirimixError::InvalidParameter(format!("{x} is not a finite number")))
}

/// An ordered vector of strictly positive scalars of dimension J >= 2: the
/// parameter vector of every kernel family in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveVector<T: Scalar>(Vec<T>);

impl<T: Scalar> PositiveVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(DirimixError::DimensionMismatch(format!(
                "parameter vector needs dimension >= 2, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !e.is_positive_finite()) {
            return Err(DirimixError::InvalidParameter(format!(
                "parameter entries must be strictly positive and finite, got {bad}"
            )));
        }
        Ok(PositiveVector(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn get(&self, j: usize) -> &T {
        &self.0[j]
    }

    pub fn sum(&self) -> T {
        self.0
            .iter()
            .fold(T::zero(), |acc, x| acc + x.clone())
    }

    /// The vector with 1 added to coordinate `j` (a unit shift).
    pub fn add_unit(&self, j: usize) -> Result<Self> {
        if j >= self.0.len() {
            return Err(DirimixError::DimensionMismatch(format!(
                "unit shift index {j} out of range for dimension {}",
                self.0.len()
            )));
        }
        let mut entries = self.0.clone();
        entries[j] = entries[j].clone() + T::one();
        Ok(PositiveVector(entries))
    }

    pub fn approx_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::approx_f64).collect()
    }
}

impl PositiveVector<Rational> {
    /// Lossy float view of an exact parameter vector.
    pub fn to_float(&self) -> PositiveVector<f64> {
        PositiveVector(self.0.iter().map(rational_to_f64).collect())
    }
}

impl PositiveVector<f64> {
    /// Exact rational view of a float parameter vector (doubles are dyadic
    /// rationals, so nothing is lost).
    pub fn to_exact(&self) -> PositiveVector<Rational> {
        PositiveVector(
            self.0
                .iter()
                .map(|x| Rational::from_float(*x).expect("entries are finite by construction"))
                .collect(),
        )
    }
}

/// A vector of nonnegative integer exponents. Its order is the sum of the
/// entries. Lexicographic `Ord` makes it usable as a deterministic map key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// Total order |m| = sum of the entries.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Coordinate-wise difference `self - other` if it is nonnegative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.0.len() != other.0.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rising factorial `(v)_n`. The exact kind never overflows; the float kind
/// reports a range error when the product leaves the finite range.
pub fn rising_factorial<T: Scalar>(v: &T, n: u32) -> Result<T> {
    if !T::EXACT && !v.approx_f64().is_finite() {
        return Err(DirimixError::Range(format!(
            "rising factorial of non-finite base {v}"
        )));
    }
    let mut acc = T::one();
    for k in 0..n {
        acc = acc * (v.clone() + T::from_u64(u64::from(k)));
        if !T::EXACT && !acc.approx_f64().is_finite() {
            return Err(DirimixError::Range(format!(
                "rising factorial ({v})_{n} overflows fixed precision"
            )));
        }
    }
    Ok(acc)
}

/// Natural log of the gamma function. Single choke point so the whole crate
/// shares one implementation.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Log of the Dirichlet normalizing constant,
/// `log c(alpha) = lgamma(alpha_+) - sum_j lgamma(alpha_j)`.
pub fn log_normalizer(alpha: &PositiveVector<f64>) -> f64 {
    let total: f64 = alpha.entries().iter().sum();
    ln_gamma(total) - alpha.entries().iter().map(|&a| ln_gamma(a)).sum::<f64>()
}

/// Exact Dirichlet monomial moment
/// `E[x^m] = prod_j (alpha_j)_{m_j} / (alpha_+)_{|m|}`.
pub fn dirichlet_moment(alpha: &PositiveVector<Rational>, m: &MultiIndex) -> Result<Rational> {
    if alpha.dim() != m.len() {
        return Err(DirimixError::DimensionMismatch(format!(
            "moment exponent has length {} but parameter has dimension {}",
            m.len(),
            alpha.dim()
        )));
    }
    let mut numer = Rational::one();
    for (a, &e) in alpha.entries().iter().zip(m.entries()) {
        numer = numer * rising_factorial(a, e)?;
    }
    let denom = rising_factorial(&alpha.sum(), m.order())?;
    Ok(numer / denom)
}

/// `n!` as a big integer.
pub(crate) fn big_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=u64::from(n) {
        acc *= k;
    }
    acc
}

/// Multinomial coefficient `total! / prod_j parts_j!`; requires the parts to
/// sum to `total`.
pub(crate) fn multinomial_coefficient(total: u32, parts: &[u32]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<u32>(), total);
    let mut acc = big_factorial(total);
    for &p in parts {
        acc /= big_factorial(p);
    }
    acc
}
