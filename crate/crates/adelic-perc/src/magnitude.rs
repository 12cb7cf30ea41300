//! Exact positive magnitudes of the form `base^exponent`.
//!
//! Valuations produce quantities like `q^{-(1+α)ν}` whose floating-point
//! images underflow long before the arithmetic becomes interesting, so all
//! non-Archimedean absolute values and kernels are carried as an integer
//! base together with an exact rational exponent. Conversion to `f64`
//! happens only at the sampler boundary.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A positive quantity `base^exponent` with `base ≥ 2` an integer and the
/// exponent an exact rational.
///
/// The base is kept in canonical form: it is never a perfect power. This
/// makes magnitudes with bases `2` and `4` directly comparable (`4^e` is
/// stored as `2^{2e}`), which the dimension-reduction identity of the
/// hierarchical lattice relies on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMagnitude {
    base: u64,
    exponent: BigRational,
}

/// Largest integer `b` with `b^k = n`, searched from large `k` down.
fn canonical_root(n: u64) -> (u64, u32) {
    debug_assert!(n >= 2);
    for k in (2..=63u32).rev() {
        let b = (n as f64).powf(1.0 / f64::from(k)).round() as u64;
        if b >= 2 && b.checked_pow(k) == Some(n) {
            let (inner, j) = canonical_root(b);
            return (inner, j * k);
        }
    }
    (n, 1)
}

impl ExactMagnitude {
    /// `base^exponent` with the base reduced to canonical (non-power) form.
    ///
    /// Panics if `base < 2`.
    pub fn new(base: u64, exponent: BigRational) -> Self {
        assert!(base >= 2, "ExactMagnitude base must be at least 2");
        let (root, k) = canonical_root(base);
        let exponent = exponent * BigRational::from_integer(BigInt::from(k));
        ExactMagnitude { base: root, exponent }
    }

    /// `base^e` for an integer exponent.
    pub fn from_int_exp(base: u64, e: i64) -> Self {
        Self::new(base, BigRational::from_integer(BigInt::from(e)))
    }

    /// The multiplicative unit, represented as `2^0`.
    pub fn one() -> Self {
        Self::from_int_exp(2, 0)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn exponent(&self) -> &BigRational {
        &self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    /// Exact product. Errors when the canonical bases differ and neither
    /// side is the unit, since `2^a · 3^b` has no exact single-base form.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, BaseMismatch> {
        if self.exponent.is_zero() {
            return Ok(other.clone());
        }
        if other.exponent.is_zero() {
            return Ok(self.clone());
        }
        if self.base != other.base {
            return Err(BaseMismatch {
                left: self.base,
                right: other.base,
            });
        }
        Ok(ExactMagnitude {
            base: self.base,
            exponent: &self.exponent + &other.exponent,
        })
    }

    /// Exact quotient, with the same base rules as [`checked_mul`].
    ///
    /// [`checked_mul`]: Self::checked_mul
    pub fn checked_div(&self, other: &Self) -> Result<Self, BaseMismatch> {
        self.checked_mul(&other.clone().recip())
    }

    pub fn recip(mut self) -> Self {
        self.exponent = -self.exponent;
        self
    }

    /// Raises to an exact rational power.
    pub fn pow_rational(&self, r: &BigRational) -> Self {
        ExactMagnitude {
            base: self.base,
            exponent: &self.exponent * r,
        }
    }

    /// Raises to an `f64` power, exactly. Every finite `f64` is a dyadic
    /// rational, so this loses nothing; it is how real parameters such as
    /// `α` enter exponents.
    pub fn pow_f64(&self, r: f64) -> Self {
        let r = BigRational::from_float(r).expect("finite exponent");
        self.pow_rational(&r)
    }

    /// Conversion at the evaluation boundary.
    pub fn to_f64(&self) -> f64 {
        let e = rational_to_f64(&self.exponent);
        (self.base as f64).ln().mul_add(e, 0.0).exp()
    }

    /// `log` of the magnitude in the given base, as an exact rational when
    /// the bases agree.
    pub fn log_in_base(&self, base: u64) -> Option<BigRational> {
        let (root, k) = canonical_root(base);
        if root != self.base && !self.exponent.is_zero() {
            return None;
        }
        Some(&self.exponent / BigRational::from_integer(BigInt::from(k)))
    }

    /// Total order by value. Falls back to logarithms in `f64` when the
    /// canonical bases differ.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.base == other.base {
            return self.exponent.cmp(&other.exponent);
        }
        let a = (self.base as f64).ln() * rational_to_f64(&self.exponent);
        let b = (other.base as f64).ln() * rational_to_f64(&other.exponent);
        a.partial_cmp(&b).unwrap_or(Ordering::Equal)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

impl fmt::Display for ExactMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            return write!(f, "1");
        }
        if self.exponent.is_integer() && !self.exponent.is_negative() {
            if let Some(e) = self.exponent.to_i64() {
                if e <= 16 {
                    return write!(f, "{}", (self.base as i128).pow(e as u32));
                }
            }
        }
        if self.exponent.is_one() {
            return write!(f, "{}", self.base);
        }
        write!(f, "{}^({})", self.base, self.exponent)
    }
}

/// Two magnitudes with incompatible canonical bases were combined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMismatch {
    pub left: u64,
    pub right: u64,
}

impl fmt::Display for BaseMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot combine magnitudes with bases {} and {} exactly",
            self.left, self.right
        )
    }
}

impl std::error::Error for BaseMismatch {}
