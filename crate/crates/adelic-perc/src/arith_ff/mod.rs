//! Exact arithmetic for `F_q[t]`, the places of `P^1/F_q`, valuations, and
//! curve zeta functions as Euler products.

mod place;
mod poly;
mod zeta;

pub use place::{enumerate_irreducibles, nu_at_place, abs_at_place, product_formula_exponents, PlaceFF};
pub use poly::{FqField, Poly};
pub use zeta::{zeta_curve, ZetaMode};

use std::fmt;

/// Default cap on `q^max_degree` when sieving monic polynomials.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum FfError {
    /// Operands live over different fields.
    MismatchedFields,
    /// Division (or divmod) by the zero polynomial.
    DivisionByZero,
    /// Valuations of the zero polynomial are undefined.
    ZeroPolynomial,
    /// `q^max_degree` exceeds the enumeration budget.
    EnumerationBudget { candidates: u64, budget: u64 },
    /// Not a prime characteristic, or an invalid extension modulus.
    InvalidField(String),
    /// The polynomial handed to a finite place is not monic irreducible.
    InvalidPlace(String),
    /// The provided place list misses a divisor of the polynomial: the
    /// finite-place exponent sum fell short of `deg f` by this much.
    MissingDivisorPlace { missing_degree: i64 },
    /// No infinite place was provided to the product-formula check.
    NoInfinitePlace,
    /// Closed-form zeta evaluated at a pole of the rational expression.
    ZetaPole { s: f64 },
    /// Truncated Euler products require `s > 1`.
    ZetaNotConvergent { s: f64 },
    /// A nontrivial zeta numerator only makes sense in closed form.
    NumeratorNeedsClosedForm,
    /// Text form of a polynomial could not be parsed.
    Parse(String),
}

impl fmt::Display for FfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FfError::MismatchedFields => write!(f, "operands belong to different finite fields"),
            FfError::DivisionByZero => write!(f, "division by the zero polynomial"),
            FfError::ZeroPolynomial => write!(f, "valuation of the zero polynomial is undefined"),
            FfError::EnumerationBudget { candidates, budget } => write!(
                f,
                "enumeration would visit {candidates} candidates, over the budget of {budget}"
            ),
            FfError::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            FfError::InvalidPlace(msg) => write!(f, "invalid place: {msg}"),
            FfError::MissingDivisorPlace { missing_degree } => write!(
                f,
                "place list misses divisors of total degree {missing_degree}"
            ),
            FfError::NoInfinitePlace => write!(f, "no infinite place supplied"),
            FfError::ZetaPole { s } => write!(f, "zeta closed form has a pole at s = {s}"),
            FfError::ZetaNotConvergent { s } => {
                write!(f, "truncated Euler product needs s > 1, got s = {s}")
            }
            FfError::NumeratorNeedsClosedForm => {
                write!(f, "zeta numerator polynomials are only supported in closed form")
            }
            FfError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for FfError {}
