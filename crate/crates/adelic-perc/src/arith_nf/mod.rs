//! Arithmetic for the number fields `Q`, `Q(i)`, `Q(√2)`: Minkowski
//! embeddings, prime splitting, non-Archimedean valuations, p-adic
//! expansions, Bruhat–Tits bifurcation depths, and the Dedekind zeta
//! function.
//!
//! All three fields have class number one, so every valuation is computed
//! by repeated exact division by a generator of the prime.

mod element;
mod padic;
mod places;
mod zeta;

pub use element::{NfElement, NumberField};
pub use padic::{dperp, padic_expansion, PadicExpansion};
pub use places::{
    abs_nu, arch_places, product_formula_nf, split_prime, transversality_check,
    transverse_vectors, v_nu, v_nu_via_hensel, ArchPlace, NfAbs, NonArchPlace, PlaceNF,
};
pub use zeta::{dedekind_zeta, primes_up_to, zero_free_beta0};

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum NfError {
    MismatchedFields,
    /// Valuations and expansions of zero are undefined.
    ZeroElement,
    NotPrime(u64),
    /// An Archimedean place was supplied where a finite one is required,
    /// or vice versa.
    WrongPlaceKind,
    /// The place belongs to a different field than the element.
    PlaceFieldMismatch,
    /// `pmax` does not cover all primes dividing the norm; the leftover
    /// factor of `|N(x)|` is reported.
    PmaxTooSmall { leftover: u64 },
    /// The digit budget did not expose the eventually periodic tail.
    MaxDigitsInsufficient,
    /// `dperp` of equal points is undefined.
    EqualPoints,
    /// `s ≤ 1` in truncated Euler-product mode.
    ZetaNotConvergent { s: f64 },
    Parse(String),
}

impl fmt::Display for NfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfError::MismatchedFields => write!(f, "elements of different number fields"),
            NfError::ZeroElement => write!(f, "operation undefined at zero"),
            NfError::NotPrime(p) => write!(f, "{p} is not prime"),
            NfError::WrongPlaceKind => write!(f, "wrong place kind for this operation"),
            NfError::PlaceFieldMismatch => write!(f, "place belongs to a different field"),
            NfError::PmaxTooSmall { leftover } => {
                write!(f, "pmax misses norm factor {leftover}")
            }
            NfError::MaxDigitsInsufficient => write!(f, "max_digits too small to expose the period"),
            NfError::EqualPoints => write!(f, "bifurcation depth of equal points is undefined"),
            NfError::ZetaNotConvergent { s } => {
                write!(f, "truncated Euler product needs s > 1, got s = {s}")
            }
            NfError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for NfError {}
