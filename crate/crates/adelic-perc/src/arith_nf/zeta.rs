//! Dedekind zeta as a truncated Euler product over prime ideals, and the
//! zero-free-region bound for the thresholds that divide by `ζ_K`.

use super::element::NumberField;
use super::places::{split_prime, PlaceNF};
use super::NfError;

/// Simple sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut m = p * p;
            while m <= n {
                sieve[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

/// Truncated Euler product `Π_{℘, p ≤ pmax, ℘ ∉ S} (1 − N(℘)^{−s})^{−1}`,
/// with the places over each rational prime obtained from [`split_prime`].
pub fn dedekind_zeta(
    field: NumberField,
    s: f64,
    pmax: u64,
    removed: &[PlaceNF],
) -> Result<f64, NfError> {
    if s <= 1.0 {
        return Err(NfError::ZetaNotConvergent { s });
    }
    let mut z = 1.0f64;
    for p in primes_up_to(pmax) {
        for place in split_prime(field, p)? {
            if removed.contains(&place) {
                continue;
            }
            let norm = place.non_arch().expect("split_prime yields finite places").ideal_norm();
            z /= 1.0 - (norm as f64).powf(-s);
        }
    }
    Ok(z)
}

/// Lower edge `β₀ = 1 − 1/(12.74·log|Δ_K|)` of the interval that may
/// contain a real zero of `ζ_K` (natural logarithm). `None` for `Q` and
/// any field of discriminant ±1, where no such zero interferes.
pub fn zero_free_beta0(field: NumberField) -> Option<f64> {
    let disc = field.discriminant().unsigned_abs();
    if disc <= 1 {
        return None;
    }
    Some(1.0 - 1.0 / (12.74 * (disc as f64).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_zeta_two() {
        let z = dedekind_zeta(NumberField::Rationals, 2.0, 100_000, &[]).unwrap();
        assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-4);
    }

    #[test]
    fn gauss_zeta_two_is_zeta_times_catalan_series() {
        let z = dedekind_zeta(NumberField::GaussQi, 2.0, 100_000, &[]).unwrap();
        // ζ_{Q(i)}(2) = ζ(2)·L(2, χ₋₄) = (π²/6)·G with G the Catalan constant
        let expected = std::f64::consts::PI.powi(2) / 6.0 * 0.915_965_594_177_219;
        assert!((z - expected).abs() < 1e-3, "z = {z}, expected ≈ {expected}");
    }

    #[test]
    fn removing_every_factor_gives_one() {
        let mut removed = Vec::new();
        for p in primes_up_to(50) {
            removed.extend(split_prime(NumberField::RealQuadSqrt2, p).unwrap());
        }
        let z = dedekind_zeta(NumberField::RealQuadSqrt2, 2.0, 50, &removed).unwrap();
        assert_eq!(z, 1.0);
    }

    #[test]
    fn convergence_requires_s_above_one() {
        assert_eq!(
            dedekind_zeta(NumberField::Rationals, 1.0, 100, &[]),
            Err(NfError::ZetaNotConvergent { s: 1.0 })
        );
    }

    #[test]
    fn zero_free_bounds() {
        assert_eq!(zero_free_beta0(NumberField::Rationals), None);
        let qi = zero_free_beta0(NumberField::GaussQi).unwrap();
        assert!((qi - (1.0 - 1.0 / (12.74 * 4f64.ln()))).abs() < 1e-12);
        assert!((qi - 0.943_379_3).abs() < 1e-6);
        let qs = zero_free_beta0(NumberField::RealQuadSqrt2).unwrap();
        assert!((qs - 0.962_252_9).abs() < 1e-6);
    }
}
