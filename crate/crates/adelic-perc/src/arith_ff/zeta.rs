//! The zeta function of a curve over `F_q` as an Euler product over places,
//! in truncated and closed rational form.

use super::place::{enumerate_irreducibles_with_budget, PlaceFF};
use super::poly::FqField;
use super::{FfError, DEFAULT_ENUMERATION_BUDGET};

/// Evaluation strategy for [`zeta_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaMode {
    /// Truncated Euler product over the infinite place and the finite
    /// places of degree `≤ max_degree` of `P^1`. Requires `s > 1`.
    Truncated { max_degree: u32 },
    /// Rational closed form `P(C, q^{−s}) / ((1−q^{−s})(1−q^{1−s}))`,
    /// valid wherever the denominator is nonzero.
    Closed,
}

/// `Z(C, s)` with the Euler factors of `removed` places divided out:
/// the closed form (or truncated product) times `Π_{x∈S} (1 − q^{−s·deg x})`.
///
/// `numerator` holds the integer coefficients of `P(C, T)` (lowest first);
/// pass `&[1]` for genus zero. A nontrivial numerator is only meaningful in
/// closed form, since the truncated product enumerates the places of `P^1`.
pub fn zeta_curve(
    field: &FqField,
    s: f64,
    mode: ZetaMode,
    numerator: &[i64],
    removed: &[PlaceFF],
) -> Result<f64, FfError> {
    let q = f64::from(field.q());
    let trivial_numerator = numerator == [1] || numerator.is_empty();
    match mode {
        ZetaMode::Truncated { max_degree } => {
            if !trivial_numerator {
                return Err(FfError::NumeratorNeedsClosedForm);
            }
            if s <= 1.0 {
                return Err(FfError::ZetaNotConvergent { s });
            }
            let mut z = 1.0;
            if !removed.iter().any(|p| p.is_infinite()) {
                z /= 1.0 - q.powf(-s); // the rational point at infinity
            }
            let places = enumerate_irreducibles_with_budget(
                field,
                max_degree,
                DEFAULT_ENUMERATION_BUDGET,
            )?;
            for place in &places {
                if removed.contains(place) {
                    continue;
                }
                z /= 1.0 - q.powf(-s * f64::from(place.degree()));
            }
            Ok(z)
        }
        ZetaMode::Closed => {
            let t = q.powf(-s);
            let denom = (1.0 - q.powf(-s)) * (1.0 - q.powf(1.0 - s));
            if denom.abs() < 1e-300 {
                return Err(FfError::ZetaPole { s });
            }
            let mut num = 0.0;
            for &c in numerator.iter().rev() {
                num = num * t + c as f64;
            }
            if trivial_numerator {
                num = 1.0;
            }
            let mut z = num / denom;
            for place in removed {
                z *= 1.0 - q.powf(-s * f64::from(place.degree()));
            }
            Ok(z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith_ff::Poly;

    fn f2() -> FqField {
        FqField::prime(2).unwrap()
    }

    #[test]
    fn closed_form_genus_zero() {
        let z = zeta_curve(&f2(), 2.0, ZetaMode::Closed, &[1], &[]).unwrap();
        assert!((z - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn truncated_converges_to_closed_form() {
        let z = zeta_curve(&f2(), 2.0, ZetaMode::Truncated { max_degree: 16 }, &[1], &[]).unwrap();
        assert!((z - 8.0 / 3.0).abs() < 1e-3);
    }

    #[test]
    fn removed_factors() {
        let f = f2();
        let removed = vec![
            PlaceFF::finite(Poly::parse(&f, "0,1").unwrap()).unwrap(),
            PlaceFF::finite(Poly::parse(&f, "1,1").unwrap()).unwrap(),
        ];
        let z = zeta_curve(&f, 2.0, ZetaMode::Closed, &[1], &removed).unwrap();
        assert!((z - 1.5).abs() < 1e-14); // (8/3)·(3/4)²
    }

    #[test]
    fn poles_are_reported() {
        assert_eq!(
            zeta_curve(&f2(), 1.0, ZetaMode::Closed, &[1], &[]),
            Err(FfError::ZetaPole { s: 1.0 })
        );
        assert_eq!(
            zeta_curve(&f2(), 0.0, ZetaMode::Closed, &[1], &[]),
            Err(FfError::ZetaPole { s: 0.0 })
        );
    }

    #[test]
    fn numerator_polynomial_scales_closed_form() {
        // a fictitious genus-1 numerator P(T) = 1 + 2T² (structural check)
        let z0 = zeta_curve(&f2(), 2.0, ZetaMode::Closed, &[1], &[]).unwrap();
        let z1 = zeta_curve(&f2(), 2.0, ZetaMode::Closed, &[1, 0, 2], &[]).unwrap();
        let t: f64 = 0.25;
        assert!((z1 / z0 - (1.0 + 2.0 * t * t)).abs() < 1e-12);
        assert_eq!(
            zeta_curve(&f2(), 2.0, ZetaMode::Truncated { max_degree: 4 }, &[1, 0, 2], &[]),
            Err(FfError::NumeratorNeedsClosedForm)
        );
    }
}
