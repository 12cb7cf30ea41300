//! The three supported number fields and their ring-of-integers elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::NfError;

/// `Q`, `Q(i)`, or `Q(√2)`, with degree, signature `(r, s)` and
/// discriminant. All three have class number one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NumberField {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Qi")]
    GaussQi,
    #[serde(rename = "Qsqrt2")]
    RealQuadSqrt2,
}

impl NumberField {
    pub fn degree(self) -> u32 {
        match self {
            NumberField::Rationals => 1,
            NumberField::GaussQi | NumberField::RealQuadSqrt2 => 2,
        }
    }

    /// Signature `(r, s)`: real embeddings and conjugate pairs.
    pub fn signature(self) -> (u32, u32) {
        match self {
            NumberField::Rationals => (1, 0),
            NumberField::GaussQi => (0, 1),
            NumberField::RealQuadSqrt2 => (2, 0),
        }
    }

    pub fn discriminant(self) -> i64 {
        match self {
            NumberField::Rationals => 1,
            NumberField::GaussQi => -4,
            NumberField::RealQuadSqrt2 => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NumberField::Rationals => "Q",
            NumberField::GaussQi => "Q(i)",
            NumberField::RealQuadSqrt2 => "Q(√2)",
        }
    }
}

/// An element of `O_K`: `a` for `Q`, `a + b·i` for `Q(i)`, `a + b·√2`
/// for `Q(√2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NfElement {
    pub field: NumberField,
    #[serde(with = "bigint_serde")]
    pub a: BigInt,
    #[serde(with = "bigint_serde")]
    pub b: BigInt,
}

mod bigint_serde {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(n) => n.serialize(s),
            None => v.to_string().serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(BigInt::from(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl NfElement {
    pub fn new(field: NumberField, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        let b = b.into();
        debug_assert!(
            field != NumberField::Rationals || b.is_zero(),
            "rational elements have b = 0"
        );
        NfElement { field, a: a.into(), b }
    }

    pub fn rational(a: impl Into<BigInt>) -> Self {
        NfElement::new(NumberField::Rationals, a, 0)
    }

    pub fn zero(field: NumberField) -> Self {
        NfElement::new(field, 0, 0)
    }

    pub fn one(field: NumberField) -> Self {
        NfElement::new(field, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn check_same_field(&self, other: &NfElement) -> Result<(), NfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(NfError::MismatchedFields)
        }
    }

    pub fn add(&self, other: &NfElement) -> Result<NfElement, NfError> {
        self.check_same_field(other)?;
        Ok(NfElement::new(self.field, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn sub(&self, other: &NfElement) -> Result<NfElement, NfError> {
        self.check_same_field(other)?;
        Ok(NfElement::new(self.field, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn neg(&self) -> NfElement {
        NfElement::new(self.field, -&self.a, -&self.b)
    }

    pub fn mul(&self, other: &NfElement) -> Result<NfElement, NfError> {
        self.check_same_field(other)?;
        let (a, b, c, d) = (&self.a, &self.b, &other.a, &other.b);
        let (ra, rb) = match self.field {
            NumberField::Rationals => (a * c, BigInt::zero()),
            NumberField::GaussQi => (a * c - b * d, a * d + b * c),
            NumberField::RealQuadSqrt2 => (a * c + 2 * (b * d), a * d + b * c),
        };
        Ok(NfElement::new(self.field, ra, rb))
    }

    /// The conjugate over `Q` (identity on `Q` itself).
    pub fn conj(&self) -> NfElement {
        match self.field {
            NumberField::Rationals => self.clone(),
            _ => NfElement::new(self.field, self.a.clone(), -&self.b),
        }
    }

    /// Field norm `N_{K/Q}(x)` as an integer.
    pub fn norm(&self) -> BigInt {
        let (a, b) = (&self.a, &self.b);
        match self.field {
            NumberField::Rationals => a.clone(),
            NumberField::GaussQi => a * a + b * b,
            NumberField::RealQuadSqrt2 => a * a - 2 * (b * b),
        }
    }

    /// Exact division: `self / d` if `d` divides `self` in `O_K`.
    pub fn checked_div(&self, d: &NfElement) -> Option<NfElement> {
        self.check_same_field(d).ok()?;
        if d.is_zero() {
            return None;
        }
        // x/d = x·conj(d)/N(d); exact iff both coordinates divide
        let num = self.mul(&d.conj()).ok()?;
        let nd = d.norm();
        let (qa, ra) = num_integer::Integer::div_rem(&num.a, &nd);
        let (qb, rb) = num_integer::Integer::div_rem(&num.b, &nd);
        if ra.is_zero() && rb.is_zero() {
            Some(NfElement::new(self.field, qa, qb))
        } else {
            None
        }
    }

    /// Minkowski embedding: `(a)` for `Q`, `(a, b)` (re/im of the complex
    /// embedding) for `Q(i)`, `(a + b√2, a − b√2)` for `Q(√2)`.
    pub fn minkowski(&self) -> Vec<f64> {
        let a = bigint_f64(&self.a);
        let b = bigint_f64(&self.b);
        match self.field {
            NumberField::Rationals => vec![a],
            NumberField::GaussQi => vec![a, b],
            NumberField::RealQuadSqrt2 => {
                let s = std::f64::consts::SQRT_2;
                vec![a + b * s, a - b * s]
            }
        }
    }

    /// Absolute values at the Archimedean places, one entry per place
    /// (real embeddings first, then one modulus per conjugate pair).
    pub fn arch_abs(&self) -> Vec<f64> {
        let mink = self.minkowski();
        match self.field {
            NumberField::Rationals => vec![mink[0].abs()],
            NumberField::GaussQi => vec![mink[0].hypot(mink[1])],
            NumberField::RealQuadSqrt2 => vec![mink[0].abs(), mink[1].abs()],
        }
    }
}

fn bigint_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(if v.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            NumberField::Rationals => write!(f, "{}", self.a),
            NumberField::GaussQi => write!(f, "{}{:+}i", self.a, self.b),
            NumberField::RealQuadSqrt2 => write!(f, "{}{:+}√2", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_examples() {
        assert_eq!(NfElement::rational(5).minkowski(), vec![5.0]);
        assert_eq!(NfElement::new(NumberField::GaussQi, 3, 4).minkowski(), vec![3.0, 4.0]);
        let m = NfElement::new(NumberField::RealQuadSqrt2, 1, 2).minkowski();
        assert!((m[0] - 3.828_427_124_746_190_3).abs() < 1e-12);
        assert!((m[1] + 1.828_427_124_746_190_3).abs() < 1e-12);
    }

    #[test]
    fn norms_and_conjugates() {
        let z = NfElement::new(NumberField::GaussQi, 3, 4);
        assert_eq!(z.norm(), BigInt::from(25));
        assert_eq!(z.mul(&z.conj()).unwrap(), NfElement::new(NumberField::GaussQi, 25, 0));
        let w = NfElement::new(NumberField::RealQuadSqrt2, 1, 1);
        assert_eq!(w.norm(), BigInt::from(-1)); // 1 + √2 is a unit
    }

    #[test]
    fn exact_division() {
        let two = NfElement::new(NumberField::GaussQi, 2, 0);
        let onei = NfElement::new(NumberField::GaussQi, 1, 1);
        let q = two.checked_div(&onei).unwrap();
        assert_eq!(q, NfElement::new(NumberField::GaussQi, 1, -1));
        assert!(NfElement::new(NumberField::GaussQi, 3, 0).checked_div(&onei).is_none());
    }

    #[test]
    fn arch_abs_modulus() {
        let z = NfElement::new(NumberField::GaussQi, 3, 4);
        assert_eq!(z.arch_abs(), vec![5.0]);
        let w = NfElement::new(NumberField::RealQuadSqrt2, 1, 0);
        assert_eq!(w.arch_abs(), vec![1.0, 1.0]);
    }

    #[test]
    fn json_matches_contract() {
        let z = NfElement::new(NumberField::GaussQi, 3, 4);
        let json = serde_json::to_value(&z).unwrap();
        assert_eq!(json, serde_json::json!({"field": "Qi", "a": 3, "b": 4}));
        let back: NfElement = serde_json::from_value(json).unwrap();
        assert_eq!(back, z);
    }
}
