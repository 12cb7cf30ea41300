//! `F_q` and the polynomial ring `F_q[t]`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::FfError;

/// A finite field `F_q` with `q = p^r ≤ 256`.
///
/// Prime fields compute directly mod `p`. Extension fields are backed by a
/// precomputed `q × q` multiplication table built from a monic irreducible
/// modulus over `F_p`; elements are base-`p` digit encodings of residue
/// polynomials. Cloning is cheap (shared representation).
#[derive(Debug, Clone)]
pub struct FqField {
    repr: Arc<FieldRepr>,
}

#[derive(Debug)]
struct FieldRepr {
    p: u32,
    r: u32,
    q: u32,
    /// Coefficients of the monic irreducible modulus, lowest first,
    /// including the leading 1. Absent for prime fields.
    modulus: Option<Vec<u8>>,
    /// Row-major `q × q` multiplication table for extension fields.
    mul_table: Option<Vec<u8>>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplies two coefficient vectors over `F_p`.
fn fp_poly_mul(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u32::from(ai) * u32::from(bj)) % p;
        }
    }
    out.into_iter().map(|c| c as u8).collect()
}

/// Remainder of `a` by monic `m` over `F_p`.
fn fp_poly_rem(a: &[u8], m: &[u8], p: u32) -> Vec<u8> {
    let dm = m.len() - 1;
    let mut rem: Vec<u32> = a.iter().map(|&c| u32::from(c)).collect();
    while rem.len() > dm {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - dm;
        if lead != 0 {
            for (k, &mc) in m.iter().enumerate() {
                let idx = shift + k;
                rem[idx] = (rem[idx] + p * p - lead * u32::from(mc) % p) % p;
            }
        }
        rem.pop();
    }
    while rem.last() == Some(&0) {
        rem.pop();
    }
    rem.into_iter().map(|c| c as u8).collect()
}

/// Trial division over `F_p`: is the monic coefficient vector irreducible?
fn fp_monic_irreducible(m: &[u8], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    // divisors of degree k are monic, enumerated by their lower k coefficients
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                div.push((c % u64::from(p)) as u8);
                c /= u64::from(p);
            }
            div.push(1);
            if fp_poly_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FqField {
    /// The prime field `F_p`, `p ≤ 256`.
    pub fn prime(p: u32) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::InvalidField(format!("{p} is not prime")));
        }
        if p > 256 {
            return Err(FfError::InvalidField(format!("p = {p} exceeds the q ≤ 256 cap")));
        }
        Ok(FqField {
            repr: Arc::new(FieldRepr {
                p,
                r: 1,
                q: p,
                modulus: None,
                mul_table: None,
            }),
        })
    }

    /// The extension field `F_{p^r}` defined by a monic irreducible modulus
    /// over `F_p` (coefficients lowest first, degree `r`, leading 1
    /// included). Builds the `q × q` multiplication table.
    pub fn extension(p: u32, modulus: Vec<u8>) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 3 || *modulus.last().unwrap() != 1 {
            return Err(FfError::InvalidField(
                "modulus must be monic of degree at least 2".into(),
            ));
        }
        if modulus.iter().any(|&c| u32::from(c) >= p) {
            return Err(FfError::InvalidField("modulus coefficient out of range".into()));
        }
        let r = (modulus.len() - 1) as u32;
        let q = (p as u64).pow(r);
        if q > 256 {
            return Err(FfError::InvalidField(format!("q = {q} exceeds the q ≤ 256 cap")));
        }
        if !fp_monic_irreducible(&modulus, p) {
            return Err(FfError::InvalidField("modulus is reducible".into()));
        }
        let q = q as u32;
        let decode = |v: u32| -> Vec<u8> {
            let mut digits = Vec::with_capacity(r as usize);
            let mut v = v;
            for _ in 0..r {
                digits.push((v % p) as u8);
                v /= p;
            }
            while digits.last() == Some(&0) {
                digits.pop();
            }
            digits
        };
        let encode = |cs: &[u8]| -> u32 { cs.iter().rev().fold(0u32, |acc, &c| acc * p + u32::from(c)) };
        let mut table = vec![0u8; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let prod = fp_poly_rem(&fp_poly_mul(&decode(a), &decode(b), p), &modulus, p);
                table[(a * q + b) as usize] = encode(&prod) as u8;
            }
        }
        Ok(FqField {
            repr: Arc::new(FieldRepr {
                p,
                r,
                q,
                modulus: Some(modulus),
                mul_table: Some(table),
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.repr.p
    }

    pub fn r(&self) -> u32 {
        self.repr.r
    }

    pub fn q(&self) -> u32 {
        self.repr.q
    }

    pub fn modulus(&self) -> Option<&[u8]> {
        self.repr.modulus.as_deref()
    }

    pub fn el_add(&self, a: u8, b: u8) -> u8 {
        let r = &*self.repr;
        if r.r == 1 {
            ((u32::from(a) + u32::from(b)) % r.p) as u8
        } else {
            // digitwise mod-p addition
            let mut out = 0u32;
            let (mut a, mut b) = (u32::from(a), u32::from(b));
            let mut scale = 1;
            for _ in 0..r.r {
                out += scale * ((a + b) % r.p);
                a /= r.p;
                b /= r.p;
                scale *= r.p;
            }
            out as u8
        }
    }

    pub fn el_neg(&self, a: u8) -> u8 {
        let r = &*self.repr;
        if r.r == 1 {
            ((r.p - u32::from(a)) % r.p) as u8
        } else {
            let mut out = 0u32;
            let mut a = u32::from(a);
            let mut scale = 1;
            for _ in 0..r.r {
                out += scale * ((r.p - a % r.p) % r.p);
                a /= r.p;
                scale *= r.p;
            }
            out as u8
        }
    }

    pub fn el_sub(&self, a: u8, b: u8) -> u8 {
        self.el_add(a, self.el_neg(b))
    }

    pub fn el_mul(&self, a: u8, b: u8) -> u8 {
        let r = &*self.repr;
        match &r.mul_table {
            None => ((u32::from(a) * u32::from(b)) % r.p) as u8,
            Some(t) => t[(u32::from(a) * r.q + u32::from(b)) as usize],
        }
    }

    /// Multiplicative inverse of a nonzero element, by exhaustive search
    /// (q ≤ 256).
    pub fn el_inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        for b in 1..self.repr.q {
            if self.el_mul(a, b as u8) == 1 {
                return b as u8;
            }
        }
        unreachable!("nonzero element of a field has an inverse")
    }

    pub fn same_field(&self, other: &FqField) -> bool {
        self == other
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.repr.p == other.repr.p
            && self.repr.r == other.repr.r
            && self.repr.modulus == other.repr.modulus
    }
}

impl Eq for FqField {}

impl Hash for FqField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.p.hash(state);
        self.repr.r.hash(state);
        self.repr.modulus.hash(state);
    }
}

/// A polynomial over `F_q`, coefficients lowest degree first, normalized so
/// the last coefficient is nonzero. The zero polynomial has an empty
/// coefficient list and degree "minus infinity" (`degree()` is `None`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FqField,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(field: FqField, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| u32::from(c) < field.q()));
        Poly { field, coeffs }
    }

    pub fn zero(field: FqField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: FqField, c: u8) -> Self {
        Poly::new(field, vec![c])
    }

    /// The monomial `t`.
    pub fn t(field: FqField) -> Self {
        Poly::new(field, vec![0, 1])
    }

    /// Parses the text form: comma-separated coefficient integers, lowest
    /// degree first, e.g. `"1,0,1"` for `1 + t²`. An empty string is the
    /// zero polynomial.
    pub fn parse(field: &FqField, text: &str) -> Result<Self, FfError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Poly::zero(field.clone()));
        }
        let mut coeffs = Vec::new();
        for part in text.split(',') {
            let v: u32 = part
                .trim()
                .parse()
                .map_err(|_| FfError::Parse(format!("bad coefficient {part:?}")))?;
            if v >= field.q() {
                return Err(FfError::Parse(format!(
                    "coefficient {v} out of range for q = {}",
                    field.q()
                )));
            }
            coeffs.push(v as u8);
        }
        Ok(Poly::new(field.clone(), coeffs))
    }

    /// Text form, inverse of [`Poly::parse`].
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Integer encoding `Σ c_i q^i`; pairs with degree to give the
    /// deterministic (degree, lexicographic) ordering of outputs.
    pub fn value_code(&self) -> u64 {
        let q = u64::from(self.field.q());
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + u64::from(c))
    }

    fn check_field(&self, other: &Poly) -> Result<(), FfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FfError::MismatchedFields)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, FfError> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.el_add(self.coeff(i), other.coeff(i)));
        }
        Ok(Poly::new(self.field.clone(), out))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, FfError> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.el_sub(self.coeff(i), other.coeff(i)));
        }
        Ok(Poly::new(self.field.clone(), out))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, FfError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field.clone()));
        }
        let mut out = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = self.field.el_mul(a, b);
                out[i + j] = self.field.el_add(out[i + j], prod);
            }
        }
        Ok(Poly::new(self.field.clone(), out))
    }

    pub fn scale(&self, c: u8) -> Poly {
        let out = self.coeffs.iter().map(|&a| self.field.el_mul(a, c)).collect();
        Poly::new(self.field.clone(), out)
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), FfError> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(self.field.clone()), self.clone()));
        }
        let lead_inv = self.field.el_inv(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; rem.len() - dd];
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if lead != 0 {
                let factor = self.field.el_mul(lead, lead_inv);
                quot[shift] = factor;
                for (k, &dc) in divisor.coeffs.iter().enumerate() {
                    let sub = self.field.el_mul(factor, dc);
                    rem[shift + k] = self.field.el_sub(rem[shift + k], sub);
                }
            }
            rem.pop();
        }
        Ok((
            Poly::new(self.field.clone(), quot),
            Poly::new(self.field.clone(), rem),
        ))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, FfError> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        if let Some(&lead) = a.coeffs.last() {
            if lead != 1 {
                a = a.scale(a.field.el_inv(lead));
            }
        }
        Ok(a)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// (degree, value) ordering; only meaningful within one field.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.coeffs.len(), self.value_code()).cmp(&(other.coeffs.len(), other.value_code()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FqField {
        FqField::prime(2).unwrap()
    }

    fn f3() -> FqField {
        FqField::prime(3).unwrap()
    }

    #[test]
    fn char2_addition_cancels() {
        let f = f2();
        let a = Poly::parse(&f, "1,0,1").unwrap(); // t² + 1
        let b = Poly::parse(&f, "1,1").unwrap(); // t + 1
        let s = a.add(&b).unwrap();
        assert_eq!(s, Poly::parse(&f, "0,1,1").unwrap()); // t² + t
    }

    #[test]
    fn divmod_matches_long_division() {
        let f = f2();
        let a = Poly::parse(&f, "0,1,0,1").unwrap(); // t³ + t
        let b = Poly::parse(&f, "1,1").unwrap(); // t + 1
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, Poly::parse(&f, "0,1,1").unwrap()); // t² + t
        assert!(r.is_zero());
        // reconstruct
        let back = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn f3_scalar_squares() {
        let f = f3();
        let a = Poly::parse(&f, "0,2").unwrap(); // 2t
        let p = a.mul(&a).unwrap();
        assert_eq!(p, Poly::parse(&f, "0,0,1").unwrap()); // t²
    }

    #[test]
    fn gcd_is_monic() {
        let f = f2();
        let a = Poly::parse(&f, "0,1,0,1").unwrap(); // t(t+1)²
        let b = Poly::parse(&f, "0,1,1").unwrap(); // t(t+1)
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, b); // already monic
        let zero = Poly::zero(f.clone());
        assert_eq!(zero.gcd(&b).unwrap(), b);
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let f = f2();
        assert_eq!(Poly::zero(f.clone()).degree(), None);
        assert_eq!(Poly::constant(f, 1).degree(), Some(0));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = Poly::parse(&f2(), "1,1").unwrap();
        let b = Poly::parse(&f3(), "1,1").unwrap();
        assert_eq!(a.add(&b), Err(FfError::MismatchedFields));
    }

    #[test]
    fn division_by_zero_rejected() {
        let f = f2();
        let a = Poly::parse(&f, "1,1").unwrap();
        assert_eq!(a.divmod(&Poly::zero(f.clone())), Err(FfError::DivisionByZero));
    }

    #[test]
    fn extension_field_f4_table_agrees_with_poly_mul() {
        // F_4 = F_2[u]/(u² + u + 1)
        let f4 = FqField::extension(2, vec![1, 1, 1]).unwrap();
        assert_eq!(f4.q(), 4);
        // u · u = u + 1 (encodings: u = 2, u+1 = 3)
        assert_eq!(f4.el_mul(2, 2), 3);
        // u · (u+1) = u² + u = 1
        assert_eq!(f4.el_mul(2, 3), 1);
        // every nonzero element has an inverse
        for a in 1..4u8 {
            assert_eq!(f4.el_mul(a, f4.el_inv(a)), 1);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // u² + 1 = (u+1)² over F_2
        assert!(matches!(
            FqField::extension(2, vec![1, 0, 1]),
            Err(FfError::InvalidField(_))
        ));
    }

    #[test]
    fn parse_roundtrip() {
        let f = f3();
        let a = Poly::parse(&f, "1,0,2").unwrap();
        assert_eq!(Poly::parse(&f, &a.to_text()).unwrap(), a);
        assert!(Poly::parse(&f, "3,1").is_err());
    }
}
