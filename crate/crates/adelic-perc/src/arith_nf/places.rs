//! Places of the supported number fields: prime splitting, valuations by
//! generator division, Hensel cross-checks, and transversality of the
//! Minkowski lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

use super::element::{NfElement, NumberField};
use super::NfError;
use crate::magnitude::ExactMagnitude;

/// An Archimedean place: the `index`-th entry of [`NfElement::arch_abs`],
/// with weight `n_sigma` (1 for real, 2 for a conjugate pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ArchPlace {
    pub field: NumberField,
    pub index: u32,
    pub n_sigma: u32,
}

/// A place of a number field.
#[derive(Debug, Clone, PartialEq)]
pub enum PlaceNF {
    Arch(ArchPlace),
    NonArch(NonArchPlace),
}

/// A non-Archimedean place over the rational prime `p`, with ramification
/// index `e`, inertia degree `f`, and a generator of the prime ideal (all
/// three fields are PIDs). For split primes of the quadratic fields the
/// generator comes with a Hensel root: the square root of 2 (resp. −1)
/// mod `p` that the generator divides `a + b·c`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonArchPlace {
    pub field: NumberField,
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub generator: NfElement,
    pub hensel_root: Option<u64>,
}

impl NonArchPlace {
    /// Norm of the prime ideal, `N(℘) = p^f`.
    pub fn ideal_norm(&self) -> u64 {
        self.p.pow(self.f)
    }
}

impl PlaceNF {
    pub fn non_arch(&self) -> Option<&NonArchPlace> {
        match self {
            PlaceNF::NonArch(na) => Some(na),
            PlaceNF::Arch(_) => None,
        }
    }

    pub fn arch(&self) -> Option<&ArchPlace> {
        match self {
            PlaceNF::Arch(a) => Some(a),
            PlaceNF::NonArch(_) => None,
        }
    }
}

impl Serialize for PlaceNF {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PlaceNF::Arch(a) => {
                let mut s = serializer.serialize_struct("PlaceNF", 4)?;
                s.serialize_field("kind", "arch")?;
                s.serialize_field("field", &a.field)?;
                s.serialize_field("index", &a.index)?;
                s.serialize_field("n_sigma", &a.n_sigma)?;
                s.end()
            }
            PlaceNF::NonArch(na) => {
                let mut s = serializer.serialize_struct("PlaceNF", 5)?;
                s.serialize_field("kind", "nonarch")?;
                s.serialize_field("p", &na.p)?;
                s.serialize_field("e", &na.e)?;
                s.serialize_field("f", &na.f)?;
                s.serialize_field("generator", &na.generator)?;
                s.end()
            }
        }
    }
}

/// The Archimedean places of a field, in Minkowski coordinate order.
pub fn arch_places(field: NumberField) -> Vec<ArchPlace> {
    match field {
        NumberField::Rationals => vec![ArchPlace { field, index: 0, n_sigma: 1 }],
        NumberField::GaussQi => vec![ArchPlace { field, index: 0, n_sigma: 2 }],
        NumberField::RealQuadSqrt2 => vec![
            ArchPlace { field, index: 0, n_sigma: 1 },
            ArchPlace { field, index: 1, n_sigma: 1 },
        ],
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `c` with `c² ≡ d (mod p)` for odd prime `p`, by exhaustive search over
/// the residues (desk-scale primes).
fn sqrt_mod_p(d: i64, p: u64) -> Option<u64> {
    let target = d.rem_euclid(p as i64) as u64;
    (0..p).find(|c| c * c % p == target)
}

/// The places of `field` above the rational prime `p`.
pub fn split_prime(field: NumberField, p: u64) -> Result<Vec<PlaceNF>, NfError> {
    if !is_prime_u64(p) {
        return Err(NfError::NotPrime(p));
    }
    let mk = |e, f, generator, hensel_root| {
        PlaceNF::NonArch(NonArchPlace { field, p, e, f, generator, hensel_root })
    };
    Ok(match field {
        NumberField::Rationals => vec![mk(1, 1, NfElement::rational(p as i64), None)],
        NumberField::GaussQi => {
            if p == 2 {
                // 2 = −i·(1+i)²
                vec![mk(2, 1, NfElement::new(field, 1, 1), None)]
            } else if p % 4 == 1 {
                // p = a² + b², normalized a > b > 0 so e.g. 5 ↦ (2+i)(2−i)
                let (a, b) = sum_of_two_squares(p);
                let root = sqrt_mod_p(-1, p).expect("−1 is a square mod p ≡ 1 (mod 4)");
                // pair each generator with the root it divides: a + b·c ≡ 0 (mod p)
                let pick = |b_sign: i64| -> u64 {
                    pick_root(a as i64, b_sign * b as i64, &[root, p - root], p)
                };
                vec![
                    mk(1, 1, NfElement::new(field, a as i64, b as i64), Some(pick(1))),
                    mk(1, 1, NfElement::new(field, a as i64, -(b as i64)), Some(pick(-1))),
                ]
            } else {
                vec![mk(1, 2, NfElement::rational(p as i64), None)]
            }
        }
        NumberField::RealQuadSqrt2 => {
            if p == 2 {
                // 2 = (√2)²
                vec![mk(2, 1, NfElement::new(field, 0, 1), None)]
            } else if p % 8 == 1 || p % 8 == 7 {
                let (a, b) = norm_eq_pm_p(p);
                let root = sqrt_mod_p(2, p).expect("2 is a square mod p ≡ ±1 (mod 8)");
                // choose the root each generator divides: a + b·c ≡ 0 (mod p)
                let pick = |b_sign: i64| -> u64 {
                    pick_root(a as i64, b_sign * b as i64, &[root, p - root], p)
                };
                vec![
                    mk(1, 1, NfElement::new(field, a as i64, b as i64), Some(pick(1))),
                    mk(1, 1, NfElement::new(field, a as i64, -(b as i64)), Some(pick(-1))),
                ]
            } else {
                vec![mk(1, 2, NfElement::rational(p as i64), None)]
            }
        }
    })
}

/// The root `c` among `candidates` with `a + b·c ≡ 0 (mod p)`.
fn pick_root(a: i64, b: i64, candidates: &[u64], p: u64) -> u64 {
    for &c in candidates {
        if (a as i128 + b as i128 * c as i128).rem_euclid(p as i128) == 0 {
            return c;
        }
    }
    unreachable!("each conjugate generator divides a + b·c for one root c")
}

/// `p = a² + b²` with `a > b > 0`, for `p ≡ 1 (mod 4)`.
fn sum_of_two_squares(p: u64) -> (u64, u64) {
    let mut a = 1u64;
    while a * a <= p {
        let rest = p - a * a;
        let b = (rest as f64).sqrt().round() as u64;
        if b * b == rest && b > 0 {
            return if a > b { (a, b) } else { (b, a) };
        }
        a += 1;
    }
    unreachable!("primes ≡ 1 (mod 4) are sums of two squares")
}

/// Smallest `(a, b)` lexicographically with `a > 0` and `a² − 2b² = ±p`.
fn norm_eq_pm_p(p: u64) -> (u64, u64) {
    let bound = (p as f64).sqrt() as u64 + 2;
    for a in 1..=bound {
        for b in 1..=bound {
            let lhs = a as i128 * a as i128 - 2 * (b as i128 * b as i128);
            if lhs == p as i128 || lhs == -(p as i128) {
                return (a, b);
            }
        }
    }
    unreachable!("primes ≡ ±1 (mod 8) have a representation a² − 2b² = ±p")
}

/// The valuation `v_℘(x)` by repeated exact division by the place
/// generator.
pub fn v_nu(x: &NfElement, place: &PlaceNF) -> Result<i64, NfError> {
    let na = place.non_arch().ok_or(NfError::WrongPlaceKind)?;
    if x.field != na.field {
        return Err(NfError::PlaceFieldMismatch);
    }
    if x.is_zero() {
        return Err(NfError::ZeroElement);
    }
    let mut v = 0i64;
    let mut cur = x.clone();
    while let Some(next) = cur.checked_div(&na.generator) {
        v += 1;
        cur = next;
    }
    Ok(v)
}

/// Hensel-route valuation for split quadratic places: `v_p(a + b·c_k)` with
/// `c_k` the Newton lift of the place's Hensel root mod `p^k`. Requires `k`
/// beyond the expected answer; agrees with [`v_nu`] (cross-checked in
/// tests).
pub fn v_nu_via_hensel(x: &NfElement, place: &PlaceNF, k: u32) -> Result<i64, NfError> {
    let na = place.non_arch().ok_or(NfError::WrongPlaceKind)?;
    if x.field != na.field {
        return Err(NfError::PlaceFieldMismatch);
    }
    if x.is_zero() {
        return Err(NfError::ZeroElement);
    }
    let root = na.hensel_root.ok_or(NfError::WrongPlaceKind)?;
    let d: i64 = match na.field {
        NumberField::GaussQi => -1,
        NumberField::RealQuadSqrt2 => 2,
        NumberField::Rationals => return Err(NfError::WrongPlaceKind),
    };
    let pk = BigInt::from(na.p).pow(k);
    let ck = hensel_lift(d, root, na.p, k);
    let val = (&x.a + &x.b * &ck).mod_floor(&pk);
    if val.is_zero() {
        // x ≡ 0 mod p^k along this branch: the answer is ≥ k, so k was
        // not "beyond the answer"
        return Err(NfError::MaxDigitsInsufficient);
    }
    let p = BigInt::from(na.p);
    let mut v = 0i64;
    let mut cur = val;
    while (&cur % &p).is_zero() {
        v += 1;
        cur /= &p;
    }
    Ok(v)
}

/// Newton lift of a root of `x² = d` from mod `p` to mod `p^k`.
fn hensel_lift(d: i64, root: u64, p: u64, k: u32) -> BigInt {
    let target = BigInt::from(d);
    let mut c = BigInt::from(root);
    let mut prec = 1u32;
    while prec < k {
        prec = (prec * 2).min(k);
        let modulus = BigInt::from(p).pow(prec);
        // c ← c − (c² − d)/(2c) mod p^prec
        let num = (&c * &c - &target).mod_floor(&modulus);
        let denom = (BigInt::from(2) * &c).mod_floor(&modulus);
        let inv = mod_inverse(&denom, &modulus).expect("2c is a unit mod p^k for odd p");
        c = (&c - num * inv).mod_floor(&modulus);
    }
    c
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// The absolute value of `x` at a place.
pub enum NfAbs {
    /// `p^{−f·v_℘(x)}`, exact.
    NonArch(ExactMagnitude),
    /// Real absolute value of the embedding coordinate (complex modulus for
    /// a conjugate pair).
    Arch(f64),
}

pub fn abs_nu(x: &NfElement, place: &PlaceNF) -> Result<NfAbs, NfError> {
    match place {
        PlaceNF::NonArch(na) => {
            let v = v_nu(x, place)?;
            Ok(NfAbs::NonArch(ExactMagnitude::from_int_exp(
                na.p,
                -(i64::from(na.f) * v),
            )))
        }
        PlaceNF::Arch(a) => {
            if x.field != a.field {
                return Err(NfError::PlaceFieldMismatch);
            }
            if x.is_zero() {
                return Err(NfError::ZeroElement);
            }
            Ok(NfAbs::Arch(x.arch_abs()[a.index as usize]))
        }
    }
}

/// The adelic norm identity as a multiset of prime exponents.
///
/// The non-Archimedean side contributes `f·v_℘(x)` to the exponent of `p`
/// for every place `℘ | p`; the Archimedean side is the prime factorization
/// of `|N(x)| = Π_σ |x|_σ^{n_σ}`. Returns the difference of the two
/// multisets, which is empty exactly when `Π_ν |x|_ν · Π_σ |x|_σ^{n_σ} = 1`.
pub fn product_formula_nf(x: &NfElement, pmax: u64) -> Result<BTreeMap<u64, i64>, NfError> {
    if x.is_zero() {
        return Err(NfError::ZeroElement);
    }
    let norm = x.norm().abs();
    // Archimedean side: factor |N(x)| over primes ≤ pmax
    let mut arch: BTreeMap<u64, i64> = BTreeMap::new();
    let mut rest = norm.clone();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= rest {
        while (&rest % BigInt::from(p)).is_zero() {
            *arch.entry(p).or_insert(0) += 1;
            rest /= BigInt::from(p);
        }
        p += 1;
    }
    if !rest.is_one() {
        let leftover = rest.to_u64().ok_or(NfError::PmaxTooSmall { leftover: u64::MAX })?;
        *arch.entry(leftover).or_insert(0) += 1;
    }
    if let Some((&largest, _)) = arch.iter().next_back() {
        if largest > pmax {
            return Err(NfError::PmaxTooSmall { leftover: largest });
        }
    }
    // non-Archimedean side over the same primes
    let mut diff: BTreeMap<u64, i64> = BTreeMap::new();
    for (&p, &arch_exp) in &arch {
        let mut finite_exp = 0i64;
        for place in split_prime(x.field, p)? {
            let na = place.non_arch().unwrap();
            finite_exp += i64::from(na.f) * v_nu(x, &place)?;
        }
        let d = finite_exp - arch_exp;
        if d != 0 {
            diff.insert(p, d);
        }
    }
    Ok(diff)
}

/// True when no nonzero element of the box `|a|,|b| ≤ box_radius` has a
/// vanishing Minkowski coordinate, checked exactly on the integers.
pub fn transversality_check(field: NumberField, box_radius: i64) -> bool {
    let r = box_radius;
    match field {
        // the single coordinate is the element itself
        NumberField::Rationals => true,
        // the complex coordinate vanishes only at a = b = 0
        NumberField::GaussQi => true,
        NumberField::RealQuadSqrt2 => {
            for a in -r..=r {
                for b in -r..=r {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    // a ± b√2 = 0 would force a² = 2b²
                    if a * a == 2 * b * b {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Generic transversality of a list of vectors: no nonzero vector may have
/// a vanishing coordinate. Used as the negative control for raw lattices
/// like `Z²`.
pub fn transverse_vectors<I, V>(vectors: I) -> bool
where
    I: IntoIterator<Item = V>,
    V: AsRef<[f64]>,
{
    for v in vectors {
        let v = v.as_ref();
        if v.iter().all(|&c| c == 0.0) {
            continue;
        }
        if v.iter().any(|&c| c == 0.0) {
            return false;
        }
    }
    true
}
