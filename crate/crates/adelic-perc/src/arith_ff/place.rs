//! Places of `P^1/F_q`: monic irreducibles and the point at infinity, with
//! the valuations and normalized absolute values they induce on `F_q[t]`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::{FqField, Poly};
use super::{FfError, DEFAULT_ENUMERATION_BUDGET};
use crate::magnitude::ExactMagnitude;

/// A place of `P^1` over `F_q`: either the point at infinity (of the given
/// degree, 1 for a rational point) or a finite place given by a monic
/// irreducible polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlaceFF {
    Infinity { degree: u32 },
    Finite { pi: Poly },
}

impl PlaceFF {
    /// The rational point at infinity (`d_∞ = 1`).
    pub fn infinity() -> Self {
        PlaceFF::Infinity { degree: 1 }
    }

    /// A finite place; validates that `pi` is monic irreducible by trial
    /// division against lower-degree monic polynomials.
    pub fn finite(pi: Poly) -> Result<Self, FfError> {
        let deg = pi.degree().ok_or_else(|| FfError::InvalidPlace("zero polynomial".into()))?;
        if deg == 0 {
            return Err(FfError::InvalidPlace("constants are units, not places".into()));
        }
        if !pi.is_monic() {
            return Err(FfError::InvalidPlace(format!("{pi} is not monic")));
        }
        if deg > 1 {
            let field = pi.field().clone();
            for d in 1..=deg / 2 {
                let q = u64::from(field.q());
                for code in 0..q.pow(d as u32) {
                    let div = decode_monic(&field, d, code);
                    let (quot, rem) = pi.divmod(&div)?;
                    if rem.is_zero() {
                        return Err(FfError::InvalidPlace(format!("{pi} = ({div})·({quot})")));
                    }
                }
            }
        }
        Ok(PlaceFF::Finite { pi })
    }

    /// Degree of the place: `deg(pi)` for finite places, `d_∞` at infinity.
    pub fn degree(&self) -> u32 {
        match self {
            PlaceFF::Infinity { degree } => *degree,
            PlaceFF::Finite { pi } => pi.degree().expect("places are nonzero") as u32,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PlaceFF::Infinity { .. })
    }

    pub fn pi(&self) -> Option<&Poly> {
        match self {
            PlaceFF::Finite { pi } => Some(pi),
            PlaceFF::Infinity { .. } => None,
        }
    }

    /// Parses the serialized form, e.g. `{"kind":"finite","pi":"0,1"}` or
    /// `{"kind":"infinity","degree":1}`. The field must be supplied since
    /// the wire form does not carry `q`.
    pub fn from_json(field: &FqField, v: &serde_json::Value) -> Result<Self, FfError> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| FfError::Parse("place needs a \"kind\"".into()))?;
        match kind {
            "infinity" => {
                let degree = v.get("degree").and_then(|d| d.as_u64()).unwrap_or(1);
                Ok(PlaceFF::Infinity { degree: degree as u32 })
            }
            "finite" => {
                let text = v
                    .get("pi")
                    .and_then(|p| p.as_str())
                    .ok_or_else(|| FfError::Parse("finite place needs \"pi\"".into()))?;
                PlaceFF::finite(Poly::parse(field, text)?)
            }
            other => Err(FfError::Parse(format!("unknown place kind {other:?}"))),
        }
    }
}

impl Serialize for PlaceFF {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PlaceFF::Infinity { degree } => {
                let mut s = serializer.serialize_struct("PlaceFF", 2)?;
                s.serialize_field("kind", "infinity")?;
                s.serialize_field("degree", degree)?;
                s.end()
            }
            PlaceFF::Finite { pi } => {
                let mut s = serializer.serialize_struct("PlaceFF", 2)?;
                s.serialize_field("kind", "finite")?;
                s.serialize_field("pi", &pi.to_text())?;
                s.end()
            }
        }
    }
}

fn decode_monic(field: &FqField, degree: usize, code: u64) -> Poly {
    let q = u64::from(field.q());
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut c = code;
    for _ in 0..degree {
        coeffs.push((c % q) as u8);
        c /= q;
    }
    coeffs.push(1);
    Poly::new(field.clone(), coeffs)
}

/// All monic irreducibles of degree `≤ max_degree`, each exactly once,
/// sorted by (degree, lexicographic-from-the-top coefficients), i.e. by
/// their base-`q` integer codes. The sieve trial-divides each monic
/// candidate by the irreducibles of at most half its degree.
pub fn enumerate_irreducibles(field: &FqField, max_degree: u32) -> Result<Vec<PlaceFF>, FfError> {
    enumerate_irreducibles_with_budget(field, max_degree, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_irreducibles_with_budget(
    field: &FqField,
    max_degree: u32,
    budget: u64,
) -> Result<Vec<PlaceFF>, FfError> {
    let q = u64::from(field.q());
    let candidates = q.saturating_pow(max_degree);
    if candidates > budget {
        return Err(FfError::EnumerationBudget { candidates, budget });
    }
    let mut irreducibles: Vec<Poly> = Vec::new();
    for d in 1..=max_degree as usize {
        for code in 0..q.pow(d as u32) {
            let cand = decode_monic(field, d, code);
            let mut reducible = false;
            for div in &irreducibles {
                if div.degree().unwrap() * 2 > d {
                    break;
                }
                let (_, rem) = cand.divmod(div)?;
                if rem.is_zero() {
                    reducible = true;
                    break;
                }
            }
            if !reducible {
                irreducibles.push(cand);
            }
        }
    }
    Ok(irreducibles.into_iter().map(|pi| PlaceFF::Finite { pi }).collect())
}

/// Valuation of a nonzero polynomial at a place: `−deg f` at infinity,
/// the multiplicity of `pi` in `f` (by repeated exact division, no
/// factorization) at a finite place.
pub fn nu_at_place(f: &Poly, place: &PlaceFF) -> Result<i64, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    match place {
        PlaceFF::Infinity { .. } => Ok(-(f.degree().unwrap() as i64)),
        PlaceFF::Finite { pi } => {
            let mut nu = 0i64;
            let mut current = f.clone();
            loop {
                let (quot, rem) = current.divmod(pi)?;
                if !rem.is_zero() {
                    return Ok(nu);
                }
                nu += 1;
                current = quot;
                if current.degree() == Some(0) || current.is_zero() {
                    return Ok(nu);
                }
            }
        }
    }
}

/// Normalized absolute value `|f|_x = q^{−deg(x)·ν_x(f)}` as an exact
/// magnitude.
pub fn abs_at_place(f: &Poly, place: &PlaceFF) -> Result<ExactMagnitude, FfError> {
    let nu = nu_at_place(f, place)?;
    let q = u64::from(f.field().q());
    Ok(ExactMagnitude::from_int_exp(q, -(i64::from(place.degree()) * nu)))
}

/// The adelic relation as an exponent sum: `Σ_x deg(x)·ν_x(f)` over the
/// supplied places. The finite-place part must account for all of `deg f`
/// (otherwise a divisor place is missing from the list), and an infinite
/// place must be present; the total is then exactly zero.
pub fn product_formula_exponents(f: &Poly, places: &[PlaceFF]) -> Result<i64, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let mut finite_sum = 0i64;
    let mut infinite_sum = 0i64;
    let mut saw_infinity = false;
    for place in places {
        let nu = nu_at_place(f, place)?;
        let term = i64::from(place.degree()) * nu;
        if place.is_infinite() {
            saw_infinity = true;
            infinite_sum += term;
        } else {
            finite_sum += term;
        }
    }
    if !saw_infinity {
        return Err(FfError::NoInfinitePlace);
    }
    let deg = f.degree().unwrap() as i64;
    if finite_sum != deg {
        return Err(FfError::MissingDivisorPlace { missing_degree: deg - finite_sum });
    }
    Ok(finite_sum + infinite_sum)
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

    /// Necklace count of monic irreducibles of degree d over F_q:
    /// (1/d)·Σ_{e|d} μ(e)·q^{d/e}.
    fn necklace(q: u64, d: u64) -> u64 {
        fn moebius(mut n: u64) -> i64 {
            let mut mu = 1i64;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    mu = -mu;
                }
                p += 1;
            }
            if n > 1 {
                mu = -mu;
            }
            mu
        }
        let mut total = 0i64;
        for e in 1..=d {
            if d % e == 0 {
                total += moebius(e) * q.pow((d / e) as u32) as i64;
            }
        }
        (total / d as i64) as u64
    }

    #[test]
    fn f2_irreducibles_up_to_three() {
        let got = enumerate_irreducibles(&f2(), 3).unwrap();
        let f = f2();
        let expect = ["0,1", "1,1", "1,1,1", "1,1,0,1", "1,0,1,1"];
        let expect: Vec<Poly> = expect.iter().map(|t| Poly::parse(&f, t).unwrap()).collect();
        let got_polys: Vec<Poly> = got.iter().map(|p| p.pi().unwrap().clone()).collect();
        assert_eq!(got_polys, expect);
    }

    #[test]
    fn f3_linear_places() {
        let got = enumerate_irreducibles(&f3(), 1).unwrap();
        assert_eq!(got.len(), 3);
        let texts: Vec<String> = got.iter().map(|p| p.pi().unwrap().to_text()).collect();
        assert_eq!(texts, ["0,1", "1,1", "2,1"]);
    }

    #[test]
    fn counts_match_necklace_formula() {
        for &q in &[2u32, 3, 5] {
            let field = FqField::prime(q).unwrap();
            let max_d = if q == 2 { 8 } else if q == 3 { 8 } else { 6 };
            let places =
                enumerate_irreducibles_with_budget(&field, max_d, 500_000_000).unwrap();
            for d in 1..=u64::from(max_d) {
                let count = places.iter().filter(|p| u64::from(p.degree()) == d).count() as u64;
                assert_eq!(count, necklace(u64::from(q), d), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn valuations_by_repeated_division() {
        let f = f2();
        // f = t²(t+1)
        let poly = Poly::parse(&f, "0,1").unwrap().mul(&Poly::parse(&f, "0,1").unwrap()).unwrap();
        let poly = poly.mul(&Poly::parse(&f, "1,1").unwrap()).unwrap();
        let at_t = PlaceFF::finite(Poly::parse(&f, "0,1").unwrap()).unwrap();
        let at_inf = PlaceFF::infinity();
        assert_eq!(nu_at_place(&poly, &at_t).unwrap(), 2);
        assert_eq!(nu_at_place(&poly, &at_inf).unwrap(), -3);
        let unit = Poly::constant(f.clone(), 1);
        assert_eq!(nu_at_place(&unit, &at_t).unwrap(), 0);
        assert_eq!(nu_at_place(&Poly::zero(f), &at_t), Err(FfError::ZeroPolynomial));
    }

    #[test]
    fn absolute_values_are_exact_powers() {
        let f = f2();
        let poly = Poly::parse(&f, "0,0,1,1").unwrap(); // t²(t+1) = t³+t²
        let at_t = PlaceFF::finite(Poly::parse(&f, "0,1").unwrap()).unwrap();
        assert_eq!(abs_at_place(&poly, &at_t).unwrap(), ExactMagnitude::from_int_exp(2, -2));
        assert_eq!(
            abs_at_place(&poly, &PlaceFF::infinity()).unwrap(),
            ExactMagnitude::from_int_exp(2, 3)
        );
        // t² + t + 1 at the degree-2 place it generates: ν = 1, d_x = 2
        let pi = Poly::parse(&f, "1,1,1").unwrap();
        let place = PlaceFF::finite(pi.clone()).unwrap();
        assert_eq!(abs_at_place(&pi, &place).unwrap(), ExactMagnitude::from_int_exp(2, -2));
    }

    #[test]
    fn product_formula_examples() {
        let f = f2();
        let mut places = enumerate_irreducibles(&f, 2).unwrap();
        places.push(PlaceFF::infinity());
        let poly = Poly::parse(&f, "0,0,1,1").unwrap(); // t²(t+1)
        assert_eq!(product_formula_exponents(&poly, &places).unwrap(), 0);
        let unit = Poly::constant(f.clone(), 1);
        assert_eq!(product_formula_exponents(&unit, &places).unwrap(), 0);
        let irr2 = Poly::parse(&f, "1,1,1").unwrap();
        assert_eq!(product_formula_exponents(&irr2, &places).unwrap(), 0);
    }

    #[test]
    fn missing_divisor_detected() {
        let f = f2();
        let mut places: Vec<PlaceFF> = enumerate_irreducibles(&f, 1).unwrap();
        places.push(PlaceFF::infinity());
        // t² + t + 1 needs the degree-2 place
        let poly = Poly::parse(&f, "1,1,1").unwrap();
        assert_eq!(
            product_formula_exponents(&poly, &places),
            Err(FfError::MissingDivisorPlace { missing_degree: 2 })
        );
        // and without infinity the check refuses outright
        let finite_only = enumerate_irreducibles(&f, 2).unwrap();
        assert_eq!(
            product_formula_exponents(&poly, &finite_only),
            Err(FfError::NoInfinitePlace)
        );
    }

    #[test]
    fn place_validation() {
        let f = f2();
        assert!(PlaceFF::finite(Poly::parse(&f, "1,0,1").unwrap()).is_err()); // (t+1)²
        assert!(PlaceFF::finite(Poly::parse(&f, "0,1,1").unwrap()).is_err()); // not irreducible
        assert!(PlaceFF::finite(Poly::parse(&f, "1,1,1").unwrap()).is_ok());
        assert!(PlaceFF::finite(Poly::constant(f, 1)).is_err());
    }

    #[test]
    fn place_json_roundtrip() {
        let f = f2();
        let place = PlaceFF::finite(Poly::parse(&f, "0,1").unwrap()).unwrap();
        let json = serde_json::to_value(&place).unwrap();
        assert_eq!(json["kind"], "finite");
        assert_eq!(json["pi"], "0,1");
        assert_eq!(PlaceFF::from_json(&f, &json).unwrap(), place);
        let inf = serde_json::json!({"kind": "infinity", "degree": 1});
        assert_eq!(PlaceFF::from_json(&f, &inf).unwrap(), PlaceFF::infinity());
    }
}
