//! p-adic digit expansions of rational integers and the bifurcation depth
//! `d⊥` on the Bruhat–Tits tree.
//!
//! Expansions are implemented for `Z` (the `K = Q` case, where the sets of
//! terminating and eventually periodic expansions inside `O_K` all collapse
//! to `Z`). Negative integers acquire the infinite tail of digits `p − 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::NfError;

/// An eventually periodic p-adic expansion: a finite `prefix` of digits
/// (lowest power first) followed by a repeating `period` (empty for
/// terminating expansions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicExpansion {
    pub p: u64,
    pub prefix: Vec<u32>,
    pub period: Vec<u32>,
}

impl PadicExpansion {
    /// Evaluates the expansion as an element of `Z_p` mod `p^k`, driving
    /// the geometric series of the periodic tail to `k` digits.
    pub fn eval_mod(&self, k: u32) -> BigInt {
        let p = BigInt::from(self.p);
        let pk = p.pow(k);
        let mut acc = BigInt::zero();
        let mut scale = BigInt::from(1u32);
        let mut digits = self.prefix.iter().cycle_period(&self.period);
        for _ in 0..k {
            let d = digits.next().unwrap_or(0);
            acc += &scale * BigInt::from(d);
            scale *= &p;
        }
        acc.mod_floor(&pk)
    }
}

/// Iterator helper: prefix digits, then the period repeated forever
/// (or zeros when the period is empty).
trait CyclePeriod<'a> {
    fn cycle_period(self, period: &'a [u32]) -> PeriodIter<'a>;
}

impl<'a> CyclePeriod<'a> for std::slice::Iter<'a, u32> {
    fn cycle_period(self, period: &'a [u32]) -> PeriodIter<'a> {
        PeriodIter { prefix: self, period, pos: 0 }
    }
}

struct PeriodIter<'a> {
    prefix: std::slice::Iter<'a, u32>,
    period: &'a [u32],
    pos: usize,
}

impl PeriodIter<'_> {
    fn next(&mut self) -> Option<u32> {
        if let Some(&d) = self.prefix.next() {
            return Some(d);
        }
        if self.period.is_empty() {
            return None;
        }
        let d = self.period[self.pos % self.period.len()];
        self.pos += 1;
        Some(d)
    }
}

impl fmt::Display for PadicExpansion {
    /// `a₀a₁…(b₀…)̄`; digits are comma-separated when `p > 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[u32]| -> String {
            if self.p <= 10 {
                ds.iter().map(|d| d.to_string()).collect()
            } else {
                ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        write!(f, "{}", join(&self.prefix))?;
        if !self.period.is_empty() {
            write!(f, "({})\u{0305}", join(&self.period))?;
        }
        Ok(())
    }
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// p-adic expansion of a rational integer.
///
/// Nonnegative integers terminate. Negative integers are computed by adding
/// `p^K` for `K` past `max_digits` and detecting the all-`(p−1)` tail; the
/// expansion is reduced so the prefix never ends in the period pattern.
pub fn padic_expansion(n: &BigInt, p: u64, max_digits: u32) -> Result<PadicExpansion, NfError> {
    if !is_prime_u64(p) {
        return Err(NfError::NotPrime(p));
    }
    let pb = BigInt::from(p);
    if !n.is_negative() {
        let mut digits = Vec::new();
        let mut cur = n.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(&pb);
            digits.push(r.to_u32().unwrap());
            cur = q;
        }
        if digits.len() > max_digits as usize {
            return Err(NfError::MaxDigitsInsufficient);
        }
        return Ok(PadicExpansion { p, prefix: digits, period: Vec::new() });
    }
    // negative: digits of n + p^K, tail all (p−1)
    let guard = max_digits + 4;
    let shifted = n + pb.pow(guard);
    if shifted.is_negative() {
        return Err(NfError::MaxDigitsInsufficient);
    }
    let mut digits = Vec::with_capacity(guard as usize);
    let mut cur = shifted;
    for _ in 0..guard {
        let (q, r) = cur.div_rem(&pb);
        digits.push(r.to_u32().unwrap());
        cur = q;
    }
    let top = (p - 1) as u32;
    let mut cut = digits.len();
    while cut > 0 && digits[cut - 1] == top {
        cut -= 1;
    }
    if cut > max_digits as usize {
        return Err(NfError::MaxDigitsInsufficient);
    }
    digits.truncate(cut);
    Ok(PadicExpansion { p, prefix: digits, period: vec![top] })
}

/// The 0-based index of the first differing p-adic digit of `x` and `y`:
/// the number of steps from the root of the Bruhat–Tits tree to the vertex
/// where the two boundary paths bifurcate. Equals `v_p(x − y)`.
///
/// `depth` must exceed `v_p(x − y)` so the differing digit is visible.
pub fn dperp(x: &BigInt, y: &BigInt, p: u64, depth: u32) -> Result<u32, NfError> {
    if !is_prime_u64(p) {
        return Err(NfError::NotPrime(p));
    }
    if x == y {
        return Err(NfError::EqualPoints);
    }
    let pb = BigInt::from(p);
    let pk = pb.pow(depth);
    let mut xr = x.mod_floor(&pk);
    let mut yr = y.mod_floor(&pk);
    for i in 0..depth {
        let (xq, xd) = xr.div_rem(&pb);
        let (yq, yd) = yr.div_rem(&pb);
        if xd != yd {
            return Ok(i);
        }
        xr = xq;
        yr = yq;
    }
    // all digits agree below `depth`, so depth ≤ v_p(x−y)
    Err(NfError::MaxDigitsInsufficient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(n: i64, p: u64, k: u32) -> PadicExpansion {
        padic_expansion(&BigInt::from(n), p, k).unwrap()
    }

    #[test]
    fn nonnegative_terminates() {
        let e = expand(10, 3, 16);
        assert_eq!(e.prefix, vec![1, 0, 1]);
        assert!(e.period.is_empty());
        let z = expand(0, 5, 16);
        assert!(z.prefix.is_empty() && z.period.is_empty());
    }

    #[test]
    fn negative_integers_have_top_digit_period() {
        let e = expand(-1, 3, 16);
        assert!(e.prefix.is_empty());
        assert_eq!(e.period, vec![2]);
        assert_eq!(e.to_string(), "(2)\u{0305}");
        let e = expand(-3, 3, 16);
        assert_eq!(e.prefix, vec![0]);
        assert_eq!(e.period, vec![2]);
        let e = expand(-2, 5, 16);
        assert_eq!(e.prefix, vec![3]);
        assert_eq!(e.period, vec![4]);
    }

    #[test]
    fn roundtrip_mod_pk() {
        for &p in &[2u64, 3, 5] {
            for n in [-50i64, -7, -1, 0, 1, 9, 48] {
                let e = expand(n, p, 40);
                let k = 40;
                let lhs = e.eval_mod(k);
                let rhs = BigInt::from(n).mod_floor(&BigInt::from(p).pow(k));
                assert_eq!(lhs, rhs, "n={n}, p={p}");
            }
        }
    }

    #[test]
    fn digit_budget_enforced() {
        assert_eq!(
            padic_expansion(&BigInt::from(100), 3, 2),
            Err(NfError::MaxDigitsInsufficient)
        );
        assert!(padic_expansion(&BigInt::from(100), 3, 5).is_ok());
    }

    #[test]
    fn dperp_examples() {
        let b = BigInt::from;
        assert_eq!(dperp(&b(10), &b(1), 3, 20).unwrap(), 2);
        assert_eq!(dperp(&b(1), &b(2), 3, 20).unwrap(), 0);
        assert_eq!(dperp(&b(-1), &b(2), 3, 20).unwrap(), 1);
        assert_eq!(dperp(&b(7), &b(7), 3, 20), Err(NfError::EqualPoints));
        // depth not beyond the valuation
        assert_eq!(dperp(&b(0), &b(81), 3, 4), Err(NfError::MaxDigitsInsufficient));
        assert_eq!(dperp(&b(0), &b(81), 3, 5).unwrap(), 4);
    }
}
