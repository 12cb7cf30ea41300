//! Adelic inclusion probabilities: products over the places of a global
//! field with zeta-function tails, and the `β_{A,S}` thresholds that
//! sandwich them against the single-place models.

use serde::{Deserialize, Serialize};

use super::{
    inclusion_prob, schedule_eval_ff, schedule_eval_nf, KernelError, ProbBase, Schedule,
};
use crate::arith_ff::{
    enumerate_irreducibles, nu_at_place, zeta_curve, FfError, FqField, PlaceFF, Poly, ZetaMode,
};
use crate::arith_nf::{
    dedekind_zeta, split_prime, v_nu, zero_free_beta0, NfElement, NfError, NumberField, PlaceNF,
};
use crate::magnitude::ExactMagnitude;

/// Base convention for an adelic model: `BaseQ` makes the tail factors
/// equal to zeta Euler factors exactly (the default for anything coupled
/// to zeta identities); `Natural` keeps the paper's `1 − e^{−βJ}` form and
/// replaces the closed tail by a truncated product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseMode {
    Natural,
    BaseQ,
}

/// How the candidate divisor places of `f − g` are found.
#[derive(Debug, Clone, PartialEq)]
pub enum SPolicyFF {
    /// The caller supplies the candidate finite places; the divisor
    /// support of `f − g` must be contained in them.
    Explicit(Vec<PlaceFF>),
    /// Enumerate all finite places of degree `≤ max_degree` as candidates.
    DivisorSupport { max_degree: u32 },
}

/// One Euler factor of an adelic probability, at a place where the
/// valuation is nonzero.
#[derive(Debug, Clone, Serialize)]
pub struct AdelicFactor {
    /// Display form of the place.
    pub place: String,
    /// `deg(x)` for function fields, the inertia degree `f` for number
    /// fields.
    pub residue_degree: u32,
    pub nu: i64,
    pub beta_x: f64,
    pub alpha_x: f64,
    pub j: f64,
    pub prob: f64,
}

/// An adelic inclusion probability with its factor breakdown.
#[derive(Debug, Clone, Serialize)]
pub struct AdelicBreakdown {
    pub total: f64,
    /// The product over places of zero valuation: `Z^{(S)}(C,β)^{−1}` in
    /// closed form for `BaseQ`, a truncated product for `Natural`.
    pub tail: f64,
    /// Enumeration bound behind the tail, when it is truncated rather
    /// than closed (degree for function fields, `pmax` for number fields).
    pub tail_truncation: Option<u64>,
    pub factors: Vec<AdelicFactor>,
}

impl AdelicBreakdown {
    fn assemble(tail: f64, tail_truncation: Option<u64>, factors: Vec<AdelicFactor>) -> Self {
        let total = factors.iter().fold(tail, |acc, f| acc * f.prob);
        AdelicBreakdown { total, tail, tail_truncation, factors }
    }
}

/// The divisor support of `d` within `candidates`: the places with
/// `ν_x(d) ≠ 0` and their valuations. Fails if the candidates do not
/// exhaust `deg d` (a divisor lies outside the candidate set).
pub(crate) fn divisor_support_ff(
    d: &Poly,
    candidates: &[PlaceFF],
) -> Result<Vec<(PlaceFF, i64)>, KernelError> {
    let mut support = Vec::new();
    let mut covered = 0i64;
    for place in candidates {
        if place.is_infinite() {
            continue;
        }
        let nu = nu_at_place(d, place)?;
        if nu > 0 {
            covered += i64::from(place.degree()) * nu;
            support.push((place.clone(), nu));
        }
    }
    let deg = d.degree().expect("nonzero") as i64;
    if covered != deg {
        return Err(KernelError::Ff(FfError::MissingDivisorPlace {
            missing_degree: deg - covered,
        }));
    }
    Ok(support)
}

/// Inclusion probability of the adelic long-range percolation model over
/// `F_q(P^1)`: the product over all finite places of per-place inclusion
/// probabilities with `β_x = β·deg(x)` and `α_x` supplied by the schedule.
///
/// Places outside the divisor support `S_{f−g}` contribute the tail
/// `Z^{(S_{f−g})}(C,β)^{−1}`; the support itself contributes one factor
/// per place, reported in the breakdown.
pub fn adelic_prob_ff(
    beta: f64,
    alpha: Schedule,
    f: &Poly,
    g: &Poly,
    s_policy: &SPolicyFF,
    base: BaseMode,
    numerator: &[i64],
    tail_truncation: u32,
) -> Result<AdelicBreakdown, KernelError> {
    let field = f.field().clone();
    let q = u64::from(field.q());
    let d = f.sub(g)?;
    if d.is_zero() {
        return Err(KernelError::EqualPoints);
    }
    let candidates = match s_policy {
        SPolicyFF::Explicit(places) => places.clone(),
        SPolicyFF::DivisorSupport { max_degree } => enumerate_irreducibles(&field, *max_degree)?,
    };
    let support = divisor_support_ff(&d, &candidates)?;
    let s_places: Vec<PlaceFF> = support.iter().map(|(p, _)| p.clone()).collect();

    let (tail, tail_trunc) = match base {
        BaseMode::BaseQ => {
            let z = zeta_curve(&field, beta, ZetaMode::Closed, numerator, &s_places)?;
            if z == 0.0 || !z.is_finite() {
                return Err(KernelError::ZetaTail(format!("Z^(S)(C, {beta}) = {z}")));
            }
            (1.0 / z, None)
        }
        BaseMode::Natural => {
            let mut tail = 1.0;
            for place in enumerate_irreducibles(&field, tail_truncation)? {
                if s_places.contains(&place) {
                    continue;
                }
                let beta_x = beta * f64::from(place.degree());
                tail *= -(-beta_x).exp_m1();
            }
            (tail, Some(u64::from(tail_truncation)))
        }
    };

    let mut factors = Vec::with_capacity(support.len());
    for (place, nu) in support {
        let deg = place.degree();
        let beta_x = beta * f64::from(deg);
        let alpha_x = schedule_eval_ff(alpha, &place, field.q());
        // J = |f−g|_x^{1+α_x} = q^{−deg(x)·ν·(1+α_x)}
        let j = ExactMagnitude::from_int_exp(q, -(i64::from(deg) * nu))
            .pow_f64(1.0 + alpha_x)
            .to_f64();
        let prob_base = match base {
            BaseMode::BaseQ => ProbBase::BaseQ { q: q as f64 },
            BaseMode::Natural => ProbBase::Natural,
        };
        let prob = inclusion_prob(beta_x, j, prob_base).prob;
        factors.push(AdelicFactor {
            place: place_label_ff(&place),
            residue_degree: deg,
            nu,
            beta_x,
            alpha_x,
            j,
            prob,
        });
    }
    Ok(AdelicBreakdown::assemble(tail, tail_trunc, factors))
}

fn place_label_ff(place: &PlaceFF) -> String {
    match place {
        PlaceFF::Infinity { .. } => "∞".to_string(),
        PlaceFF::Finite { pi } => format!("({pi})"),
    }
}

/// The non-Archimedean places of `field` at which `d ≠ 0` has nonzero
/// valuation, with the valuations. All primes dividing `N(d)` must be
/// `≤ pmax`.
pub(crate) fn divisor_support_nf(
    d: &NfElement,
    pmax: u64,
) -> Result<Vec<(PlaceNF, i64)>, KernelError> {
    use num_traits::{One, Signed, ToPrimitive, Zero};
    let norm = d.norm().abs();
    let mut rest = norm.clone();
    let mut prime_factors = Vec::new();
    let mut p = 2u64;
    while num_bigint::BigInt::from(p) * num_bigint::BigInt::from(p) <= rest {
        if (&rest % num_bigint::BigInt::from(p)).is_zero() {
            prime_factors.push(p);
            while (&rest % num_bigint::BigInt::from(p)).is_zero() {
                rest /= num_bigint::BigInt::from(p);
            }
        }
        p += 1;
    }
    if !rest.is_one() {
        let leftover = rest.to_u64().unwrap_or(u64::MAX);
        prime_factors.push(leftover);
    }
    if let Some(&largest) = prime_factors.last() {
        if largest > pmax {
            return Err(KernelError::Nf(NfError::PmaxTooSmall { leftover: largest }));
        }
    }
    let mut support = Vec::new();
    for p in prime_factors {
        for place in split_prime(d.field, p)? {
            let v = v_nu(d, &place)?;
            if v > 0 {
                support.push((place, v));
            }
        }
    }
    Ok(support)
}

/// Inclusion probability of the non-Archimedean adelic model over a number
/// field, mirroring [`adelic_prob_ff`] with `β_ν = β·f` and the Dedekind
/// zeta tail `ζ_K^{(S_{x−y})}(β)^{−1}` (truncated Euler product over
/// primes `≤ pmax`, so `β > 1` is required for the tail).
pub fn adelic_prob_nf(
    beta: f64,
    alpha: Schedule,
    x: &NfElement,
    y: &NfElement,
    pmax: u64,
    base: BaseMode,
) -> Result<AdelicBreakdown, KernelError> {
    let d = x.sub(y)?;
    if d.is_zero() {
        return Err(KernelError::EqualPoints);
    }
    if beta <= 1.0 {
        // ζ_K has no usable closed form here; the truncated Euler product
        // only converges for β > 1, and (β₀, 1) is the possible-zero window
        if let Some(beta0) = zero_free_beta0(d.field) {
            if beta > beta0 {
                return Err(KernelError::ZetaTail(format!(
                    "β = {beta} lies in the excluded zero region ({beta0}, 1)"
                )));
            }
        }
        return Err(KernelError::Nf(NfError::ZetaNotConvergent { s: beta }));
    }
    let support = divisor_support_nf(&d, pmax)?;
    let s_places: Vec<PlaceNF> = support.iter().map(|(p, _)| p.clone()).collect();

    let tail = match base {
        BaseMode::BaseQ => {
            let z = dedekind_zeta(d.field, beta, pmax, &s_places)?;
            if z == 0.0 || !z.is_finite() {
                return Err(KernelError::ZetaTail(format!("ζ^(S)({beta}) = {z}")));
            }
            1.0 / z
        }
        BaseMode::Natural => {
            let mut tail = 1.0;
            for p in crate::arith_nf::primes_up_to(pmax) {
                for place in split_prime(d.field, p)? {
                    if s_places.contains(&place) {
                        continue;
                    }
                    let na = place.non_arch().unwrap();
                    let beta_nu = beta * f64::from(na.f);
                    tail *= -(-beta_nu).exp_m1();
                }
            }
            tail
        }
    };

    let mut factors = Vec::with_capacity(support.len());
    for (place, v) in support {
        let na = place.non_arch().unwrap();
        let beta_nu = beta * f64::from(na.f);
        let alpha_nu = schedule_eval_nf(alpha, na);
        // J = |x−y|_ν^{1+α_ν} = p^{−f·v·(1+α_ν)}
        let j = ExactMagnitude::from_int_exp(na.p, -(i64::from(na.f) * v))
            .pow_f64(1.0 + alpha_nu)
            .to_f64();
        let prob_base = match base {
            BaseMode::BaseQ => ProbBase::BaseQ { q: na.p as f64 },
            BaseMode::Natural => ProbBase::Natural,
        };
        let prob = inclusion_prob(beta_nu, j, prob_base).prob;
        factors.push(AdelicFactor {
            place: format!("({})", na.generator),
            residue_degree: na.f,
            nu: v,
            beta_x: beta_nu,
            alpha_x: alpha_nu,
            j,
            prob,
        });
    }
    Ok(AdelicBreakdown::assemble(tail, Some(pmax), factors))
}

/// The Archimedean adelic probability and its toric companion.
#[derive(Debug, Clone, Serialize)]
pub struct ArchAdelicProb {
    pub prob: f64,
    pub factors: Vec<AdelicFactor>,
    /// `1 − exp(−β^n·J_{α·n, toric})`, the regime the product resembles at
    /// large separations.
    pub toric_companion: f64,
}

/// Product over one place per conjugate pair of `1 − e^{−β·J_{α,σ}}` with
/// `J_{α,σ} = |σ(x)−σ(y)|^{−(1+α)n_σ}`.
pub fn arch_adelic_prob(
    beta: f64,
    alpha: f64,
    x: &NfElement,
    y: &NfElement,
) -> Result<ArchAdelicProb, KernelError> {
    let d = x.sub(y)?;
    if d.is_zero() {
        return Err(KernelError::EqualPoints);
    }
    let n = d.field.degree();
    let moduli = d.arch_abs();
    let places = crate::arith_nf::arch_places(d.field);
    let mut prob = 1.0;
    let mut factors = Vec::with_capacity(places.len());
    let mut log_upsilon = 0.0;
    for place in &places {
        let m = moduli[place.index as usize];
        if m == 0.0 {
            return Err(KernelError::ZeroCoordinate { index: place.index as usize });
        }
        log_upsilon += f64::from(place.n_sigma) * m.ln();
        let j = m.powf(-(1.0 + alpha) * f64::from(place.n_sigma));
        let p = inclusion_prob(beta, j, ProbBase::Natural).prob;
        prob *= p;
        factors.push(AdelicFactor {
            place: format!("σ_{}", place.index),
            residue_degree: place.n_sigma,
            nu: 0,
            beta_x: beta,
            alpha_x: alpha,
            j,
            prob: p,
        });
    }
    // υ^{1+(α·n)/n} = υ^{1+α}, matched against β^n
    let j_toric = (-log_upsilon).exp().powf(1.0 + alpha);
    let toric_companion = inclusion_prob(beta.powi(n as i32), j_toric, ProbBase::Natural).prob;
    Ok(ArchAdelicProb { prob, factors, toric_companion })
}

/// Which threshold of the sandwich theorems to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdKind {
    /// Lower threshold `β_{A,S}`: full zeta in the denominator.
    A,
    /// Upper threshold `β'_{A,S}`: the `S`-removed zeta in the denominator.
    APrime,
}

/// `β_{A,S}` / `β'_{A,S}` for the function-field sandwich:
/// `β^{#S}/Z(C,β)` vs `β/Z(C,β)` branching at `β = 1`, and the primed
/// variant with `Z^{(S)}`. A pole of the zeta denominator gives threshold
/// zero.
pub fn beta_threshold_ff(
    kind: ThresholdKind,
    beta: f64,
    s_places: &[PlaceFF],
    field: &FqField,
    numerator: &[i64],
) -> Result<f64, KernelError> {
    let removed: &[PlaceFF] = match kind {
        ThresholdKind::A => &[],
        ThresholdKind::APrime => s_places,
    };
    let z = match zeta_curve(field, beta, ZetaMode::Closed, numerator, removed) {
        Ok(z) => z,
        Err(FfError::ZetaPole { .. }) => return Ok(0.0),
        Err(e) => return Err(e.into()),
    };
    if z == 0.0 {
        return Err(KernelError::ZetaTail(format!("zeta vanished at β = {beta}")));
    }
    let s_count = s_places.len() as i32;
    let numer = match kind {
        ThresholdKind::A => {
            if beta <= 1.0 {
                beta.powi(s_count)
            } else {
                beta
            }
        }
        ThresholdKind::APrime => {
            if beta <= 1.0 {
                beta
            } else {
                beta.powi(s_count)
            }
        }
    };
    Ok(numer / z)
}

/// The number-field thresholds of the toric sandwich: identical branch
/// structure with `ζ_K`, then an `n`-th root (the theorem defines the
/// `n`-th power `β_{A,S}^n` as the zeta quotient).
pub fn beta_threshold_nf(
    kind: ThresholdKind,
    beta: f64,
    s_places: &[PlaceNF],
    field: NumberField,
    pmax: u64,
) -> Result<f64, KernelError> {
    let removed: &[PlaceNF] = match kind {
        ThresholdKind::A => &[],
        ThresholdKind::APrime => s_places,
    };
    let z = dedekind_zeta(field, beta, pmax, removed)?;
    if z == 0.0 {
        return Err(KernelError::ZetaTail(format!("zeta vanished at β = {beta}")));
    }
    let s_count = s_places.len() as i32;
    let numer = match kind {
        ThresholdKind::A => {
            if beta <= 1.0 {
                beta.powi(s_count)
            } else {
                beta
            }
        }
        ThresholdKind::APrime => {
            if beta <= 1.0 {
                beta
            } else {
                beta.powi(s_count)
            }
        }
    };
    Ok((numer / z).powf(1.0 / f64::from(field.degree())))
}
