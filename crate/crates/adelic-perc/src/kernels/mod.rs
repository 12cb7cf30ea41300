//! The kernel functions `J` of every percolation model, the power-mean
//! family, inclusion probabilities, and the zeta-coordinated schedules for
//! the adelic models.
//!
//! Base convention: the models are written with probabilities
//! `1 − e^{−βJ}`, but the adelic zeta identities need factors
//! `1 − q^{−β·deg(x)}`. Both are supported through [`ProbBase`]; the
//! `BaseQ` form is the default for everything zeta-coupled so those
//! identities hold exactly, `Natural` elsewhere.

mod adelic;
mod json;

pub use adelic::{
    adelic_prob_ff, adelic_prob_nf, arch_adelic_prob, beta_threshold_ff, beta_threshold_nf,
    AdelicBreakdown, AdelicFactor, ArchAdelicProb, BaseMode, SPolicyFF, ThresholdKind,
};
pub(crate) use adelic::divisor_support_nf;
pub use json::{kernel_spec_from_json, kernel_spec_to_json, payload_from_json, payload_to_json};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith_ff::{abs_at_place, FfError, FqField, PlaceFF, Poly};
use crate::arith_nf::{
    v_nu, ArchPlace, NfElement, NfError, NonArchPlace, NumberField, PlaceNF,
};
use crate::hierlattice::{h_index, HierError, HierParams, HierPoint};
use crate::magnitude::ExactMagnitude;

#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    /// Kernels are defined for distinct vertices only.
    EqualPoints,
    /// A coordinate of the difference vanishes on a toric/power-mean
    /// kernel (the pair is not transverse).
    ZeroCoordinate { index: usize },
    /// Payload type does not match the kernel variant.
    PayloadMismatch { expected: &'static str },
    /// λ has the wrong length for the coordinate split.
    LambdaLength { expected: usize, got: usize },
    /// λ entries must be nonnegative and sum to 1 (with conjugate-pair
    /// doubling) within 1e−12.
    LambdaInvalid(String),
    /// The adelic variants have no pointwise `J`; sample them through
    /// their inclusion probabilities.
    NoPointwiseKernel,
    /// Zeta tail evaluated to zero or did not converge.
    ZetaTail(String),
    Ff(FfError),
    Nf(NfError),
    Hier(HierError),
    Parse(String),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::EqualPoints => write!(f, "kernel evaluated on equal points"),
            KernelError::ZeroCoordinate { index } => {
                write!(f, "non-transverse pair: coordinate {index} of the difference is zero")
            }
            KernelError::PayloadMismatch { expected } => {
                write!(f, "kernel expects {expected} payloads")
            }
            KernelError::LambdaLength { expected, got } => {
                write!(f, "λ must have length {expected}, got {got}")
            }
            KernelError::LambdaInvalid(msg) => write!(f, "invalid λ: {msg}"),
            KernelError::NoPointwiseKernel => {
                write!(f, "adelic models have no pointwise kernel; use their probabilities")
            }
            KernelError::ZetaTail(msg) => write!(f, "zeta tail: {msg}"),
            KernelError::Ff(e) => write!(f, "{e}"),
            KernelError::Nf(e) => write!(f, "{e}"),
            KernelError::Hier(e) => write!(f, "{e}"),
            KernelError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for KernelError {}

impl From<FfError> for KernelError {
    fn from(e: FfError) -> Self {
        KernelError::Ff(e)
    }
}

impl From<NfError> for KernelError {
    fn from(e: NfError) -> Self {
        KernelError::Nf(e)
    }
}

impl From<HierError> for KernelError {
    fn from(e: HierError) -> Self {
        KernelError::Hier(e)
    }
}

/// The deformation parameter `t` of the power mean, with its three
/// distinguished limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerParam {
    MinusInf,
    Finite(f64),
    PlusInf,
}

impl PowerParam {
    pub fn as_f64(self) -> f64 {
        match self {
            PowerParam::MinusInf => f64::NEG_INFINITY,
            PowerParam::Finite(t) => t,
            PowerParam::PlusInf => f64::INFINITY,
        }
    }
}

/// A weight vector for the power mean: one entry per real coordinate and
/// one per conjugate pair; a pair's entry is counted twice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector(pub Vec<f64>);

impl ProbabilityVector {
    /// The uniform distribution `λ = 1/N` on `N = r + 2s` points, stored
    /// as `r + s` entries.
    pub fn uniform(r: usize, s: usize) -> Self {
        let n = (r + 2 * s) as f64;
        ProbabilityVector(vec![1.0 / n; r + s])
    }

    /// Expands to effective weights `(λ_1,…,λ_r, 2λ_{r+1},…,2λ_{r+s})`,
    /// validating the simplex constraints.
    pub fn effective_weights(&self, r: usize, s: usize) -> Result<Vec<f64>, KernelError> {
        if self.0.len() != r + s {
            return Err(KernelError::LambdaLength { expected: r + s, got: self.0.len() });
        }
        if self.0.iter().any(|&w| w < 0.0) {
            return Err(KernelError::LambdaInvalid("negative weight".into()));
        }
        let weights: Vec<f64> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &w)| if i < r { w } else { 2.0 * w })
            .collect();
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(KernelError::LambdaInvalid(format!("weights sum to {sum}")));
        }
        Ok(weights)
    }
}

/// The weighted power mean `M_t(λ, x)` over real coordinates and complex
/// entries (each complex entry carries twice its λ weight).
///
/// `t = 0` is the weighted geometric mean, `t = ±∞` the max/min of the
/// moduli. Large `|t|` is evaluated with the dominant modulus factored out,
/// so `t = ±100` does not overflow.
pub fn power_mean(
    t: PowerParam,
    lambda: &ProbabilityVector,
    reals: &[f64],
    complexes: &[(f64, f64)],
) -> Result<f64, KernelError> {
    let (r, s) = (reals.len(), complexes.len());
    let weights = lambda.effective_weights(r, s)?;
    let mut moduli = Vec::with_capacity(r + s);
    for (i, &x) in reals.iter().enumerate() {
        if x == 0.0 {
            return Err(KernelError::ZeroCoordinate { index: i });
        }
        moduli.push(x.abs());
    }
    for (j, &(re, im)) in complexes.iter().enumerate() {
        let m = re.hypot(im);
        if m == 0.0 {
            return Err(KernelError::ZeroCoordinate { index: r + j });
        }
        moduli.push(m);
    }
    Ok(match t {
        PowerParam::PlusInf => moduli.iter().cloned().fold(f64::MIN, f64::max),
        PowerParam::MinusInf => moduli.iter().cloned().fold(f64::MAX, f64::min),
        PowerParam::Finite(t) if t == 0.0 => {
            let log_mean: f64 =
                moduli.iter().zip(&weights).map(|(m, w)| w * m.ln()).sum();
            log_mean.exp()
        }
        PowerParam::Finite(t) => {
            let reference = if t > 0.0 {
                moduli.iter().cloned().fold(f64::MIN, f64::max)
            } else {
                moduli.iter().cloned().fold(f64::MAX, f64::min)
            };
            let sum: f64 = moduli
                .iter()
                .zip(&weights)
                .map(|(m, w)| w * (m / reference).powf(t))
                .sum();
            reference * sum.powf(1.0 / t)
        }
    })
}

/// β/α schedules over the places, coordinating the adelic parameters with
/// the zeta function: `β_x = β·deg(x)`, `α_x = α + log_q deg(x)` for
/// function fields, and `β_ν = β·f`, `α_ν = α + log_p f` for number
/// fields. The degree of a function-field place and the inertia degree of
/// a number-field place play the same role, so either flavor accepts
/// either place kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    Constant { value: f64 },
    DegProportional { base: f64 },
    DegLogShifted { base: f64 },
    InertiaProportional { base: f64 },
    InertiaLogShifted { base: f64 },
}

impl Schedule {
    fn eval(self, residue_degree: u32, log_base: f64) -> f64 {
        let d = f64::from(residue_degree);
        match self {
            Schedule::Constant { value } => value,
            Schedule::DegProportional { base } | Schedule::InertiaProportional { base } => base * d,
            Schedule::DegLogShifted { base } | Schedule::InertiaLogShifted { base } => {
                base + d.ln() / log_base.ln()
            }
        }
    }

    pub fn base_value(self) -> f64 {
        match self {
            Schedule::Constant { value } => value,
            Schedule::DegProportional { base }
            | Schedule::DegLogShifted { base }
            | Schedule::InertiaProportional { base }
            | Schedule::InertiaLogShifted { base } => base,
        }
    }
}

/// Schedule value at a function-field place (log base `q`).
pub fn schedule_eval_ff(sched: Schedule, place: &PlaceFF, q: u32) -> f64 {
    sched.eval(place.degree(), f64::from(q))
}

/// Schedule value at a non-Archimedean number-field place (log base `p`).
pub fn schedule_eval_nf(sched: Schedule, place: &NonArchPlace) -> f64 {
    sched.eval(place.f, place.p as f64)
}

/// How the Bernoulli parameter is formed from `βJ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbBase {
    /// `1 − e^{−βJ}`.
    Natural,
    /// `1 − q^{−βJ}`.
    BaseQ { q: f64 },
}

/// An inclusion probability together with the small-`J` linearization
/// `βJ`, which identifies the long-range regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InclusionProb {
    pub prob: f64,
    pub linearized: f64,
}

/// `1 − e^{−βJ}` (or `1 − q^{−βJ}`) with the linearized `βJ` companion.
pub fn inclusion_prob(beta: f64, j: f64, base: ProbBase) -> InclusionProb {
    let bj = beta * j;
    let prob = match base {
        ProbBase::Natural => -(-bj).exp_m1(),
        ProbBase::BaseQ { q } => -(-bj * q.ln()).exp_m1(),
    };
    InclusionProb { prob, linearized: bj }
}

/// A kernel value: exact for the non-Archimedean variants, floating point
/// for the Archimedean ones.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelValue {
    Exact(ExactMagnitude),
    Real(f64),
}

impl KernelValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            KernelValue::Exact(m) => m.to_f64(),
            KernelValue::Real(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&ExactMagnitude> {
        match self {
            KernelValue::Exact(m) => Some(m),
            KernelValue::Real(_) => None,
        }
    }
}

/// A vertex payload: the vertex data each model family samples over.
#[derive(Debug, Clone, PartialEq)]
pub enum VertexPayload {
    /// A point of `Z^N` (or any integer lattice given by coordinates).
    Lattice(Vec<i64>),
    /// An element of `O_K`, embedded via Minkowski where needed.
    Nf(NfElement),
    /// A point of the hierarchical lattice.
    Hier(HierPoint),
    /// A polynomial in `F_q[t] ≅ H^1_q`.
    Poly(Poly),
}

impl VertexPayload {
    /// Real-embedding coordinates: the identity on lattice vectors, the
    /// Minkowski image for number-field elements.
    pub fn coords(&self) -> Option<Vec<f64>> {
        match self {
            VertexPayload::Lattice(v) => Some(v.iter().map(|&x| x as f64).collect()),
            VertexPayload::Nf(x) => Some(x.minkowski()),
            _ => None,
        }
    }

    /// Splits into real coordinates and complex pairs for the power-mean
    /// and toric kernels.
    fn real_complex_split(&self) -> Option<(Vec<f64>, Vec<(f64, f64)>)> {
        match self {
            VertexPayload::Lattice(v) => {
                Some((v.iter().map(|&x| x as f64).collect(), Vec::new()))
            }
            VertexPayload::Nf(x) => {
                let m = x.minkowski();
                Some(match x.field {
                    NumberField::GaussQi => (Vec::new(), vec![(m[0], m[1])]),
                    _ => (m, Vec::new()),
                })
            }
            _ => None,
        }
    }
}

/// One of the paper's kernel functions with its parameters. `β` is always
/// handled outside the kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    /// `J_α(x−y) = ‖x−y‖^{−N−α}`, Euclidean norm.
    Lattice { alpha: f64 },
    /// `J_{α,t,λ}(x−y) = M_t(λ, x−y)^{−N−α}`. `lambda = None` means the
    /// uniform distribution.
    PowerMean { alpha: f64, t: PowerParam, lambda: Option<ProbabilityVector> },
    /// `J_{α,G_m}(x) = υ(x)^{1+α/N}` on a transverse lattice,
    /// `υ = 1/|x_1⋯x_N|`.
    Toric { alpha: f64 },
    /// The `(r,s)`-mixed toric kernel, complex coordinates squared in `υ`.
    ToricMixed { alpha: f64 },
    /// `J_{α,L}(x−y) = ‖x−y‖_{H^N_L}^{−N−α}`.
    Hier { alpha: f64, params: HierParams },
    /// `J_{α,q,x}(f−g) = |f−g|_x^{1+α}` at a finite place of `P^1`.
    FfLocal { alpha: f64, place: PlaceFF },
    /// `J_{α,q,∞}(f−g) = |f−g|_∞^{−(1+α)} = q^{−(1+α)·deg(f−g)}`; the
    /// hierarchical kernel seen at the infinite place.
    FfInfty { alpha: f64 },
    /// `J_{α,ν}(x−y) = |x−y|_ν^{1+α} = p^{−f(1+α)v_ν(x−y)}`.
    NfLocal { alpha: f64, place: NonArchPlace },
    /// `J_{α,σ}(x−y) = |σ(x)−σ(y)|^{−(1+α)n_σ}`.
    NfArch { alpha: f64, place: ArchPlace },
    /// Adelic product over the finite places of a function field; no
    /// pointwise `J` (see [`adelic_prob_ff`]).
    AdelicFf {
        field: FqField,
        alpha: Schedule,
        s_policy: SPolicyFF,
        numerator: Vec<i64>,
        tail_truncation: u32,
    },
    /// Adelic product over the non-Archimedean places of a number field
    /// (see [`adelic_prob_nf`]).
    AdelicNf { field: NumberField, alpha: Schedule, pmax: u64 },
    /// Product over the Archimedean places (see [`arch_adelic_prob`]).
    ArchAdelic { field: NumberField, alpha: f64 },
}

impl KernelSpec {
    pub fn alpha(&self) -> f64 {
        match self {
            KernelSpec::Lattice { alpha }
            | KernelSpec::PowerMean { alpha, .. }
            | KernelSpec::Toric { alpha }
            | KernelSpec::ToricMixed { alpha }
            | KernelSpec::Hier { alpha, .. }
            | KernelSpec::FfLocal { alpha, .. }
            | KernelSpec::FfInfty { alpha }
            | KernelSpec::NfLocal { alpha, .. }
            | KernelSpec::NfArch { alpha, .. }
            | KernelSpec::ArchAdelic { alpha, .. } => *alpha,
            KernelSpec::AdelicFf { alpha, .. } | KernelSpec::AdelicNf { alpha, .. } => {
                alpha.base_value()
            }
        }
    }
}

fn toric_volume_element(
    reals: &[f64],
    complexes: &[(f64, f64)],
) -> Result<f64, KernelError> {
    let mut log_prod = 0.0;
    for (i, &x) in reals.iter().enumerate() {
        if x == 0.0 {
            return Err(KernelError::ZeroCoordinate { index: i });
        }
        log_prod += x.abs().ln();
    }
    for (j, &(re, im)) in complexes.iter().enumerate() {
        let m = re.hypot(im);
        if m == 0.0 {
            return Err(KernelError::ZeroCoordinate { index: reals.len() + j });
        }
        log_prod += 2.0 * m.ln();
    }
    Ok((-log_prod).exp())
}

/// Evaluates a pointwise kernel on a pair of payloads.
pub fn kernel_eval(
    spec: &KernelSpec,
    u: &VertexPayload,
    v: &VertexPayload,
) -> Result<KernelValue, KernelError> {
    if u == v {
        return Err(KernelError::EqualPoints);
    }
    match spec {
        KernelSpec::Lattice { alpha } => {
            let (cu, cv) = coords_pair(u, v)?;
            let norm2: f64 = cu.iter().zip(&cv).map(|(a, b)| (a - b) * (a - b)).sum();
            let n = cu.len() as f64;
            Ok(KernelValue::Real(norm2.sqrt().powf(-(n + alpha))))
        }
        KernelSpec::PowerMean { alpha, t, lambda } => {
            let (reals, complexes) = split_pair(u, v)?;
            let n = reals.len() + 2 * complexes.len();
            let uniform;
            let lam = match lambda {
                Some(l) => l,
                None => {
                    uniform = ProbabilityVector::uniform(reals.len(), complexes.len());
                    &uniform
                }
            };
            let m = power_mean(*t, lam, &reals, &complexes)?;
            Ok(KernelValue::Real(m.powf(-(n as f64 + alpha))))
        }
        KernelSpec::Toric { alpha } => {
            let (reals, complexes) = split_pair(u, v)?;
            if !complexes.is_empty() {
                return Err(KernelError::PayloadMismatch { expected: "totally real coordinates" });
            }
            let n = reals.len() as f64;
            let upsilon = toric_volume_element(&reals, &complexes)?;
            Ok(KernelValue::Real(upsilon.powf(1.0 + alpha / n)))
        }
        KernelSpec::ToricMixed { alpha } => {
            let (reals, complexes) = split_pair(u, v)?;
            let n = (reals.len() + 2 * complexes.len()) as f64;
            let upsilon = toric_volume_element(&reals, &complexes)?;
            Ok(KernelValue::Real(upsilon.powf(1.0 + alpha / n)))
        }
        KernelSpec::Hier { alpha, params } => {
            let (a, b) = hier_pair(u, v)?;
            if a.params() != *params || b.params() != *params {
                return Err(KernelError::PayloadMismatch { expected: "matching hierarchical params" });
            }
            let h = h_index(a, b).ok_or(KernelError::EqualPoints)?;
            let exp_scale = f64::from(params.n) + alpha;
            let magnitude = ExactMagnitude::from_int_exp(u64::from(params.l), -(h as i64))
                .pow_f64(exp_scale);
            Ok(KernelValue::Exact(magnitude))
        }
        KernelSpec::FfLocal { alpha, place } => {
            let (f, g) = poly_pair(u, v)?;
            let d = f.sub(g)?;
            if d.is_zero() {
                return Err(KernelError::EqualPoints);
            }
            let abs = abs_at_place(&d, place)?;
            Ok(KernelValue::Exact(abs.pow_f64(1.0 + alpha)))
        }
        KernelSpec::FfInfty { alpha } => {
            let (f, g) = poly_pair(u, v)?;
            let d = f.sub(g)?;
            if d.is_zero() {
                return Err(KernelError::EqualPoints);
            }
            let abs_inf = abs_at_place(&d, &PlaceFF::infinity())?;
            Ok(KernelValue::Exact(abs_inf.pow_f64(-(1.0 + alpha))))
        }
        KernelSpec::NfLocal { alpha, place } => {
            let (x, y) = nf_pair(u, v)?;
            let d = x.sub(y)?;
            if d.is_zero() {
                return Err(KernelError::EqualPoints);
            }
            let place = PlaceNF::NonArch(place.clone());
            let val = v_nu(&d, &place)?;
            let na = place.non_arch().unwrap();
            let abs = ExactMagnitude::from_int_exp(na.p, -(i64::from(na.f) * val));
            Ok(KernelValue::Exact(abs.pow_f64(1.0 + alpha)))
        }
        KernelSpec::NfArch { alpha, place } => {
            let (x, y) = nf_pair(u, v)?;
            let d = x.sub(y)?;
            if d.is_zero() {
                return Err(KernelError::EqualPoints);
            }
            let m = d.arch_abs()[place.index as usize];
            if m == 0.0 {
                return Err(KernelError::ZeroCoordinate { index: place.index as usize });
            }
            Ok(KernelValue::Real(m.powf(-(1.0 + alpha) * f64::from(place.n_sigma))))
        }
        KernelSpec::AdelicFf { .. } | KernelSpec::AdelicNf { .. } | KernelSpec::ArchAdelic { .. } => {
            Err(KernelError::NoPointwiseKernel)
        }
    }
}

fn coords_pair(
    u: &VertexPayload,
    v: &VertexPayload,
) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    match (u.coords(), v.coords()) {
        (Some(a), Some(b)) if a.len() == b.len() => Ok((a, b)),
        _ => Err(KernelError::PayloadMismatch { expected: "lattice or number-field" }),
    }
}

fn split_pair(
    u: &VertexPayload,
    v: &VertexPayload,
) -> Result<(Vec<f64>, Vec<(f64, f64)>), KernelError> {
    let (ru, cu) = u
        .real_complex_split()
        .ok_or(KernelError::PayloadMismatch { expected: "lattice or number-field" })?;
    let (rv, cv) = v
        .real_complex_split()
        .ok_or(KernelError::PayloadMismatch { expected: "lattice or number-field" })?;
    if ru.len() != rv.len() || cu.len() != cv.len() {
        return Err(KernelError::PayloadMismatch { expected: "matching coordinate shapes" });
    }
    let reals = ru.iter().zip(&rv).map(|(a, b)| a - b).collect();
    let complexes = cu
        .iter()
        .zip(&cv)
        .map(|(&(ar, ai), &(br, bi))| (ar - br, ai - bi))
        .collect();
    Ok((reals, complexes))
}

fn hier_pair<'a>(
    u: &'a VertexPayload,
    v: &'a VertexPayload,
) -> Result<(&'a HierPoint, &'a HierPoint), KernelError> {
    match (u, v) {
        (VertexPayload::Hier(a), VertexPayload::Hier(b)) => Ok((a, b)),
        _ => Err(KernelError::PayloadMismatch { expected: "hierarchical" }),
    }
}

fn poly_pair<'a>(
    u: &'a VertexPayload,
    v: &'a VertexPayload,
) -> Result<(&'a Poly, &'a Poly), KernelError> {
    match (u, v) {
        (VertexPayload::Poly(a), VertexPayload::Poly(b)) => Ok((a, b)),
        _ => Err(KernelError::PayloadMismatch { expected: "polynomial" }),
    }
}

fn nf_pair<'a>(
    u: &'a VertexPayload,
    v: &'a VertexPayload,
) -> Result<(&'a NfElement, &'a NfElement), KernelError> {
    match (u, v) {
        (VertexPayload::Nf(a), VertexPayload::Nf(b)) => Ok((a, b)),
        _ => Err(KernelError::PayloadMismatch { expected: "number-field" }),
    }
}

#[cfg(test)]
mod tests;
