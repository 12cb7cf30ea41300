//! Per-pair edge-probability evaluation, specialized per kernel so the
//! quadratic pair sweep stays cheap: coordinate kernels work on flattened
//! Minkowski data, ultrametric kernels on digit arrays with a lookup table
//! of `J` values, and only the adelic models pay for full per-pair
//! breakdowns.

use super::vertex::{ModelBounds, VertexSet};
use super::EngineError;
use crate::arith_ff::{nu_at_place, enumerate_irreducibles, PlaceFF, Poly};
use crate::arith_nf::{transversality_check, v_nu, NfElement, NumberField, PlaceNF};
use crate::kernels::{
    adelic_prob_ff, adelic_prob_nf, arch_adelic_prob, BaseMode, KernelError, KernelSpec,
    PowerParam, ProbabilityVector, SPolicyFF, Schedule, VertexPayload,
};

/// Base convention requested for a run; the concrete base `q` is resolved
/// from the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseSpec {
    Natural,
    BaseQ,
}

#[derive(Debug, Clone, Copy)]
enum ResolvedBase {
    Natural,
    /// Stores `ln q`.
    BaseQ(f64),
    /// Adelic products resolve `q` per place internally.
    PerPlaceBaseQ,
}

/// What `q` means for this kernel when base-q sampling is requested.
enum BaseQHint {
    Unsupported,
    Fixed(f64),
    PerPlace,
}

enum CoordKernel {
    Lattice { exponent: f64 },
    PowerMean { t: PowerParam, weights: Vec<f64>, exponent: f64 },
    Toric { exponent: f64 },
    NfArch { offset: usize, complex: bool, exponent: f64 },
}

enum ProbeInner {
    Coords { r: usize, s: usize, flat: Vec<f64>, kind: CoordKernel },
    /// Ultrametric kernels: `J = jtable[index]` where `index` is found by
    /// scanning fixed-stride digit arrays (from the top for distances,
    /// from the bottom for valuations at `t`).
    Ultra { digits: Vec<u32>, stride: usize, group: usize, jtable: Vec<f64>, scan_top: bool },
    PolyPlace { polys: Vec<Poly>, place: PlaceFF, log_q: f64, degree: f64, one_alpha: f64 },
    NfPlace { elements: Vec<NfElement>, place: PlaceNF, log_p: f64, inertia: f64, one_alpha: f64 },
    AdelicFf {
        polys: Vec<Poly>,
        schedule: Schedule,
        candidates: Vec<PlaceFF>,
        numerator: Vec<i64>,
        tail_truncation: u32,
    },
    AdelicNf { elements: Vec<NfElement>, schedule: Schedule, pmax: u64 },
    ArchAdelic { elements: Vec<NfElement>, alpha: f64 },
}

pub struct EdgeProbe {
    inner: ProbeInner,
    base: ResolvedBase,
}

fn setup_err(e: KernelError) -> EngineError {
    EngineError::KernelSetup(e)
}

fn coord_layout(payloads: &[VertexPayload]) -> Result<(usize, usize, Vec<f64>), EngineError> {
    let split = |p: &VertexPayload| -> Option<(usize, usize, Vec<f64>)> {
        match p {
            VertexPayload::Lattice(v) => {
                Some((v.len(), 0, v.iter().map(|&x| x as f64).collect()))
            }
            VertexPayload::Nf(x) => {
                let m = x.minkowski();
                match x.field {
                    NumberField::GaussQi => Some((0, 1, m)),
                    _ => Some((m.len(), 0, m)),
                }
            }
            _ => None,
        }
    };
    let (r, s, first) = split(&payloads[0]).ok_or_else(|| {
        setup_err(KernelError::PayloadMismatch { expected: "lattice or number-field" })
    })?;
    let stride = r + 2 * s;
    let mut flat = Vec::with_capacity(stride * payloads.len());
    flat.extend_from_slice(&first);
    for p in &payloads[1..] {
        let (pr, ps, coords) = split(p).ok_or_else(|| {
            setup_err(KernelError::PayloadMismatch { expected: "lattice or number-field" })
        })?;
        if (pr, ps) != (r, s) {
            return Err(setup_err(KernelError::PayloadMismatch {
                expected: "uniform coordinate shapes",
            }));
        }
        flat.extend_from_slice(&coords);
    }
    Ok((r, s, flat))
}

fn poly_digits(payloads: &[VertexPayload]) -> Result<(Vec<u32>, usize, f64), EngineError> {
    let mut stride = 1usize;
    let mut q = None;
    for p in payloads {
        match p {
            VertexPayload::Poly(f) => {
                stride = stride.max(f.coeffs().len());
                match q {
                    None => q = Some(f.field().q()),
                    Some(fq) if fq == f.field().q() => {}
                    _ => {
                        return Err(setup_err(KernelError::PayloadMismatch {
                            expected: "one field",
                        }))
                    }
                }
            }
            _ => {
                return Err(setup_err(KernelError::PayloadMismatch { expected: "polynomial" }))
            }
        }
    }
    let q = q.ok_or(EngineError::EmptyVertexSet)?;
    let mut digits = vec![0u32; stride * payloads.len()];
    for (idx, p) in payloads.iter().enumerate() {
        if let VertexPayload::Poly(f) = p {
            for (k, &c) in f.coeffs().iter().enumerate() {
                digits[idx * stride + k] = u32::from(c);
            }
        }
    }
    Ok((digits, stride, f64::from(q)))
}

fn require_transverse(vs: &VertexSet) -> Result<(), EngineError> {
    match &vs.bounds {
        ModelBounds::LatticeBox { dim: 1, .. } => Ok(()),
        ModelBounds::LatticeBox { dim, .. } => Err(EngineError::NonTransverseModel(format!(
            "Z^{dim} meets the coordinate hyperplanes away from 0"
        ))),
        ModelBounds::NfBox { field, radius } => {
            // differences of box elements live in the doubled box
            if transversality_check(*field, 2 * radius) {
                Ok(())
            } else {
                Err(EngineError::NonTransverseModel(format!(
                    "{} box of radius {radius} is not transverse",
                    field.name()
                )))
            }
        }
        other => Err(EngineError::NonTransverseModel(format!(
            "toric kernels need an embedded lattice, got {}",
            other.tag()
        ))),
    }
}

impl EdgeProbe {
    pub fn new(vs: &VertexSet, spec: &KernelSpec, base: BaseSpec) -> Result<Self, EngineError> {
        if vs.is_empty() {
            return Err(EngineError::EmptyVertexSet);
        }
        let payloads = &vs.payloads;
        let inner = match spec {
            KernelSpec::Lattice { alpha } => {
                let (r, s, flat) = coord_layout(payloads)?;
                let n = (r + 2 * s) as f64;
                ProbeInner::Coords {
                    r,
                    s,
                    flat,
                    kind: CoordKernel::Lattice { exponent: n + alpha },
                }
            }
            KernelSpec::PowerMean { alpha, t, lambda } => {
                let (r, s, flat) = coord_layout(payloads)?;
                let n = (r + 2 * s) as f64;
                let lam = match lambda {
                    Some(l) => l.clone(),
                    None => ProbabilityVector::uniform(r, s),
                };
                let weights = lam.effective_weights(r, s).map_err(setup_err)?;
                ProbeInner::Coords {
                    r,
                    s,
                    flat,
                    kind: CoordKernel::PowerMean { t: *t, weights, exponent: n + alpha },
                }
            }
            KernelSpec::Toric { alpha } | KernelSpec::ToricMixed { alpha } => {
                require_transverse(vs)?;
                let (r, s, flat) = coord_layout(payloads)?;
                if matches!(spec, KernelSpec::Toric { .. }) && s != 0 {
                    return Err(setup_err(KernelError::PayloadMismatch {
                        expected: "totally real coordinates",
                    }));
                }
                let n = (r + 2 * s) as f64;
                ProbeInner::Coords {
                    r,
                    s,
                    flat,
                    kind: CoordKernel::Toric { exponent: 1.0 + alpha / n },
                }
            }
            KernelSpec::NfArch { alpha, place } => {
                let (r, s, flat) = coord_layout(payloads)?;
                let complex = s > 0 && place.index as usize >= r;
                let offset = if complex { r + 2 * (place.index as usize - r) } else { place.index as usize };
                ProbeInner::Coords {
                    r,
                    s,
                    flat,
                    kind: CoordKernel::NfArch {
                        offset,
                        complex,
                        exponent: (1.0 + alpha) * f64::from(place.n_sigma),
                    },
                }
            }
            KernelSpec::Hier { alpha, params } => {
                let mut max_blocks = 1usize;
                for p in payloads {
                    match p {
                        VertexPayload::Hier(x) if x.params() == *params => {
                            max_blocks = max_blocks.max(x.blocks().len());
                        }
                        _ => {
                            return Err(setup_err(KernelError::PayloadMismatch {
                                expected: "hierarchical",
                            }))
                        }
                    }
                }
                let group = params.n as usize;
                let stride = max_blocks * group;
                let mut digits = vec![0u32; stride * payloads.len()];
                for (idx, p) in payloads.iter().enumerate() {
                    if let VertexPayload::Hier(x) = p {
                        for (b, block) in x.blocks().iter().enumerate() {
                            for (k, &d) in block.iter().enumerate() {
                                digits[idx * stride + b * group + k] = d;
                            }
                        }
                    }
                }
                let l = f64::from(params.l);
                let scale = f64::from(params.n) + alpha;
                let jtable = (0..max_blocks)
                    .map(|h| l.powf(-(h as f64) * scale))
                    .collect();
                ProbeInner::Ultra { digits, stride, group, jtable, scan_top: true }
            }
            KernelSpec::FfInfty { alpha } => {
                let (digits, stride, q) = poly_digits(payloads)?;
                let jtable = (0..stride).map(|d| q.powf(-(d as f64) * (1.0 + alpha))).collect();
                ProbeInner::Ultra { digits, stride, group: 1, jtable, scan_top: true }
            }
            KernelSpec::FfLocal { alpha, place } => {
                let is_t = place
                    .pi()
                    .map(|pi| pi.coeffs() == [0, 1])
                    .unwrap_or(false);
                if is_t {
                    // ν_t(f−g) is the first differing coefficient index
                    let (digits, stride, q) = poly_digits(payloads)?;
                    let jtable =
                        (0..stride).map(|v| q.powf(-(v as f64) * (1.0 + alpha))).collect();
                    ProbeInner::Ultra { digits, stride, group: 1, jtable, scan_top: false }
                } else {
                    let polys = payload_polys(payloads)?;
                    let q = f64::from(polys[0].field().q());
                    ProbeInner::PolyPlace {
                        polys,
                        place: place.clone(),
                        log_q: q.ln(),
                        degree: f64::from(place.degree()),
                        one_alpha: 1.0 + alpha,
                    }
                }
            }
            KernelSpec::NfLocal { alpha, place } => {
                let elements = payload_nf(payloads)?;
                ProbeInner::NfPlace {
                    elements,
                    place: PlaceNF::NonArch(place.clone()),
                    log_p: (place.p as f64).ln(),
                    inertia: f64::from(place.f),
                    one_alpha: 1.0 + alpha,
                }
            }
            KernelSpec::AdelicFf { field, alpha, s_policy, numerator, tail_truncation } => {
                let polys = payload_polys(payloads)?;
                if polys[0].field() != field {
                    return Err(setup_err(KernelError::PayloadMismatch { expected: "one field" }));
                }
                let candidates = match s_policy {
                    SPolicyFF::Explicit(places) => places.clone(),
                    SPolicyFF::DivisorSupport { max_degree } => {
                        enumerate_irreducibles(field, *max_degree).map_err(|e| setup_err(e.into()))?
                    }
                };
                ProbeInner::AdelicFf {
                    polys,
                    schedule: *alpha,
                    candidates,
                    numerator: numerator.clone(),
                    tail_truncation: *tail_truncation,
                }
            }
            KernelSpec::AdelicNf { field, alpha, pmax } => {
                let elements = payload_nf(payloads)?;
                if elements[0].field != *field {
                    return Err(setup_err(KernelError::PayloadMismatch { expected: "one field" }));
                }
                ProbeInner::AdelicNf { elements, schedule: *alpha, pmax: *pmax }
            }
            KernelSpec::ArchAdelic { field, alpha } => {
                let elements = payload_nf(payloads)?;
                if elements[0].field != *field {
                    return Err(setup_err(KernelError::PayloadMismatch { expected: "one field" }));
                }
                ProbeInner::ArchAdelic { elements, alpha: *alpha }
            }
        };
        let hint = match spec {
            KernelSpec::Hier { params, .. } => BaseQHint::Fixed(f64::from(params.l)),
            KernelSpec::FfLocal { place, .. } => match place.pi() {
                Some(pi) => BaseQHint::Fixed(f64::from(pi.field().q())),
                None => BaseQHint::Unsupported,
            },
            KernelSpec::FfInfty { .. } => match &vs.payloads[0] {
                VertexPayload::Poly(f) => BaseQHint::Fixed(f64::from(f.field().q())),
                _ => BaseQHint::Unsupported,
            },
            KernelSpec::NfLocal { place, .. } => BaseQHint::Fixed(place.p as f64),
            KernelSpec::AdelicFf { .. } | KernelSpec::AdelicNf { .. } => BaseQHint::PerPlace,
            _ => BaseQHint::Unsupported,
        };
        let resolved = match (base, hint) {
            (BaseSpec::Natural, _) => ResolvedBase::Natural,
            (BaseSpec::BaseQ, BaseQHint::Fixed(q)) => ResolvedBase::BaseQ(q.ln()),
            (BaseSpec::BaseQ, BaseQHint::PerPlace) => ResolvedBase::PerPlaceBaseQ,
            (BaseSpec::BaseQ, BaseQHint::Unsupported) => {
                return Err(EngineError::UnsupportedBase(
                    "base-q sampling needs a non-Archimedean kernel",
                ))
            }
        };
        Ok(EdgeProbe { inner, base: resolved })
    }

    /// Edge inclusion probability for the pair `(i, j)` at inverse
    /// temperature `beta`.
    pub fn prob(&self, beta: f64, i: u32, j: u32) -> Result<f64, EngineError> {
        let kernel_err = |e: KernelError| EngineError::Kernel { i, j, source: e };
        let (a, b) = (i as usize, j as usize);
        match &self.inner {
            ProbeInner::Coords { r, s, flat, kind } => {
                let stride = r + 2 * s;
                let u = &flat[a * stride..(a + 1) * stride];
                let v = &flat[b * stride..(b + 1) * stride];
                let j_val = coord_j(kind, *r, *s, u, v).map_err(kernel_err)?;
                Ok(self.include(beta, j_val))
            }
            ProbeInner::Ultra { digits, stride, group, jtable, scan_top } => {
                let u = &digits[a * stride..(a + 1) * stride];
                let v = &digits[b * stride..(b + 1) * stride];
                let idx = if *scan_top {
                    (0..*stride).rev().find(|&k| u[k] != v[k])
                } else {
                    (0..*stride).find(|&k| u[k] != v[k])
                };
                let idx = idx.ok_or_else(|| kernel_err(KernelError::EqualPoints))?;
                Ok(self.include(beta, jtable[idx / group]))
            }
            ProbeInner::PolyPlace { polys, place, log_q, degree, one_alpha } => {
                let d = polys[a].sub(&polys[b]).map_err(|e| kernel_err(e.into()))?;
                if d.is_zero() {
                    return Err(kernel_err(KernelError::EqualPoints));
                }
                let nu = nu_at_place(&d, place).map_err(|e| kernel_err(e.into()))?;
                let j_val = (-one_alpha * degree * nu as f64 * log_q).exp();
                Ok(self.include(beta, j_val))
            }
            ProbeInner::NfPlace { elements, place, log_p, inertia, one_alpha } => {
                let d = elements[a].sub(&elements[b]).map_err(|e| kernel_err(e.into()))?;
                if d.is_zero() {
                    return Err(kernel_err(KernelError::EqualPoints));
                }
                let v = v_nu(&d, place).map_err(|e| kernel_err(e.into()))?;
                let j_val = (-one_alpha * inertia * v as f64 * log_p).exp();
                Ok(self.include(beta, j_val))
            }
            ProbeInner::AdelicFf { polys, schedule, candidates, numerator, tail_truncation } => {
                let mode = self.adelic_mode();
                let bd = adelic_prob_ff(
                    beta,
                    *schedule,
                    &polys[a],
                    &polys[b],
                    &SPolicyFF::Explicit(candidates.clone()),
                    mode,
                    numerator,
                    *tail_truncation,
                )
                .map_err(kernel_err)?;
                Ok(bd.total)
            }
            ProbeInner::AdelicNf { elements, schedule, pmax } => {
                let mode = self.adelic_mode();
                let bd = adelic_prob_nf(beta, *schedule, &elements[a], &elements[b], *pmax, mode)
                    .map_err(kernel_err)?;
                Ok(bd.total)
            }
            ProbeInner::ArchAdelic { elements, alpha } => {
                let out = arch_adelic_prob(beta, *alpha, &elements[a], &elements[b])
                    .map_err(kernel_err)?;
                Ok(out.prob)
            }
        }
    }

    #[inline]
    fn include(&self, beta: f64, j: f64) -> f64 {
        match self.base {
            ResolvedBase::Natural => -(-beta * j).exp_m1(),
            ResolvedBase::BaseQ(ln_q) => -(-beta * j * ln_q).exp_m1(),
            // per-place bases never reach the pointwise path
            ResolvedBase::PerPlaceBaseQ => -(-beta * j).exp_m1(),
        }
    }

    fn adelic_mode(&self) -> BaseMode {
        match self.base {
            ResolvedBase::Natural => BaseMode::Natural,
            ResolvedBase::BaseQ(_) | ResolvedBase::PerPlaceBaseQ => BaseMode::BaseQ,
        }
    }
}

fn coord_j(kind: &CoordKernel, r: usize, s: usize, u: &[f64], v: &[f64]) -> Result<f64, KernelError> {
    match kind {
        CoordKernel::Lattice { exponent } => {
            let norm2: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
            if norm2 == 0.0 {
                return Err(KernelError::EqualPoints);
            }
            Ok(norm2.powf(-exponent / 2.0))
        }
        CoordKernel::PowerMean { t, weights, exponent } => {
            let mut moduli = [0.0f64; 8];
            let count = r + s;
            debug_assert!(count <= 8, "power-mean probe supports up to 8 places");
            for k in 0..r {
                let d = (u[k] - v[k]).abs();
                if d == 0.0 {
                    return Err(KernelError::ZeroCoordinate { index: k });
                }
                moduli[k] = d;
            }
            for k in 0..s {
                let (re, im) = (u[r + 2 * k] - v[r + 2 * k], u[r + 2 * k + 1] - v[r + 2 * k + 1]);
                let m = re.hypot(im);
                if m == 0.0 {
                    return Err(KernelError::ZeroCoordinate { index: r + k });
                }
                moduli[r + k] = m;
            }
            let moduli = &moduli[..count];
            let m = match t {
                PowerParam::PlusInf => moduli.iter().cloned().fold(f64::MIN, f64::max),
                PowerParam::MinusInf => moduli.iter().cloned().fold(f64::MAX, f64::min),
                PowerParam::Finite(t) if *t == 0.0 => {
                    let lg: f64 = moduli.iter().zip(weights).map(|(m, w)| w * m.ln()).sum();
                    lg.exp()
                }
                PowerParam::Finite(t) => {
                    let reference = if *t > 0.0 {
                        moduli.iter().cloned().fold(f64::MIN, f64::max)
                    } else {
                        moduli.iter().cloned().fold(f64::MAX, f64::min)
                    };
                    let sum: f64 = moduli
                        .iter()
                        .zip(weights)
                        .map(|(m, w)| w * (m / reference).powf(*t))
                        .sum();
                    reference * sum.powf(1.0 / t)
                }
            };
            Ok(m.powf(-exponent))
        }
        CoordKernel::Toric { exponent } => {
            let mut log_upsilon = 0.0;
            for k in 0..r {
                let d = (u[k] - v[k]).abs();
                if d == 0.0 {
                    return Err(KernelError::ZeroCoordinate { index: k });
                }
                log_upsilon -= d.ln();
            }
            for k in 0..s {
                let (re, im) = (u[r + 2 * k] - v[r + 2 * k], u[r + 2 * k + 1] - v[r + 2 * k + 1]);
                let m = re.hypot(im);
                if m == 0.0 {
                    return Err(KernelError::ZeroCoordinate { index: r + k });
                }
                log_upsilon -= 2.0 * m.ln();
            }
            Ok((log_upsilon * exponent).exp())
        }
        CoordKernel::NfArch { offset, complex, exponent } => {
            let m = if *complex {
                (u[*offset] - v[*offset]).hypot(u[*offset + 1] - v[*offset + 1])
            } else {
                (u[*offset] - v[*offset]).abs()
            };
            if m == 0.0 {
                return Err(KernelError::ZeroCoordinate { index: *offset });
            }
            Ok(m.powf(-exponent))
        }
    }
}

fn payload_polys(payloads: &[VertexPayload]) -> Result<Vec<Poly>, EngineError> {
    payloads
        .iter()
        .map(|p| match p {
            VertexPayload::Poly(f) => Ok(f.clone()),
            _ => Err(setup_err(KernelError::PayloadMismatch { expected: "polynomial" })),
        })
        .collect()
}

fn payload_nf(payloads: &[VertexPayload]) -> Result<Vec<NfElement>, EngineError> {
    payloads
        .iter()
        .map(|p| match p {
            VertexPayload::Nf(x) => Ok(x.clone()),
            _ => Err(setup_err(KernelError::PayloadMismatch { expected: "number-field" })),
        })
        .collect()
}

