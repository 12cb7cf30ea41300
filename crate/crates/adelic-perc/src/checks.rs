//! Named verification suites: executable forms of the identities and
//! inequalities the models satisfy. Each check returns a pass/fail report;
//! the CLI `verify` and `diagram` commands and the acceptance suite all
//! run these.

use num_bigint::BigInt;

use crate::arith_ff::{
    enumerate_irreducibles, nu_at_place, product_formula_exponents, zeta_curve, FqField, PlaceFF,
    Poly, ZetaMode,
};
use crate::arith_nf::{
    dedekind_zeta, dperp, padic_expansion, product_formula_nf, split_prime, v_nu, NfElement,
    NumberField, PlaceNF,
};
use crate::engine::rng::SplitMix64;
use crate::engine::{build_vertex_set, compare_coupled, BaseSpec, ModelBounds};
use crate::hierlattice::{
    h_index, poly_to_hier, reduce_dimension, ultrametric, HierParams, HierPoint,
};
use crate::kernels::{
    adelic_prob_ff, arch_adelic_prob, beta_threshold_ff, beta_threshold_nf, inclusion_prob,
    kernel_eval, power_mean, BaseMode, KernelSpec, PowerParam, ProbBase, ProbabilityVector,
    SPolicyFF, Schedule, ThresholdKind, VertexPayload,
};
use crate::magnitude::ExactMagnitude;

/// Outcome of one named check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        CheckReport { name: name.to_string(), pass, detail }
    }
}

/// Draws a random polynomial over `field` as a product of monic
/// irreducibles from `places` (times a random unit), keeping the degree
/// at most `max_degree`. The divisor support is then known by
/// construction, which is what makes the product formula checkable
/// without factorization.
pub fn random_smooth_poly(
    field: &FqField,
    places: &[PlaceFF],
    max_degree: usize,
    rng: &mut SplitMix64,
) -> Poly {
    let unit = 1 + rng.below(u64::from(field.q()) - 1) as u8;
    let mut f = Poly::constant(field.clone(), unit);
    loop {
        let place = &places[rng.below(places.len() as u64) as usize];
        let pi = place.pi().expect("finite place");
        let deg = f.degree().unwrap_or(0) + pi.degree().unwrap();
        if deg > max_degree {
            return f;
        }
        f = f.mul(pi).unwrap();
        if rng.below(4) == 0 {
            return f;
        }
    }
}

/// Adelic product formula over `F_2[t]` and `F_3[t]`: the exponent sum
/// over all places vanishes exactly, for `samples` smooth polynomials of
/// degree ≤ 32 per field.
pub fn check_product_formula_ff(samples: u32, seed: u64) -> CheckReport {
    let mut rng = SplitMix64::new(seed);
    let mut checked = 0u32;
    for (q, support_degree) in [(2u32, 8u32), (3, 6)] {
        let field = FqField::prime(q).unwrap();
        let finite = enumerate_irreducibles(&field, support_degree).unwrap();
        let mut places = finite.clone();
        places.push(PlaceFF::infinity());
        for _ in 0..samples {
            let f = random_smooth_poly(&field, &finite, 32, &mut rng);
            match product_formula_exponents(&f, &places) {
                Ok(0) => checked += 1,
                other => {
                    return CheckReport::new(
                        "product-formula-ff",
                        false,
                        format!("q={q}, f={f}: got {other:?}"),
                    )
                }
            }
        }
    }
    CheckReport::new(
        "product-formula-ff",
        true,
        format!("{checked}/{} exponent sums exactly zero", 2 * samples),
    )
}

/// Adelic norm identity over `Q`, `Q(i)`, `Q(√2)`: empty multiset
/// difference for every nonzero element of the radius-30 box.
pub fn check_product_formula_nf() -> CheckReport {
    let mut checked = 0u64;
    for field in [NumberField::Rationals, NumberField::GaussQi, NumberField::RealQuadSqrt2] {
        for a in -30i64..=30 {
            let b_range: Vec<i64> = if field == NumberField::Rationals {
                vec![0]
            } else {
                (-30..=30).collect()
            };
            for &b in &b_range {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = NfElement::new(field, a, b);
                match product_formula_nf(&x, 10_000) {
                    Ok(diff) if diff.is_empty() => checked += 1,
                    other => {
                        return CheckReport::new(
                            "product-formula-nf",
                            false,
                            format!("{} x={x}: got {other:?}", field.name()),
                        )
                    }
                }
            }
        }
    }
    CheckReport::new("product-formula-nf", true, format!("{checked} elements, all differences empty"))
}

/// Power-mean monotonicity in `t` plus the `t → ±∞` limits.
pub fn check_power_mean_monotonicity(samples: u32, seed: u64) -> CheckReport {
    let mut rng = SplitMix64::new(seed);
    let grid = [-8.0, -4.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0];
    for k in 0..samples {
        let n = rng.range_i64(2, 8) as usize;
        let mut weights: Vec<f64> = (0..n).map(|_| rng.range_f64(0.05, 1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let lam = ProbabilityVector(weights);
        let xs: Vec<f64> = (0..n).map(|_| rng.range_f64(0.2, 9.0)).collect();
        let mut prev = f64::MIN;
        for &t in &grid {
            let m = power_mean(PowerParam::Finite(t), &lam, &xs, &[]).unwrap();
            if m < prev - 1e-12 {
                return CheckReport::new(
                    "monotonicity",
                    false,
                    format!("sample {k}: M_t dropped at t={t}: {m} < {prev}"),
                );
            }
            prev = m;
        }
        let hi = power_mean(PowerParam::Finite(100.0), &lam, &xs, &[]).unwrap();
        let lo = power_mean(PowerParam::Finite(-100.0), &lam, &xs, &[]).unwrap();
        let max = power_mean(PowerParam::PlusInf, &lam, &xs, &[]).unwrap();
        let min = power_mean(PowerParam::MinusInf, &lam, &xs, &[]).unwrap();
        if (hi - max).abs() > 1e-6 * max || (lo - min).abs() > 1e-6 * min.max(1e-9) {
            return CheckReport::new(
                "monotonicity",
                false,
                format!("sample {k}: t=±100 limits off: {hi} vs {max}, {lo} vs {min}"),
            );
        }
    }
    CheckReport::new(
        "monotonicity",
        true,
        format!("{samples} samples nondecreasing along t, limits within 1e-6"),
    )
}

/// AM–GM comparison: toric dominates standard lattice percolation on the
/// `Z[√2]` box, pointwise and under coupled sampling.
pub fn check_am_gm(radius: i64, seed_count: u64, betas: &[f64]) -> CheckReport {
    let vs = build_vertex_set(
        ModelBounds::NfBox { field: NumberField::RealQuadSqrt2, radius },
        None,
    )
    .unwrap();
    let standard = KernelSpec::Lattice { alpha: 1.0 };
    let toric = KernelSpec::Toric { alpha: 1.0 };
    let seeds: Vec<u64> = (1..=seed_count).collect();
    let mut detail = String::new();
    for &beta in betas {
        match compare_coupled(&vs, &standard, &toric, beta, BaseSpec::Natural, &seeds, 1) {
            Ok(report) => {
                if report.inclusion_ok != report.seeds || report.dominance_ok != report.seeds {
                    return CheckReport::new(
                        "am-gm",
                        false,
                        format!(
                            "β={beta}: inclusion {}/{}, dominance {}/{}",
                            report.inclusion_ok, report.seeds, report.dominance_ok, report.seeds
                        ),
                    );
                }
                detail.push_str(&format!(
                    "β={beta}: {}/{} inclusion over {} pairs; ",
                    report.inclusion_ok, report.seeds, report.pairs
                ));
            }
            Err(e) => return CheckReport::new("am-gm", false, format!("β={beta}: {e}")),
        }
    }
    CheckReport::new("am-gm", true, detail)
}

/// `H^1_q ≅ F_q[t]`: the ultrametric equals `q^{deg(f−g)} = |f−g|_∞`
/// exactly, exhaustively below degree `max_degree` at q = 2.
pub fn check_iso(max_degree: u32) -> CheckReport {
    let field = FqField::prime(2).unwrap();
    let params = HierParams::new(2, 1).unwrap();
    let vs = build_vertex_set(
        ModelBounds::PolyBox { field: field.clone(), max_degree },
        Some(1 << 21),
    )
    .unwrap();
    let polys: Vec<&Poly> = vs
        .payloads
        .iter()
        .map(|p| match p {
            VertexPayload::Poly(f) => f,
            _ => unreachable!(),
        })
        .collect();
    let points: Vec<HierPoint> =
        polys.iter().map(|f| poly_to_hier(f, params).unwrap()).collect();
    let mut pairs = 0u64;
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let d = polys[i].sub(polys[j]).unwrap();
            let expected = ExactMagnitude::from_int_exp(2, d.degree().unwrap() as i64);
            let dist = ultrametric(&points[i], &points[j]).unwrap();
            if dist != expected {
                return CheckReport::new(
                    "iso",
                    false,
                    format!("f={}, g={}: {dist} ≠ {expected}", polys[i], polys[j]),
                );
            }
            pairs += 1;
        }
    }
    CheckReport::new("iso", true, format!("{pairs} pairs exact (deg < {max_degree}, q=2)"))
}

/// `d⊥(x, y) = v_p(x − y)`: exhaustive below `3^8` at p = 3, plus random
/// 64-bit pairs at p ∈ {2, 5}. The valuation oracle is repeated division.
pub fn check_dperp(random_pairs: u32, seed: u64) -> CheckReport {
    fn v_p_div(mut n: i128, p: i128) -> u32 {
        let mut v = 0;
        while n % p == 0 {
            v += 1;
            n /= p;
        }
        v
    }
    let limit = 3i128.pow(8);
    let mut pairs = 0u64;
    for x in 0..limit {
        for y in (x + 1)..limit {
            let expect = v_p_div(y - x, 3);
            let got = dperp(&BigInt::from(x), &BigInt::from(y), 3, 14).unwrap();
            if got != expect {
                return CheckReport::new(
                    "dperp",
                    false,
                    format!("x={x}, y={y}: d⊥={got}, v₃={expect}"),
                );
            }
            pairs += 1;
        }
    }
    let mut rng = SplitMix64::new(seed);
    for &p in &[2u64, 5] {
        for _ in 0..random_pairs {
            let x = rng.next_u64() as i128;
            let mut y = rng.next_u64() as i128;
            if x == y {
                y += 1;
            }
            let expect = v_p_div(x - y, p as i128);
            let depth = expect + 2;
            let got = dperp(&BigInt::from(x), &BigInt::from(y), p, depth).unwrap();
            if got != expect {
                return CheckReport::new(
                    "dperp",
                    false,
                    format!("p={p}, x={x}, y={y}: d⊥={got}, v={expect}"),
                );
            }
            pairs += 1;
        }
    }
    CheckReport::new("dperp", true, format!("{pairs} pairs exact"))
}

/// Zeta convergence: the truncated Euler products against the closed
/// form (function field) and the classical constants (number fields).
pub fn check_zeta() -> CheckReport {
    let f2 = FqField::prime(2).unwrap();
    let truncated = zeta_curve(&f2, 2.0, ZetaMode::Truncated { max_degree: 16 }, &[1], &[]).unwrap();
    let closed = 8.0 / 3.0;
    if (truncated - closed).abs() >= 1e-3 {
        return CheckReport::new("zeta", false, format!("Z(P¹/F₂, 2): {truncated} vs {closed}"));
    }
    let zq = dedekind_zeta(NumberField::Rationals, 2.0, 100_000, &[]).unwrap();
    let target = std::f64::consts::PI.powi(2) / 6.0;
    if (zq - target).abs() >= 1e-4 {
        return CheckReport::new("zeta", false, format!("ζ_Q(2): {zq} vs {target}"));
    }
    // ζ_{Q(i)} = ζ_Q · L(s, χ₋₄): regrouping the Euler factors is exact,
    // so the truncated products must agree to rounding
    let pmax = 100_000;
    let zqi = dedekind_zeta(NumberField::GaussQi, 2.0, pmax, &[]).unwrap();
    let mut l_chi = 1.0f64;
    for p in crate::arith_nf::primes_up_to(pmax) {
        let chi = match p % 4 {
            1 => 1.0,
            3 => -1.0,
            _ => 0.0, // p = 2
        };
        if chi != 0.0 {
            l_chi /= 1.0 - chi * (p as f64).powf(-2.0);
        }
    }
    let zq_trunc = dedekind_zeta(NumberField::Rationals, 2.0, pmax, &[]).unwrap();
    if (zqi - zq_trunc * l_chi).abs() > 1e-12 * zqi {
        return CheckReport::new(
            "zeta",
            false,
            format!("ζ_Qi(2) = {zqi} but ζ·L = {}", zq_trunc * l_chi),
        );
    }
    let catalan = 0.915_965_594_177_219;
    if (zqi - target * catalan).abs() > 2e-3 {
        return CheckReport::new(
            "zeta",
            false,
            format!("ζ_Qi(2) = {zqi} vs ζ(2)·G = {}", target * catalan),
        );
    }
    CheckReport::new(
        "zeta",
        true,
        format!("Z trunc {truncated:.6} vs 8/3; ζ_Q {zq:.6}; ζ_Qi factors as ζ·L"),
    )
}

/// Dimension reduction `H^N_L → H^1_{L^N}`: `h` is preserved and the
/// kernel identity `J_{α,L,N} = J_{α/N, L^N, 1}` holds exactly.
pub fn check_dimension_reduction() -> CheckReport {
    let params = HierParams::new(2, 2).unwrap();
    let vs = build_vertex_set(ModelBounds::HierBall { params, max_index: 4 }, None).unwrap();
    let points: Vec<&HierPoint> = vs
        .payloads
        .iter()
        .map(|p| match p {
            VertexPayload::Hier(x) => x,
            _ => unreachable!(),
        })
        .collect();
    let reduced: Vec<HierPoint> = points.iter().map(|x| reduce_dimension(x).unwrap()).collect();
    let mut pairs = 0u64;
    for alpha in [0.5f64, 1.0, 2.0] {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if h_index(points[i], points[j]) != h_index(&reduced[i], &reduced[j]) {
                    return CheckReport::new("dimension", false, format!("h changed at pair ({i},{j})"));
                }
                // L^{−h(N+α)} vs (L^N)^{−h(1+α/N)}
                let h = h_index(points[i], points[j]).unwrap();
                let original = ExactMagnitude::from_int_exp(2, -(h as i64)).pow_f64(2.0 + alpha);
                let flat = ExactMagnitude::from_int_exp(4, -(h as i64)).pow_f64(1.0 + alpha / 2.0);
                if original != flat {
                    return CheckReport::new(
                        "dimension",
                        false,
                        format!("kernel identity broke at h={h}, α={alpha}"),
                    );
                }
                pairs += 1;
            }
        }
    }
    CheckReport::new("dimension", true, format!("{pairs} (pair, α) combinations exact"))
}

/// Draws `(f, g)` with divisor support of `f − g` inside `s_places` and
/// `|f−g|_x ≤ q^{−4}` on the support.
fn sample_sandwich_pair_ff(
    field: &FqField,
    s_places: &[PlaceFF],
    rng: &mut SplitMix64,
) -> (Poly, Poly) {
    loop {
        let mut d = Poly::constant(field.clone(), 1);
        for place in s_places {
            if rng.below(100) >= 40 {
                continue;
            }
            let pi = place.pi().unwrap();
            let dx = pi.degree().unwrap() as u64;
            let min_e = 4u64.div_ceil(dx);
            let e = min_e + rng.below(2);
            for _ in 0..e {
                d = d.mul(pi).unwrap();
            }
        }
        if d.degree() == Some(0) || d.degree().unwrap_or(0) > 26 {
            continue;
        }
        let g_coeffs: Vec<u8> = (0..8).map(|_| (rng.below(u64::from(field.q()))) as u8).collect();
        let g = Poly::new(field.clone(), g_coeffs);
        let f = g.add(&d).unwrap();
        return (f, g);
    }
}

/// The function-field sandwich of the adelic probabilities between the
/// hierarchical bounds, in base-q mode at q = 2, β = 2, α = 1 with
/// S = places of degree ≤ 4: requires both inequalities with 5%
/// multiplicative slack in at least `required` of the samples.
pub fn check_ff_sandwich(samples: u32, required: f64, seed: u64) -> CheckReport {
    let field = FqField::prime(2).unwrap();
    let beta = 2.0;
    let alpha = 1.0;
    let slack = 1.05;
    let s_places = enumerate_irreducibles(&field, 4).unwrap();
    let thr_lower =
        beta_threshold_ff(ThresholdKind::A, beta, &s_places, &field, &[1]).unwrap();
    let thr_upper =
        beta_threshold_ff(ThresholdKind::APrime, beta, &s_places, &field, &[1]).unwrap();
    let policy = SPolicyFF::Explicit(s_places.clone());
    let mut rng = SplitMix64::new(seed);
    let mut holds = 0u32;
    let mut worst_left = f64::INFINITY;
    let mut worst_right = 0.0f64;
    for _ in 0..samples {
        let (f, g) = sample_sandwich_pair_ff(&field, &s_places, &mut rng);
        let d_deg = f.sub(&g).unwrap().degree().unwrap() as i64;
        // hierarchical kernel J_{α,q}(f−g) = q^{−(1+α)·deg}
        let j_inf = ExactMagnitude::from_int_exp(2, -d_deg).pow_f64(1.0 + alpha).to_f64();
        let lower = inclusion_prob(thr_lower, j_inf, ProbBase::BaseQ { q: 2.0 }).prob;
        let upper = inclusion_prob(thr_upper, j_inf, ProbBase::BaseQ { q: 2.0 }).prob;
        let p_const = adelic_prob_ff(
            beta,
            Schedule::Constant { value: alpha },
            &f,
            &g,
            &policy,
            BaseMode::BaseQ,
            &[1],
            12,
        )
        .unwrap()
        .total;
        let p_sched = adelic_prob_ff(
            beta,
            Schedule::DegLogShifted { base: alpha },
            &f,
            &g,
            &policy,
            BaseMode::BaseQ,
            &[1],
            12,
        )
        .unwrap()
        .total;
        let left_ok = lower <= p_const * slack;
        let right_ok = p_sched <= upper * slack;
        if left_ok && right_ok {
            holds += 1;
        }
        worst_left = worst_left.min(p_const / lower);
        worst_right = worst_right.max(p_sched / upper);
    }
    let fraction = f64::from(holds) / f64::from(samples);
    CheckReport::new(
        "ff-sandwich",
        fraction >= required,
        format!(
            "{holds}/{samples} hold (need {:.0}%); worst ratios: lower {worst_left:.3}, upper {worst_right:.3}",
            required * 100.0
        ),
    )
}

/// Support places for the number-field sandwich: everything over
/// {2, 3, 5, 13} in `Q(i)`.
fn qi_sandwich_places() -> Vec<PlaceNF> {
    [2u64, 3, 5, 13]
        .iter()
        .flat_map(|&p| split_prime(NumberField::GaussQi, p).unwrap())
        .collect()
}

/// The theorem-shaped adelic probability over the non-Archimedean places:
/// Dedekind zeta tail over the places of zero valuation, natural
/// `1 − e^{−β_ν J_ν}` factors on the support, with per-place exponent
/// `1 + α_ν` supplied by the caller.
fn nf_theorem_prob(
    beta: f64,
    zeta_full: f64,
    support: &[(PlaceNF, i64)],
    alpha_at: impl Fn(&crate::arith_nf::NonArchPlace) -> f64,
) -> f64 {
    let mut zeta_removed = zeta_full;
    for (place, _) in support {
        let norm = place.non_arch().unwrap().ideal_norm() as f64;
        zeta_removed *= 1.0 - norm.powf(-beta);
    }
    let mut prob = 1.0 / zeta_removed;
    for (place, v) in support {
        let na = place.non_arch().unwrap();
        let beta_nu = beta * f64::from(na.f);
        let alpha_nu = alpha_at(na);
        let j = ExactMagnitude::from_int_exp(na.p, -(i64::from(na.f) * v))
            .pow_f64(1.0 + alpha_nu)
            .to_f64();
        prob *= -(-beta_nu * j).exp_m1();
    }
    prob
}

/// The number-field sandwich at `Q(i)`, β = 2, α = 1: the adelic
/// probability at exponents `α/n` lies between the toric probabilities at
/// `β_{A,S}^n` and `β'^n_{A,S}`, with 5% slack in at least `required` of
/// the samples.
pub fn check_nf_sandwich(samples: u32, required: f64, seed: u64) -> CheckReport {
    let field = NumberField::GaussQi;
    let n = f64::from(field.degree());
    let (beta, alpha, slack, pmax) = (2.0f64, 1.0f64, 1.05f64, 10_000u64);
    let s_places = qi_sandwich_places();
    let zeta_full = dedekind_zeta(field, beta, pmax, &[]).unwrap();
    let mut zeta_s = zeta_full;
    for place in &s_places {
        let norm = place.non_arch().unwrap().ideal_norm() as f64;
        zeta_s *= 1.0 - norm.powf(-beta);
    }
    // β_{A,S}^n and β'^n_{A,S} (β > 1 branches)
    let thr_lower_n = beta / zeta_full;
    let thr_upper_n = beta.powi(s_places.len() as i32) / zeta_s;
    debug_assert!(
        (beta_threshold_nf(ThresholdKind::A, beta, &s_places, field, pmax).unwrap()
            - thr_lower_n.powf(1.0 / n))
        .abs()
            < 1e-9
    );
    let mut rng = SplitMix64::new(seed);
    let mut holds = 0u32;
    let mut worst_left = f64::INFINITY;
    let mut worst_right = 0.0f64;
    for _ in 0..samples {
        // difference supported on a random nonempty subset of S with
        // |d|_ν ≤ 2^{−4} per place
        let mut d = NfElement::one(field);
        for place in &s_places {
            if rng.below(2) == 0 {
                continue;
            }
            let na = place.non_arch().unwrap();
            let min_v =
                (4.0 * 2f64.ln() / (na.ideal_norm() as f64).ln()).ceil().max(1.0) as u64;
            let v = min_v + rng.below(2);
            for _ in 0..v {
                d = d.mul(&na.generator).unwrap();
            }
        }
        if d == NfElement::one(field) {
            continue;
        }
        // random unit and base point
        for _ in 0..rng.below(4) {
            d = d.mul(&NfElement::new(field, 0, 1)).unwrap(); // × i
        }
        let y = NfElement::new(field, rng.range_i64(-20, 20), rng.range_i64(-20, 20));
        let x = y.add(&d).unwrap();
        let support = crate::kernels::divisor_support_nf(&d, pmax).unwrap();
        let p_const = nf_theorem_prob(beta, zeta_full, &support, |_| alpha / n);
        let p_sched =
            nf_theorem_prob(beta, zeta_full, &support, |na| {
                alpha / n + f64::from(na.f).ln() / (na.p as f64).ln()
            });
        // toric side: J = υ^{1+α/n} with υ = 1/|σ(d)|² = 1/N(d)
        let norm = num_traits::ToPrimitive::to_f64(&x.sub(&y).unwrap().norm()).unwrap();
        let j_toric = norm.abs().powf(-(1.0 + alpha / n));
        let lower = -(-thr_lower_n * j_toric).exp_m1();
        let upper = -(-thr_upper_n * j_toric).exp_m1();
        let left_ok = lower <= p_const * slack;
        let right_ok = p_sched <= upper * slack;
        if left_ok && right_ok {
            holds += 1;
        }
        worst_left = worst_left.min(p_const / lower);
        worst_right = worst_right.max(p_sched / upper);
    }
    let fraction = f64::from(holds) / f64::from(samples);
    CheckReport::new(
        "nf-sandwich",
        fraction >= required,
        format!(
            "{holds}/{samples} hold (need {:.0}%); worst ratios: lower {worst_left:.3}, upper {worst_right:.3}",
            required * 100.0
        ),
    )
}

/// Local kernels agree across the two kinds of global field at matched
/// residue data `(p, f)`: `q^{−deg(x)·ν·(1+α)} = p^{−f·v·(1+α)}` exactly.
pub fn check_local_kernel_match() -> CheckReport {
    // (F₂, place (t), d=1) ↔ (Q(i), place (1+i), p=2, f=1)
    let f2 = FqField::prime(2).unwrap();
    let t_place = PlaceFF::finite(Poly::parse(&f2, "0,1").unwrap()).unwrap();
    let qi_place = split_prime(NumberField::GaussQi, 2).unwrap()[0].clone();
    // (F₃, place (t²+1), d=2) ↔ (Q(√2), inert 3, f=2)
    let f3 = FqField::prime(3).unwrap();
    let quad_place = PlaceFF::finite(Poly::parse(&f3, "1,0,1").unwrap()).unwrap();
    let rq_place = split_prime(NumberField::RealQuadSqrt2, 3).unwrap()[0].clone();

    let mut checked = 0u32;
    for alpha in [0.5f64, 1.0, 2.0] {
        for v in 0..=10i64 {
            // F₂ side: f − g = t^v
            let mut coeffs = vec![0u8; v as usize + 1];
            coeffs[v as usize] = 1;
            let f = Poly::new(f2.clone(), coeffs);
            let ff_kernel = kernel_eval(
                &KernelSpec::FfLocal { alpha, place: t_place.clone() },
                &VertexPayload::Poly(f),
                &VertexPayload::Poly(Poly::zero(f2.clone())),
            )
            .unwrap();
            // Q(i) side: x − y = (1+i)^v · (1 + i offset to stay nonzero)
            let mut x = NfElement::one(NumberField::GaussQi);
            for _ in 0..v {
                x = x.mul(&NfElement::new(NumberField::GaussQi, 1, 1)).unwrap();
            }
            let nf_kernel = kernel_eval(
                &KernelSpec::NfLocal {
                    alpha,
                    place: qi_place.non_arch().unwrap().clone(),
                },
                &VertexPayload::Nf(x),
                &VertexPayload::Nf(NfElement::zero(NumberField::GaussQi)),
            )
            .unwrap();
            if ff_kernel.exact() != nf_kernel.exact() {
                return CheckReport::new(
                    "local-kernel-match",
                    false,
                    format!("p=2 f=1 v={v} α={alpha}: {ff_kernel:?} vs {nf_kernel:?}"),
                );
            }
            // F₃ degree-2 place vs inert 3 in Q(√2)
            let mut f = Poly::constant(f3.clone(), 1);
            for _ in 0..v {
                f = f.mul(quad_place.pi().unwrap()).unwrap();
            }
            let ff_kernel = kernel_eval(
                &KernelSpec::FfLocal { alpha, place: quad_place.clone() },
                &VertexPayload::Poly(f),
                &VertexPayload::Poly(Poly::zero(f3.clone())),
            )
            .unwrap();
            let x = NfElement::rational(3i64.pow(v as u32));
            let x = NfElement::new(NumberField::RealQuadSqrt2, x.a.clone(), BigInt::from(0));
            let nf_kernel = kernel_eval(
                &KernelSpec::NfLocal {
                    alpha,
                    place: rq_place.non_arch().unwrap().clone(),
                },
                &VertexPayload::Nf(x),
                &VertexPayload::Nf(NfElement::zero(NumberField::RealQuadSqrt2)),
            )
            .unwrap();
            if ff_kernel.exact() != nf_kernel.exact() {
                return CheckReport::new(
                    "local-kernel-match",
                    false,
                    format!("p=3 f=2 v={v} α={alpha}: {ff_kernel:?} vs {nf_kernel:?}"),
                );
            }
            checked += 2;
        }
    }
    CheckReport::new("local-kernel-match", true, format!("{checked} matched evaluations exact"))
}

/// Archimedean adelic vs toric at large separations: the probabilities
/// agree within `tol` when every `|σ(x−y)| ≥ min_sep`.
pub fn check_arch_toric_regime(min_sep: f64, tol: f64) -> CheckReport {
    let mut checked = 0u32;
    let mut worst: f64 = 1.0;
    for field in [NumberField::GaussQi, NumberField::RealQuadSqrt2] {
        let mut rng = SplitMix64::new(0x2c8);
        let mut found = 0;
        while found < 50 {
            let a = rng.range_i64(-60, 60);
            let b = rng.range_i64(-60, 60);
            let d = NfElement::new(field, a, b);
            if d.is_zero() || d.arch_abs().iter().any(|&m| m < min_sep) {
                continue;
            }
            found += 1;
            let out = arch_adelic_prob(1.0, 1.0, &d, &NfElement::zero(field)).unwrap();
            let ratio = out.prob / out.toric_companion;
            worst = worst.max((ratio - 1.0).abs() + 1.0);
            if (ratio - 1.0).abs() > tol {
                return CheckReport::new(
                    "arch-toric-regime",
                    false,
                    format!("{}: x−y = {d}: ratio {ratio}", field.name()),
                );
            }
            checked += 1;
        }
    }
    CheckReport::new(
        "arch-toric-regime",
        true,
        format!("{checked} separations ≥ {min_sep}: worst deviation {:.4}", worst - 1.0),
    )
}

/// Power-mean specializations: `t = 2` recovers the lattice kernel up to
/// `N^{(N+α)/2}` and `t = 0` is the toric kernel, both to 1e−12 relative.
pub fn check_power_mean_specializations(samples: u32, seed: u64) -> CheckReport {
    let mut rng = SplitMix64::new(seed);
    for k in 0..samples {
        let n = rng.range_i64(2, 4) as usize;
        let alpha = rng.range_f64(0.25, 3.0);
        let coords: Vec<i64> = (0..n)
            .map(|_| rng.range_i64(1, 30) * if rng.below(2) == 0 { 1 } else { -1 })
            .collect();
        let u = VertexPayload::Lattice(coords);
        let zero = VertexPayload::Lattice(vec![0; n]);
        let j2 = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(2.0), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        let jl = kernel_eval(&KernelSpec::Lattice { alpha }, &u, &zero).unwrap().to_f64();
        let factor = (n as f64).powf((n as f64 + alpha) / 2.0);
        if (j2 - factor * jl).abs() > 1e-12 * j2 {
            return CheckReport::new(
                "power-mean-specializations",
                false,
                format!("sample {k}: t=2 factor off by {}", (j2 - factor * jl) / j2),
            );
        }
        let j0 = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(0.0), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        let jt = kernel_eval(&KernelSpec::Toric { alpha }, &u, &zero).unwrap().to_f64();
        if (j0 - jt).abs() > 1e-12 * j0 {
            return CheckReport::new(
                "power-mean-specializations",
                false,
                format!("sample {k}: t=0 vs toric off by {}", (j0 - jt) / j0),
            );
        }
    }
    CheckReport::new(
        "power-mean-specializations",
        true,
        format!("{samples} samples at 1e-12 relative"),
    )
}

/// p-adic expansions round-trip mod `p^40`.
pub fn check_padic_expansions() -> CheckReport {
    use num_integer::Integer;
    let k = 40u32;
    for &p in &[2u64, 3, 5] {
        for n in -60i64..=60 {
            let e = match padic_expansion(&BigInt::from(n), p, k) {
                Ok(e) => e,
                Err(err) => {
                    return CheckReport::new("padic", false, format!("n={n}, p={p}: {err}"))
                }
            };
            let lhs = e.eval_mod(k);
            let rhs = BigInt::from(n).mod_floor(&BigInt::from(p).pow(k));
            if lhs != rhs {
                return CheckReport::new("padic", false, format!("n={n}, p={p}: {lhs} ≠ {rhs}"));
            }
        }
    }
    CheckReport::new("padic", true, "363 expansions round-trip mod p^40".to_string())
}

/// The six arrows of the model diagram, each as one named check.
pub fn run_diagram(seed: u64) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    let mut arrow = |n: u32, mut report: CheckReport| {
        report.name = format!("arrow-{n}-{}", report.name);
        reports.push(report);
    };
    arrow(1, check_iso(10));
    arrow(2, check_ff_sandwich(200, 0.95, seed));
    arrow(3, check_local_kernel_match());
    arrow(4, check_nf_sandwich(200, 0.95, seed ^ 0x4444));
    arrow(5, check_arch_toric_regime(20.0, 0.10));
    arrow(6, check_power_mean_specializations(1000, seed ^ 0x6666));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_checks_pass() {
        let r = check_ff_sandwich(60, 0.95, 0xff5a);
        assert!(r.pass, "{}", r.detail);
        let r = check_nf_sandwich(60, 0.95, 0x1f5a);
        assert!(r.pass, "{}", r.detail);
    }

    #[test]
    fn diagram_arrows_pass() {
        for report in run_diagram(0xd1a6) {
            assert!(report.pass, "{}: {}", report.name, report.detail);
        }
    }

    #[test]
    fn named_suites_pass_in_miniature() {
        let r = check_product_formula_ff(50, 1);
        assert!(r.pass, "{}", r.detail);
        let r = check_power_mean_monotonicity(50, 2);
        assert!(r.pass, "{}", r.detail);
        let r = check_am_gm(4, 10, &[0.5]);
        assert!(r.pass, "{}", r.detail);
        let r = check_dimension_reduction();
        assert!(r.pass, "{}", r.detail);
        let r = check_padic_expansions();
        assert!(r.pass, "{}", r.detail);
    }
}
