use super::*;
use crate::arith_ff::{enumerate_irreducibles, FqField};
use crate::arith_nf::{arch_places, split_prime, NfElement, NumberField};
use crate::engine::rng::SplitMix64;
use crate::hierlattice::{HierParams, HierPoint};
use crate::kernels::adelic::BaseMode;

fn f2() -> FqField {
    FqField::prime(2).unwrap()
}

fn lat(coords: &[i64]) -> VertexPayload {
    VertexPayload::Lattice(coords.to_vec())
}

fn poly2(text: &str) -> VertexPayload {
    VertexPayload::Poly(Poly::parse(&f2(), text).unwrap())
}

fn qi(a: i64, b: i64) -> VertexPayload {
    VertexPayload::Nf(NfElement::new(NumberField::GaussQi, a, b))
}

fn qs2(a: i64, b: i64) -> VertexPayload {
    VertexPayload::Nf(NfElement::new(NumberField::RealQuadSqrt2, a, b))
}

#[test]
fn power_mean_examples() {
    let lam = ProbabilityVector(vec![0.5, 0.5]);
    let m2 = power_mean(PowerParam::Finite(2.0), &lam, &[3.0, 4.0], &[]).unwrap();
    assert!((m2 - 12.5f64.sqrt()).abs() < 1e-12);
    let m0 = power_mean(PowerParam::Finite(0.0), &lam, &[3.0, 4.0], &[]).unwrap();
    assert!((m0 - 12.0f64.sqrt()).abs() < 1e-12);
    let mp = power_mean(PowerParam::PlusInf, &lam, &[3.0, 4.0], &[]).unwrap();
    assert_eq!(mp, 4.0);
    let mm = power_mean(PowerParam::MinusInf, &lam, &[3.0, 4.0], &[]).unwrap();
    assert_eq!(mm, 3.0);
    // one conjugate pair with weight 2·½: M_0 = |z|
    let lam_c = ProbabilityVector(vec![0.5]);
    let mc = power_mean(PowerParam::Finite(0.0), &lam_c, &[], &[(3.0, 4.0)]).unwrap();
    assert!((mc - 5.0).abs() < 1e-12);
}

#[test]
fn power_mean_rejects_bad_input() {
    let lam = ProbabilityVector(vec![0.5, 0.5]);
    assert!(matches!(
        power_mean(PowerParam::Finite(2.0), &lam, &[0.0, 1.0], &[]),
        Err(KernelError::ZeroCoordinate { index: 0 })
    ));
    assert!(matches!(
        power_mean(PowerParam::Finite(2.0), &lam, &[1.0], &[]),
        Err(KernelError::LambdaLength { .. })
    ));
    let bad = ProbabilityVector(vec![0.9, 0.9]);
    assert!(matches!(
        power_mean(PowerParam::Finite(2.0), &bad, &[1.0, 2.0], &[]),
        Err(KernelError::LambdaInvalid(_))
    ));
}

#[test]
fn power_mean_monotone_in_t() {
    let mut rng = SplitMix64::new(0x9dbd);
    let grid = [-8.0, -4.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0];
    for _ in 0..1000 {
        let n = rng.range_i64(2, 8) as usize;
        let mut weights: Vec<f64> = (0..n).map(|_| rng.range_f64(0.05, 1.0)).collect();
        let sum: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= sum);
        let lam = ProbabilityVector(weights);
        let xs: Vec<f64> = (0..n)
            .map(|_| {
                let mag = rng.range_f64(0.2, 9.0);
                if rng.next_u64() % 2 == 0 { mag } else { -mag }
            })
            .collect();
        let mut prev = f64::MIN;
        for &t in &grid {
            let m = power_mean(PowerParam::Finite(t), &lam, &xs, &[]).unwrap();
            assert!(m >= prev - 1e-12, "t = {t} dropped: {m} < {prev}");
            prev = m;
        }
        let hi = power_mean(PowerParam::Finite(100.0), &lam, &xs, &[]).unwrap();
        let lo = power_mean(PowerParam::Finite(-100.0), &lam, &xs, &[]).unwrap();
        let max = power_mean(PowerParam::PlusInf, &lam, &xs, &[]).unwrap();
        let min = power_mean(PowerParam::MinusInf, &lam, &xs, &[]).unwrap();
        assert!((hi - max).abs() < 1e-6 * max);
        assert!((lo - min).abs() < 1e-6 * min.max(1e-6));
    }
}

#[test]
fn kernel_eval_lattice_and_toric_examples() {
    let j = kernel_eval(&KernelSpec::Lattice { alpha: 1.0 }, &lat(&[3, 4]), &lat(&[0, 0])).unwrap();
    assert!((j.to_f64() - 0.008).abs() < 1e-15);
    let j = kernel_eval(&KernelSpec::Toric { alpha: 2.0 }, &lat(&[3, 4]), &lat(&[0, 0])).unwrap();
    assert!((j.to_f64() - 1.0 / 144.0).abs() < 1e-15);
    // non-transverse pair rejected
    assert!(matches!(
        kernel_eval(&KernelSpec::Toric { alpha: 2.0 }, &lat(&[3, 0]), &lat(&[0, 0])),
        Err(KernelError::ZeroCoordinate { index: 1 })
    ));
    assert!(matches!(
        kernel_eval(&KernelSpec::Lattice { alpha: 1.0 }, &lat(&[1, 1]), &lat(&[1, 1])),
        Err(KernelError::EqualPoints)
    ));
}

#[test]
fn kernel_eval_hier_and_ff_examples() {
    let params = HierParams::new(3, 1).unwrap();
    let a = HierPoint::parse(params, "0;0;1").unwrap();
    let j = kernel_eval(
        &KernelSpec::Hier { alpha: 1.0, params },
        &VertexPayload::Hier(a),
        &VertexPayload::Hier(HierPoint::zero(params)),
    )
    .unwrap();
    assert_eq!(j.exact().unwrap(), &ExactMagnitude::from_int_exp(3, -4));

    // ν_t(f−g) = 3 at q = 2, α = 1 → 2^{−6}
    let place = PlaceFF::finite(Poly::parse(&f2(), "0,1").unwrap()).unwrap();
    let j = kernel_eval(
        &KernelSpec::FfLocal { alpha: 1.0, place },
        &poly2("0,0,0,1"),
        &poly2(""),
    )
    .unwrap();
    assert_eq!(j.exact().unwrap(), &ExactMagnitude::from_int_exp(2, -6));

    // deg(f−g) = 3 at the infinite place → 2^{−6}, the hierarchical value
    let j_inf = kernel_eval(&KernelSpec::FfInfty { alpha: 1.0 }, &poly2("0,0,0,1"), &poly2("")).unwrap();
    assert_eq!(j_inf.exact().unwrap(), &ExactMagnitude::from_int_exp(2, -6));
    let params2 = HierParams::new(2, 1).unwrap();
    let h = crate::hierlattice::poly_to_hier(&Poly::parse(&f2(), "0,0,0,1").unwrap(), params2).unwrap();
    let j_hier = kernel_eval(
        &KernelSpec::Hier { alpha: 1.0, params: params2 },
        &VertexPayload::Hier(h),
        &VertexPayload::Hier(HierPoint::zero(params2)),
    )
    .unwrap();
    assert_eq!(j_inf.exact(), j_hier.exact());
}

#[test]
fn pm_usual_identity_factor() {
    // J_{α,2,1/N} = N^{(N+α)/2}·J_α over random nonzero integer vectors
    let mut rng = SplitMix64::new(0x517e);
    for _ in 0..1000 {
        let n = rng.range_i64(2, 4) as usize;
        let alpha = rng.range_f64(0.25, 3.0);
        let coords: Vec<i64> = (0..n)
            .map(|_| {
                let c = rng.range_i64(1, 40);
                if rng.next_u64() % 2 == 0 { c } else { -c }
            })
            .collect();
        let u = lat(&coords);
        let zero = lat(&vec![0; n]);
        let jpm = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(2.0), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        let jlat = kernel_eval(&KernelSpec::Lattice { alpha }, &u, &zero).unwrap().to_f64();
        let factor = (n as f64).powf((n as f64 + alpha) / 2.0);
        assert!(
            (jpm - factor * jlat).abs() <= 1e-12 * jpm.abs().max(1e-300),
            "n={n} α={alpha}"
        );
    }
}

#[test]
fn toric_is_power_mean_at_zero() {
    let mut rng = SplitMix64::new(0xa11ce);
    for _ in 0..1000 {
        let alpha = rng.range_f64(0.25, 3.0);
        // Z[√2] box (totally real) and Z[i] box (one conjugate pair)
        let a = rng.range_i64(-9, 9);
        let b = rng.range_i64(-9, 9);
        if (a, b) == (0, 0) {
            continue;
        }
        let u = qs2(a, b);
        let zero = qs2(0, 0);
        let jt = kernel_eval(&KernelSpec::Toric { alpha }, &u, &zero).unwrap().to_f64();
        let jp = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(0.0), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        assert!((jt - jp).abs() <= 1e-12 * jt.abs());

        let u = qi(a, b);
        let zero = qi(0, 0);
        let jt = kernel_eval(&KernelSpec::ToricMixed { alpha }, &u, &zero).unwrap().to_f64();
        let jp = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(0.0), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        assert!((jt - jp).abs() <= 1e-12 * jt.abs());
    }
}

#[test]
fn kernel_ordering_toric_above_lattice() {
    // J_toric ≥ N^{(N+α)/2}·J_latt ≥ J_latt on transverse points
    let mut rng = SplitMix64::new(0xbeef);
    for _ in 0..1000 {
        let alpha = rng.range_f64(0.25, 3.0);
        let a = rng.range_i64(1, 12) * if rng.next_u64() % 2 == 0 { 1 } else { -1 };
        let b = rng.range_i64(1, 12) * if rng.next_u64() % 2 == 0 { 1 } else { -1 };
        let u = lat(&[a, b]);
        let zero = lat(&[0, 0]);
        let jt = kernel_eval(&KernelSpec::Toric { alpha }, &u, &zero).unwrap().to_f64();
        let jl = kernel_eval(&KernelSpec::Lattice { alpha }, &u, &zero).unwrap().to_f64();
        let factor = 2.0f64.powf((2.0 + alpha) / 2.0);
        assert!(jt >= factor * jl - 1e-14 * jt);
        assert!(factor * jl >= jl);
        // hence the inclusion probabilities are ordered
        let pt = inclusion_prob(1.0, jt, ProbBase::Natural).prob;
        let pl = inclusion_prob(1.0, jl, ProbBase::Natural).prob;
        assert!(pt >= pl);
    }
}

#[test]
fn power_mean_probability_monotone_in_t() {
    let mut rng = SplitMix64::new(0xc0de);
    let grid = [-8.0, -1.0, 0.0, 1.0, 2.0, 8.0];
    for _ in 0..1000 {
        let alpha = rng.range_f64(0.25, 2.0);
        let beta = rng.range_f64(0.1, 3.0);
        let a = rng.range_i64(1, 15) * if rng.next_u64() % 2 == 0 { 1 } else { -1 };
        let b = rng.range_i64(1, 15) * if rng.next_u64() % 2 == 0 { 1 } else { -1 };
        let i = rng.range_i64(0, grid.len() as i64 - 2) as usize;
        let (t1, t2) = (grid[i], grid[i + 1]);
        let u = lat(&[a, b]);
        let zero = lat(&[0, 0]);
        let j1 = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(t1), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        let j2 = kernel_eval(
            &KernelSpec::PowerMean { alpha, t: PowerParam::Finite(t2), lambda: None },
            &u,
            &zero,
        )
        .unwrap()
        .to_f64();
        let p1 = inclusion_prob(beta, j1, ProbBase::Natural).prob;
        let p2 = inclusion_prob(beta, j2, ProbBase::Natural).prob;
        assert!(p1 >= p2 - 1e-15, "t1={t1} t2={t2}");
    }
}

#[test]
fn ff_local_product_equals_infty_kernel_exactly() {
    // Π_x J_{α,q,x}(f) over the divisor support = J_{α,q,∞}(f), in exact
    // magnitude arithmetic
    let field = f2();
    let places = enumerate_irreducibles(&field, 4).unwrap();
    let mut rng = SplitMix64::new(0xfeed);
    let alpha = 1.0;
    for _ in 0..200 {
        // build f from enumerated irreducibles so the support is known
        let mut f = Poly::constant(field.clone(), 1);
        for _ in 0..rng.range_i64(1, 4) {
            let pick = places[rng.below(places.len() as u64) as usize].clone();
            f = f.mul(pick.pi().unwrap()).unwrap();
        }
        let zero = VertexPayload::Poly(Poly::zero(field.clone()));
        let fp = VertexPayload::Poly(f.clone());
        let mut product = ExactMagnitude::one();
        for place in &places {
            let spec = KernelSpec::FfLocal { alpha, place: place.clone() };
            let j = kernel_eval(&spec, &fp, &zero).unwrap();
            product = product.checked_mul(j.exact().unwrap()).unwrap();
        }
        let j_inf = kernel_eval(&KernelSpec::FfInfty { alpha }, &fp, &zero).unwrap();
        assert_eq!(&product, j_inf.exact().unwrap(), "f = {f}");
    }
}

#[test]
fn gauss_arch_kernel_matches_lattice_with_doubled_alpha() {
    // Q(i) has a single conjugate pair: J_{α,σ} = ‖Mink‖^{−2(1+α)} equals
    // the lattice kernel at α' = 2α
    let place = arch_places(NumberField::GaussQi)[0];
    let mut rng = SplitMix64::new(0x6a55);
    for _ in 0..500 {
        let alpha = rng.range_f64(0.25, 3.0);
        let (a, b) = (rng.range_i64(-20, 20), rng.range_i64(-20, 20));
        if (a, b) == (0, 0) {
            continue;
        }
        let u = qi(a, b);
        let zero = qi(0, 0);
        let j_arch = kernel_eval(&KernelSpec::NfArch { alpha, place }, &u, &zero).unwrap().to_f64();
        let j_lat = kernel_eval(&KernelSpec::Lattice { alpha: 2.0 * alpha }, &u, &zero)
            .unwrap()
            .to_f64();
        assert!((j_arch - j_lat).abs() <= 1e-14 * j_arch);
    }
}

#[test]
fn schedule_examples() {
    let field = f2();
    let deg2 = PlaceFF::finite(Poly::parse(&field, "1,1,1").unwrap()).unwrap();
    assert_eq!(schedule_eval_ff(Schedule::DegProportional { base: 1.5 }, &deg2, 2), 3.0);
    assert_eq!(schedule_eval_ff(Schedule::DegLogShifted { base: 1.0 }, &deg2, 2), 2.0);
    let p3 = split_prime(NumberField::Rationals, 3).unwrap()[0].non_arch().unwrap().clone();
    assert_eq!(schedule_eval_nf(Schedule::InertiaLogShifted { base: 1.0 }, &p3), 1.0);
    assert_eq!(schedule_eval_nf(Schedule::InertiaProportional { base: 2.0 }, &p3), 2.0);
    assert_eq!(schedule_eval_nf(Schedule::Constant { value: 0.7 }, &p3), 0.7);
}

#[test]
fn inclusion_prob_examples() {
    assert_eq!(inclusion_prob(0.0, 123.0, ProbBase::Natural).prob, 0.0);
    let half = inclusion_prob(1.0, 2.0f64.ln(), ProbBase::Natural);
    assert!((half.prob - 0.5).abs() < 1e-15);
    assert!((half.linearized - 2.0f64.ln()).abs() < 1e-15);
    let halfq = inclusion_prob(1.0, 1.0, ProbBase::BaseQ { q: 2.0 });
    assert!((halfq.prob - 0.5).abs() < 1e-15);
}

#[test]
fn adelic_ff_examples() {
    let field = f2();
    let policy = SPolicyFF::DivisorSupport { max_degree: 4 };
    let f = Poly::parse(&field, "0,1").unwrap();
    let g = Poly::zero(field.clone());
    let bd = adelic_prob_ff(
        2.0,
        Schedule::Constant { value: 1.0 },
        &f,
        &g,
        &policy,
        BaseMode::BaseQ,
        &[1],
        12,
    )
    .unwrap();
    assert!((bd.tail - 0.5).abs() < 1e-12, "tail = {}", bd.tail);
    assert_eq!(bd.factors.len(), 1);
    assert!((bd.factors[0].prob - (1.0 - 2f64.powf(-0.5))).abs() < 1e-12);
    assert!((bd.total - 0.146_446_609_406_7).abs() < 1e-10);

    // unit difference: pure tail Z(C,β)^{−1} = 3/8
    let unit = Poly::constant(field.clone(), 1);
    let bd = adelic_prob_ff(
        2.0,
        Schedule::Constant { value: 1.0 },
        &unit,
        &g,
        &policy,
        BaseMode::BaseQ,
        &[1],
        12,
    )
    .unwrap();
    assert!((bd.total - 0.375).abs() < 1e-12);
    assert!(bd.factors.is_empty());

    // β → ∞ drives every factor (and the tail) to 1
    let bd = adelic_prob_ff(
        500.0,
        Schedule::Constant { value: 1.0 },
        &f,
        &g,
        &policy,
        BaseMode::BaseQ,
        &[1],
        12,
    )
    .unwrap();
    assert!(bd.total > 0.999, "total = {}", bd.total);
}

#[test]
fn adelic_ff_errors() {
    let field = f2();
    let g = Poly::zero(field.clone());
    // support outside the explicit candidate list
    let f = Poly::parse(&field, "1,1,1").unwrap();
    let policy = SPolicyFF::Explicit(vec![
        PlaceFF::finite(Poly::parse(&field, "0,1").unwrap()).unwrap(),
    ]);
    assert!(matches!(
        adelic_prob_ff(2.0, Schedule::Constant { value: 1.0 }, &f, &g, &policy, BaseMode::BaseQ, &[1], 12),
        Err(KernelError::Ff(FfError::MissingDivisorPlace { .. }))
    ));
    // pole of the closed tail at β = 1
    let policy = SPolicyFF::DivisorSupport { max_degree: 4 };
    assert!(matches!(
        adelic_prob_ff(1.0, Schedule::Constant { value: 1.0 }, &f, &g, &policy, BaseMode::BaseQ, &[1], 12),
        Err(KernelError::Ff(FfError::ZetaPole { .. }))
    ));
    // equal endpoints
    assert!(matches!(
        adelic_prob_ff(2.0, Schedule::Constant { value: 1.0 }, &f, &f, &policy, BaseMode::BaseQ, &[1], 12),
        Err(KernelError::EqualPoints)
    ));
}

#[test]
fn adelic_nf_examples() {
    // Q, β = 2, α = 1, x − y = 2
    let x = NfElement::rational(2);
    let y = NfElement::rational(0);
    let bd = adelic_prob_nf(2.0, Schedule::Constant { value: 1.0 }, &x, &y, 100_000, BaseMode::BaseQ)
        .unwrap();
    assert!((bd.tail - 0.810_569_469).abs() < 1e-4, "tail = {}", bd.tail);
    assert_eq!(bd.factors.len(), 1);
    assert!((bd.factors[0].prob - 0.292_893_218).abs() < 1e-9);
    assert!((bd.total - 0.237_417).abs() < 1e-4);

    // unit difference: pure tail ζ_K(β)^{−1}
    let bd = adelic_prob_nf(
        2.0,
        Schedule::Constant { value: 1.0 },
        &NfElement::rational(1),
        &y,
        100_000,
        BaseMode::BaseQ,
    )
    .unwrap();
    assert!((bd.total - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-4);

    // Q(i), x − y = 1 + i: one place of norm 2
    let x = NfElement::new(NumberField::GaussQi, 1, 1);
    let y = NfElement::zero(NumberField::GaussQi);
    let bd = adelic_prob_nf(2.0, Schedule::Constant { value: 1.0 }, &x, &y, 10_000, BaseMode::BaseQ)
        .unwrap();
    assert_eq!(bd.factors.len(), 1);
    assert_eq!(bd.factors[0].nu, 1);
    assert!((bd.factors[0].prob - (1.0 - 2f64.powf(-0.5))).abs() < 1e-12);

    // pmax must cover the norm
    assert!(matches!(
        adelic_prob_nf(
            2.0,
            Schedule::Constant { value: 1.0 },
            &NfElement::rational(101),
            &y_q(),
            10,
            BaseMode::BaseQ,
        ),
        Err(KernelError::Nf(NfError::PmaxTooSmall { .. }))
    ));
    // the excluded zero window (β₀, 1) is refused for Q(i)
    assert!(matches!(
        adelic_prob_nf(0.99, Schedule::Constant { value: 1.0 }, &x, &y, 100, BaseMode::BaseQ),
        Err(KernelError::ZetaTail(_))
    ));
}

fn y_q() -> NfElement {
    NfElement::rational(0)
}

#[test]
fn arch_adelic_examples() {
    // Q(i): single conjugate-pair factor with J = 5^{−4}
    let x = NfElement::new(NumberField::GaussQi, 3, 4);
    let out = arch_adelic_prob(1.0, 1.0, &x, &NfElement::zero(NumberField::GaussQi)).unwrap();
    assert_eq!(out.factors.len(), 1);
    assert!((out.factors[0].j - 0.0016).abs() < 1e-15);

    // Q(√2): x − y = 1 embeds to (1, 1): (1 − e^{−1})²
    let x = NfElement::one(NumberField::RealQuadSqrt2);
    let out = arch_adelic_prob(1.0, 1.0, &x, &NfElement::zero(NumberField::RealQuadSqrt2)).unwrap();
    let expect = (1.0 - (-1.0f64).exp()).powi(2);
    assert!((out.prob - expect).abs() < 1e-12);
    assert!((out.prob - 0.399_576_4).abs() < 1e-6);

    // large separation drives the probability to zero, and the toric
    // companion agrees to first order
    let x = NfElement::new(NumberField::GaussQi, 120, 7);
    let out = arch_adelic_prob(1.0, 1.0, &x, &NfElement::zero(NumberField::GaussQi)).unwrap();
    assert!(out.prob < 1e-6);
    assert!((out.prob / out.toric_companion - 1.0).abs() < 0.01);
}

#[test]
fn beta_threshold_examples() {
    let field = f2();
    let places = enumerate_irreducibles(&field, 2).unwrap();
    // #S = 3, β = 2 > 1: β/Z(C,β) = 2/(8/3)
    let t = beta_threshold_ff(ThresholdKind::A, 2.0, &places, &field, &[1]).unwrap();
    assert!((t - 0.75).abs() < 1e-12);
    // β'_{A,S} with S = {t, t+1}: β^{#S}/Z^{(S)}(C,β) = 4/(3/2)
    let s2: Vec<PlaceFF> = enumerate_irreducibles(&field, 1).unwrap();
    let t = beta_threshold_ff(ThresholdKind::APrime, 2.0, &s2, &field, &[1]).unwrap();
    assert!((t - 8.0 / 3.0).abs() < 1e-12);
    // pole of Z at β = 1 pushes the threshold to zero
    let one_place = &s2[..1];
    let t = beta_threshold_ff(ThresholdKind::A, 1.0, one_place, &field, &[1]).unwrap();
    assert_eq!(t, 0.0);
    // number-field variant applies the n-th root
    let t = beta_threshold_nf(ThresholdKind::A, 2.0, &[], NumberField::GaussQi, 100_000).unwrap();
    let zqi = crate::arith_nf::dedekind_zeta(NumberField::GaussQi, 2.0, 100_000, &[]).unwrap();
    assert!((t - (2.0 / zqi).sqrt()).abs() < 1e-12);
}

#[test]
fn kernel_spec_json_roundtrip() {
    let field = f2();
    let specs = vec![
        KernelSpec::Lattice { alpha: 1.0 },
        KernelSpec::PowerMean {
            alpha: 0.5,
            t: PowerParam::Finite(2.0),
            lambda: Some(ProbabilityVector(vec![0.25, 0.75])),
        },
        KernelSpec::PowerMean { alpha: 0.5, t: PowerParam::PlusInf, lambda: None },
        KernelSpec::Toric { alpha: 2.0 },
        KernelSpec::ToricMixed { alpha: 2.0 },
        KernelSpec::Hier { alpha: 1.0, params: HierParams::new(3, 2).unwrap() },
        KernelSpec::FfLocal {
            alpha: 1.0,
            place: PlaceFF::finite(Poly::parse(&field, "1,1,1").unwrap()).unwrap(),
        },
        KernelSpec::FfInfty { alpha: 1.0 },
        KernelSpec::NfLocal {
            alpha: 1.0,
            place: split_prime(NumberField::GaussQi, 5).unwrap()[1].non_arch().unwrap().clone(),
        },
        KernelSpec::NfArch { alpha: 1.0, place: arch_places(NumberField::RealQuadSqrt2)[1] },
        KernelSpec::AdelicFf {
            field: field.clone(),
            alpha: Schedule::DegLogShifted { base: 1.0 },
            s_policy: SPolicyFF::DivisorSupport { max_degree: 4 },
            numerator: vec![1],
            tail_truncation: 12,
        },
        KernelSpec::AdelicNf {
            field: NumberField::Rationals,
            alpha: Schedule::Constant { value: 1.0 },
            pmax: 1000,
        },
        KernelSpec::ArchAdelic { field: NumberField::GaussQi, alpha: 1.0 },
    ];
    for spec in specs {
        let v = kernel_spec_to_json(&spec);
        let back = kernel_spec_from_json(&v).unwrap();
        assert_eq!(back, spec, "roundtrip failed for {v}");
    }
}

#[test]
fn payload_json_roundtrip() {
    let payloads = vec![
        lat(&[3, -4]),
        qi(3, 4),
        VertexPayload::Hier(HierPoint::parse(HierParams::new(3, 1).unwrap(), "1;0;2").unwrap()),
        poly2("1,0,1"),
    ];
    for p in payloads {
        let v = payload_to_json(&p);
        assert_eq!(payload_from_json(&v).unwrap(), p, "roundtrip failed for {v}");
    }
}
