//! The random-graph engine: one Bernoulli edge sampler over any kernel,
//! with coupled randomness, union-find cluster analysis, and the two-point
//! and critical-temperature estimators.
//!
//! The pair sweep is a plain `O(|V|²)` loop: the coupling guarantees and
//! exact reproducibility matter more than asymptotics at desk scale.

pub mod dsu;
pub mod probe;
pub mod rng;
pub mod vertex;

pub use dsu::{cluster_stats, ClusterStats, DisjointSet};
pub use probe::{BaseSpec, EdgeProbe};
pub use vertex::{build_vertex_set, ModelBounds, VertexSet, DEFAULT_VERTEX_BUDGET};

use std::fmt;

use serde::Serialize;

use rng::{derive_seed, fnv1a, mix64, pair_uniform};

use crate::kernels::{kernel_spec_to_json, KernelError, KernelSpec};

#[derive(Debug)]
pub enum EngineError {
    Budget { needed: u64, budget: u64 },
    EmptyVertexSet,
    /// Kernel failure during the sweep, with the offending pair.
    Kernel { i: u32, j: u32, source: KernelError },
    /// Kernel/payload mismatch detected while building the probe.
    KernelSetup(KernelError),
    UnsupportedBase(&'static str),
    NonTransverseModel(String),
    /// Pointwise ordering violated in a coupled comparison.
    OrderingViolation { i: u32, j: u32, prob_a: f64, prob_b: f64 },
    /// Survival never reached the criterion below the doubling cap.
    NoPercolationBelow { beta_cap: f64 },
    Config(String),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Budget { needed, budget } => {
                write!(f, "vertex budget exceeded: need {needed}, budget {budget}")
            }
            EngineError::EmptyVertexSet => write!(f, "empty vertex set"),
            EngineError::Kernel { i, j, source } => {
                write!(f, "kernel failed on pair ({i}, {j}): {source}")
            }
            EngineError::KernelSetup(source) => write!(f, "kernel setup: {source}"),
            EngineError::UnsupportedBase(msg) => write!(f, "{msg}"),
            EngineError::NonTransverseModel(msg) => write!(f, "{msg}"),
            EngineError::OrderingViolation { i, j, prob_a, prob_b } => write!(
                f,
                "kernel ordering violated on pair ({i}, {j}): {prob_a} > {prob_b}"
            ),
            EngineError::NoPercolationBelow { beta_cap } => {
                write!(f, "survival criterion never met below β = {beta_cap}")
            }
            EngineError::Config(msg) => write!(f, "config: {msg}"),
        }
    }
}

impl std::error::Error for EngineError {}

/// Randomness coupling across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// Salt the pair uniforms with the kernel and β, so different models
    /// use independent randomness.
    Independent,
    /// Share the pair uniforms across kernels and β values (monotone
    /// coupling).
    CommonRandomNumbers,
}

/// How one graph is sampled.
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub master_seed: u64,
    pub coupling: Coupling,
    pub beta: f64,
    pub base: BaseSpec,
    pub threads: usize,
}

impl SampleConfig {
    pub fn new(master_seed: u64, beta: f64) -> Self {
        SampleConfig {
            master_seed,
            coupling: Coupling::CommonRandomNumbers,
            beta,
            base: BaseSpec::Natural,
            threads: 1,
        }
    }

    fn effective_seed(&self, spec: &KernelSpec) -> u64 {
        match self.coupling {
            Coupling::CommonRandomNumbers => self.master_seed,
            Coupling::Independent => {
                let salt = fnv1a(kernel_spec_to_json(spec).to_string().as_bytes());
                mix64(self.master_seed ^ salt ^ self.beta.to_bits())
            }
        }
    }
}

/// Runs `f` over `0..items`, splitting across `threads`, and returns the
/// results in item order (independent of the worker count).
pub fn run_indexed<T: Send>(
    items: usize,
    threads: usize,
    f: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    let threads = threads.max(1).min(items.max(1));
    if threads <= 1 {
        return (0..items).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..items).map(|_| None).collect();
    let chunk = items.div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = out
            .chunks_mut(chunk)
            .enumerate()
            .map(|(k, slot)| {
                let f = &f;
                scope.spawn(move || {
                    for (off, s) in slot.iter_mut().enumerate() {
                        *s = Some(f(k * chunk + off));
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().expect("worker panicked");
        }
    });
    out.into_iter().map(|s| s.expect("all items visited")).collect()
}

fn sweep_edges(
    vs: &VertexSet,
    probe: &EdgeProbe,
    beta: f64,
    seed: u64,
    threads: usize,
) -> Result<Vec<(u32, u32)>, EngineError> {
    let n = vs.len() as u32;
    let sweep_range = |lo: u32, hi: u32| -> Result<Vec<(u32, u32)>, EngineError> {
        let mut edges = Vec::new();
        for i in lo..hi {
            for j in (i + 1)..n {
                let u = pair_uniform(seed, i, j);
                let p = probe.prob(beta, i, j)?;
                if u < p {
                    edges.push((i, j));
                }
            }
        }
        Ok(edges)
    };
    let threads = threads.max(1);
    if threads <= 1 || n < 64 {
        return sweep_range(0, n);
    }
    // split the row range into contiguous chunks; the merged edge list is
    // identical for any worker count
    let chunk = (n as usize).div_ceil(threads) as u32;
    let bounds: Vec<(u32, u32)> =
        (0..threads as u32).map(|k| (k * chunk, ((k + 1) * chunk).min(n))).collect();
    let results = run_indexed(bounds.len(), threads, |k| {
        let (lo, hi) = bounds[k];
        sweep_range(lo, hi)
    });
    let mut edges = Vec::new();
    for r in results {
        edges.extend(r?);
    }
    Ok(edges)
}

/// Samples the random graph: for each unordered pair, an edge is included
/// iff `pair_uniform < inclusion probability`. Returns the union-find
/// structure over vertex ids.
pub fn sample_graph(
    vs: &VertexSet,
    spec: &KernelSpec,
    cfg: &SampleConfig,
) -> Result<DisjointSet, EngineError> {
    let probe = EdgeProbe::new(vs, spec, cfg.base)?;
    sample_graph_with_probe(vs, &probe, spec, cfg).map(|(dsu, _)| dsu)
}

/// As [`sample_graph`], also returning the explicit edge list.
pub fn sample_graph_with_edges(
    vs: &VertexSet,
    spec: &KernelSpec,
    cfg: &SampleConfig,
) -> Result<(DisjointSet, Vec<(u32, u32)>), EngineError> {
    let probe = EdgeProbe::new(vs, spec, cfg.base)?;
    sample_graph_with_probe(vs, &probe, spec, cfg)
}

fn sample_graph_with_probe(
    vs: &VertexSet,
    probe: &EdgeProbe,
    spec: &KernelSpec,
    cfg: &SampleConfig,
) -> Result<(DisjointSet, Vec<(u32, u32)>), EngineError> {
    let seed = cfg.effective_seed(spec);
    let edges = sweep_edges(vs, probe, cfg.beta, seed, cfg.threads)?;
    let mut dsu = DisjointSet::singletons(vs.len());
    for &(i, j) in &edges {
        dsu.union(i, j);
    }
    Ok((dsu, edges))
}

/// One pair's empirical connection frequency.
#[derive(Debug, Clone, Serialize)]
pub struct TwoPointRow {
    pub i: u32,
    pub j: u32,
    pub trials: u32,
    pub hits: u32,
    pub freq: f64,
    pub stderr: f64,
}

/// Empirical frequency that each pair lands in one cluster, over
/// independent trials with seeds derived from the master seed.
pub fn two_point_estimate(
    vs: &VertexSet,
    spec: &KernelSpec,
    cfg: &SampleConfig,
    pairs: &[(u32, u32)],
    trials: u32,
) -> Result<Vec<TwoPointRow>, EngineError> {
    let probe = EdgeProbe::new(vs, spec, cfg.base)?;
    let per_trial = run_indexed(trials as usize, cfg.threads, |t| {
        let mut trial_cfg = cfg.clone();
        trial_cfg.master_seed = derive_seed(cfg.master_seed, t as u64);
        trial_cfg.threads = 1;
        let (mut dsu, _) = sample_graph_with_probe(vs, &probe, spec, &trial_cfg)?;
        let hits: Vec<bool> =
            pairs.iter().map(|&(i, j)| i == j || dsu.same_set(i, j)).collect();
        Ok::<_, EngineError>(hits)
    });
    let mut counts = vec![0u32; pairs.len()];
    for trial in per_trial {
        for (k, hit) in trial?.into_iter().enumerate() {
            if hit {
                counts[k] += 1;
            }
        }
    }
    Ok(pairs
        .iter()
        .zip(counts)
        .map(|(&(i, j), hits)| {
            let freq = f64::from(hits) / f64::from(trials);
            TwoPointRow {
                i,
                j,
                trials,
                hits,
                freq,
                stderr: (freq * (1.0 - freq) / f64::from(trials)).sqrt(),
            }
        })
        .collect())
}

/// Survival data at one evaluated β.
#[derive(Debug, Clone, Serialize)]
pub struct SurvivalPoint {
    pub beta: f64,
    /// Fraction of trials whose largest-cluster fraction reached θ, per
    /// ladder size.
    pub survival_frequencies: Vec<f64>,
    pub survived: bool,
}

/// A bisection bracket for the critical inverse temperature.
#[derive(Debug, Clone, Serialize)]
pub struct BetaCEstimate {
    pub lower: f64,
    pub upper: f64,
    pub theta: f64,
    pub box_sizes: Vec<u64>,
    pub trials: u32,
    pub points: Vec<SurvivalPoint>,
    /// False when the recorded survival flags were not monotone in β
    /// (cannot happen under common random numbers; reported, not hidden).
    pub monotone: bool,
}

/// Settings for [`estimate_beta_c`].
#[derive(Debug, Clone)]
pub struct BetaCConfig {
    /// Largest-cluster fraction that counts as survival.
    pub theta: f64,
    /// Trials per (β, size) evaluation.
    pub trials: u32,
    /// Final bracket width.
    pub tol: f64,
    /// Upper cap for the initial doubling search.
    pub beta_cap: f64,
}

impl Default for BetaCConfig {
    fn default() -> Self {
        BetaCConfig { theta: 0.25, trials: 30, tol: 0.25, beta_cap: 64.0 }
    }
}

/// Bisects β on the event "largest-cluster fraction ≥ θ in a majority of
/// trials at every ladder size". Trials share seeds across β (common
/// random numbers), so the survival event is monotone in β exactly.
pub fn estimate_beta_c(
    ladder: &[VertexSet],
    spec: &KernelSpec,
    cfg: &SampleConfig,
    bc: &BetaCConfig,
) -> Result<BetaCEstimate, EngineError> {
    if ladder.len() < 2 {
        return Err(EngineError::Config("β_c ladder needs at least 2 sizes".into()));
    }
    if !(bc.theta > 0.0 && bc.theta < 1.0) {
        return Err(EngineError::Config(format!("θ must lie in (0,1), got {}", bc.theta)));
    }
    let probes: Vec<EdgeProbe> =
        ladder.iter().map(|vs| EdgeProbe::new(vs, spec, cfg.base)).collect::<Result<_, _>>()?;
    let mut points: Vec<SurvivalPoint> = Vec::new();

    let evaluate = |beta: f64, points: &mut Vec<SurvivalPoint>| -> Result<bool, EngineError> {
        if let Some(p) = points.iter().find(|p| p.beta == beta) {
            return Ok(p.survived);
        }
        let mut freqs = Vec::with_capacity(ladder.len());
        let mut survived = true;
        for (vs, probe) in ladder.iter().zip(&probes) {
            let outcomes = run_indexed(bc.trials as usize, cfg.threads, |t| {
                let seed = derive_seed(cfg.master_seed, t as u64);
                let edges = sweep_edges(vs, probe, beta, seed, 1)?;
                let mut dsu = DisjointSet::singletons(vs.len());
                for &(i, j) in &edges {
                    dsu.union(i, j);
                }
                let stats = cluster_stats(&mut dsu);
                Ok::<_, EngineError>(stats.largest_fraction >= bc.theta)
            });
            let mut hits = 0u32;
            for o in outcomes {
                if o? {
                    hits += 1;
                }
            }
            freqs.push(f64::from(hits) / f64::from(bc.trials));
            if 2 * hits <= bc.trials {
                survived = false;
            }
        }
        points.push(SurvivalPoint { beta, survival_frequencies: freqs, survived });
        Ok(survived)
    };

    // bracket by doubling
    let mut lo = 0.0f64;
    evaluate(lo, &mut points)?;
    let mut hi = 1.0f64;
    loop {
        if evaluate(hi, &mut points)? {
            break;
        }
        lo = hi;
        hi *= 2.0;
        if hi > bc.beta_cap {
            return Err(EngineError::NoPercolationBelow { beta_cap: bc.beta_cap });
        }
    }
    // bisect
    while hi - lo > bc.tol {
        let mid = 0.5 * (lo + hi);
        if evaluate(mid, &mut points)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    points.sort_by(|a, b| a.beta.partial_cmp(&b.beta).unwrap());
    let monotone = points.windows(2).all(|w| !w[0].survived || w[1].survived);
    Ok(BetaCEstimate {
        lower: lo,
        upper: hi,
        theta: bc.theta,
        box_sizes: ladder.iter().map(|vs| vs.len() as u64).collect(),
        trials: bc.trials,
        points,
        monotone,
    })
}

/// Per-seed outcome of a coupled two-kernel run.
#[derive(Debug, Clone, Serialize)]
pub struct SeedCouplingRow {
    pub seed: u64,
    pub edges_a: u64,
    pub edges_b: u64,
    pub inclusion: bool,
    pub largest_a: u32,
    pub largest_b: u32,
    pub dominance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoupledReport {
    pub pairs: u64,
    pub seeds: u32,
    pub inclusion_ok: u32,
    pub dominance_ok: u32,
    pub rows: Vec<SeedCouplingRow>,
}

/// Verifies `kernel A ≤ kernel B` pointwise by an exhaustive pair scan,
/// then samples both with common random numbers per seed and reports
/// edgewise inclusion and cluster-size dominance.
pub fn compare_coupled(
    vs: &VertexSet,
    spec_a: &KernelSpec,
    spec_b: &KernelSpec,
    beta: f64,
    base: BaseSpec,
    seeds: &[u64],
    threads: usize,
) -> Result<CoupledReport, EngineError> {
    let probe_a = EdgeProbe::new(vs, spec_a, base)?;
    let probe_b = EdgeProbe::new(vs, spec_b, base)?;
    let n = vs.len() as u32;
    let mut probs: Vec<(f64, f64)> = Vec::with_capacity(vs.pair_count() as usize);
    for i in 0..n {
        for j in (i + 1)..n {
            let pa = probe_a.prob(beta, i, j)?;
            let pb = probe_b.prob(beta, i, j)?;
            if pa > pb * (1.0 + 1e-12) + 1e-300 {
                return Err(EngineError::OrderingViolation { i, j, prob_a: pa, prob_b: pb });
            }
            probs.push((pa, pb));
        }
    }
    let rows = run_indexed(seeds.len(), threads, |k| {
        let seed = seeds[k];
        let mut dsu_a = DisjointSet::singletons(vs.len());
        let mut dsu_b = DisjointSet::singletons(vs.len());
        let (mut edges_a, mut edges_b) = (0u64, 0u64);
        let mut inclusion = true;
        let mut pair_idx = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                let u = pair_uniform(seed, i, j);
                let (pa, pb) = probs[pair_idx];
                pair_idx += 1;
                let ea = u < pa;
                let eb = u < pb;
                if ea {
                    edges_a += 1;
                    dsu_a.union(i, j);
                }
                if eb {
                    edges_b += 1;
                    dsu_b.union(i, j);
                }
                if ea && !eb {
                    inclusion = false;
                }
            }
        }
        let largest_a = cluster_stats(&mut dsu_a).largest_size;
        let largest_b = cluster_stats(&mut dsu_b).largest_size;
        SeedCouplingRow {
            seed,
            edges_a,
            edges_b,
            inclusion,
            largest_a,
            largest_b,
            dominance: largest_a <= largest_b,
        }
    });
    let inclusion_ok = rows.iter().filter(|r| r.inclusion).count() as u32;
    let dominance_ok = rows.iter().filter(|r| r.dominance).count() as u32;
    Ok(CoupledReport {
        pairs: vs.pair_count(),
        seeds: seeds.len() as u32,
        inclusion_ok,
        dominance_ok,
        rows,
    })
}
