//! Seeded Monte Carlo comparison of the two methods on random systems.
//!
//! Every trial draws its matrix from its own ChaCha8 stream, keyed by the
//! master seed, the order `n` and the trial index, so the report does not
//! depend on how trials are spread over worker threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{hurwitz_verdict, roots_verdict, Method};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::stability::ConvergenceVerdict;

/// Entries are drawn uniformly from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: f64 = 100.0;
/// `|ρ - 1|` at or below this is re-resolved through the Hurwitz route.
pub const MARGINAL_BAND: f64 = 1e-9;
/// Audited trials must agree outside this band.
pub const AUDIT_BAND: f64 = 1e-6;
/// Fraction of trials re-classified through the Hurwitz route.
pub const AUDIT_FRACTION: f64 = 0.01;

const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassOutcome {
    Both,
    GsOnly,
    JacobiOnly,
    Neither,
}

impl ClassOutcome {
    pub fn from_verdicts(jacobi: bool, gauss_seidel: bool) -> Self {
        match (jacobi, gauss_seidel) {
            (true, true) => ClassOutcome::Both,
            (false, true) => ClassOutcome::GsOnly,
            (true, false) => ClassOutcome::JacobiOnly,
            (false, false) => ClassOutcome::Neither,
        }
    }
}

/// Random stream of trial `trial` at order `n`.
pub fn trial_stream(seed: u64, n: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 48) | trial);
    rng
}

/// Real `n × n` matrix with independent uniform entries; a diagonal entry
/// that comes out exactly zero is redrawn.
pub fn sample_matrix<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut v = rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND);
            while i == j && v == 0.0 {
                v = rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND);
            }
            m[(i, j)] = Scalar::new(v, 0.0);
        }
    }
    m
}

/// Per-trial classification with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    pub outcome: ClassOutcome,
    /// Methods whose spectral radius fell in the marginal band.
    pub marginal: usize,
    /// Marginal methods decided by the Hurwitz route rather than by sign.
    pub resolved_by_hurwitz: usize,
    pub audited: bool,
}

fn method_verdict(a: &Matrix, method: Method, audit: bool) -> Result<(bool, bool, bool)> {
    let oracle = roots_verdict(a, method, MARGINAL_BAND)?;
    let rho = oracle.spectral_radius_estimate.unwrap_or(f64::NAN);
    if !rho.is_finite() {
        return Err(Error::Unresolvable(format!("{method}: non-finite spectral radius")));
    }
    if oracle.is_marginal() {
        let h = hurwitz_verdict(a, method)?;
        return Ok(match h.is_marginal() {
            true => (rho < 1.0, true, false),
            false => (h.converges(), true, true),
        });
    }
    if audit && (rho - 1.0).abs() > AUDIT_BAND {
        let h = hurwitz_verdict(a, method)?;
        check_agreement(method, &oracle, &h, rho)?;
    }
    Ok((oracle.converges(), false, false))
}

fn check_agreement(
    method: Method,
    oracle: &ConvergenceVerdict,
    h: &ConvergenceVerdict,
    rho: f64,
) -> Result<()> {
    if h.status != oracle.status {
        return Err(Error::Unresolvable(format!(
            "{method}: spectral radius {rho:e} gives {:?}, Hurwitz route gives {:?}",
            oracle.status, h.status
        )));
    }
    Ok(())
}

fn classify_inner(a: &Matrix, audit: bool) -> Result<TrialRecord> {
    let (j, jm, jh) = method_verdict(a, Method::Jacobi, audit)?;
    let (g, gm, gh) = method_verdict(a, Method::GaussSeidel, audit)?;
    Ok(TrialRecord {
        outcome: ClassOutcome::from_verdicts(j, g),
        marginal: jm as usize + gm as usize,
        resolved_by_hurwitz: jh as usize + gh as usize,
        audited: audit,
    })
}

/// Four-way class from the spectral radii of both iteration matrices.
pub fn classify(a: &Matrix) -> Result<ClassOutcome> {
    classify_inner(a, false).map(|r| r.outcome)
}

/// As [`classify`], additionally cross-checking both methods against the
/// Hurwitz route.
pub fn classify_audited(a: &Matrix) -> Result<TrialRecord> {
    classify_inner(a, true)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub both: u64,
    pub gs_only: u64,
    pub jacobi_only: u64,
    pub neither: u64,
}

impl ClassCounts {
    pub fn get(&self, c: ClassOutcome) -> u64 {
        match c {
            ClassOutcome::Both => self.both,
            ClassOutcome::GsOnly => self.gs_only,
            ClassOutcome::JacobiOnly => self.jacobi_only,
            ClassOutcome::Neither => self.neither,
        }
    }

    fn bump(&mut self, c: ClassOutcome) {
        match c {
            ClassOutcome::Both => self.both += 1,
            ClassOutcome::GsOnly => self.gs_only += 1,
            ClassOutcome::JacobiOnly => self.jacobi_only += 1,
            ClassOutcome::Neither => self.neither += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.both + self.gs_only + self.jacobi_only + self.neither
    }
}

/// Observed proportion with its 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Proportion {
    pub fn wilson(successes: u64, trials: u64) -> Self {
        if trials == 0 {
            return Self {
                value: 0.0,
                ci_low: 0.0,
                ci_high: 1.0,
            };
        }
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        Self {
            value: p,
            ci_low: if successes == 0 { 0.0 } else { (centre - half).max(0.0) },
            ci_high: if successes == trials { 1.0 } else { (centre + half).min(1.0) },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassProportions {
    pub both: Proportion,
    pub gs_only: Proportion,
    pub jacobi_only: Proportion,
    pub neither: Proportion,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Method verdicts that fell in the marginal band.
    pub marginal: u64,
    /// Of those, how many the Hurwitz route decided.
    pub resolved_by_hurwitz: u64,
    /// Trials cross-checked against the Hurwitz route.
    pub audited: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub counts: ClassCounts,
    pub proportions: ClassProportions,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub marginal_band: f64,
    pub audit_band: f64,
    pub audit_fraction: f64,
    pub entry_bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            marginal_band: MARGINAL_BAND,
            audit_band: AUDIT_BAND,
            audit_fraction: AUDIT_FRACTION,
            entry_bound: ENTRY_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub version: String,
    pub seed: u64,
    pub trials: u64,
    pub backend: String,
    pub auditor: String,
    pub tolerances: Tolerances,
    pub per_n: BTreeMap<usize, OrderReport>,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    counts: ClassCounts,
    diag: Diagnostics,
}

impl Tally {
    fn add(&mut self, r: &TrialRecord) {
        self.counts.bump(r.outcome);
        self.diag.marginal += r.marginal as u64;
        self.diag.resolved_by_hurwitz += r.resolved_by_hurwitz as u64;
        self.diag.audited += r.audited as u64;
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.counts.both += o.counts.both;
        self.counts.gs_only += o.counts.gs_only;
        self.counts.jacobi_only += o.counts.jacobi_only;
        self.counts.neither += o.counts.neither;
        self.diag.marginal += o.diag.marginal;
        self.diag.resolved_by_hurwitz += o.diag.resolved_by_hurwitz;
        self.diag.audited += o.diag.audited;
        self
    }
}

/// Trial `trial` at order `n`: the sampled matrix, then one more draw
/// deciding whether the trial is audited.
pub fn run_trial(seed: u64, n: usize, trial: u64) -> Result<TrialRecord> {
    let mut rng = trial_stream(seed, n, trial);
    let a = sample_matrix(n, &mut rng);
    let audit = rng.gen::<f64>() < AUDIT_FRACTION;
    classify_inner(&a, audit)
}

fn run_order(seed: u64, trials: u64, n: usize) -> Result<Tally> {
    (0..trials)
        .into_par_iter()
        .map(|t| run_trial(seed, n, t))
        .try_fold(Tally::default, |mut acc, r| {
            acc.add(&r?);
            Ok(acc)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

/// Classifies `trials` random matrices for every order in `ns`.
///
/// `workers` caps the thread count (`None` uses rayon's default). The report
/// is identical for any worker count.
pub fn run_table1(
    seed: u64,
    trials: u64,
    ns: &[usize],
    workers: Option<usize>,
) -> Result<Table1Report> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::UnsupportedOrder(n));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    let mut per_n = BTreeMap::new();
    for &n in ns {
        let tally = pool.install(|| run_order(seed, trials, n))?;
        let c = tally.counts;
        let prop = |k| Proportion::wilson(c.get(k), trials);
        per_n.insert(
            n,
            OrderReport {
                counts: c,
                proportions: ClassProportions {
                    both: prop(ClassOutcome::Both),
                    gs_only: prop(ClassOutcome::GsOnly),
                    jacobi_only: prop(ClassOutcome::JacobiOnly),
                    neither: prop(ClassOutcome::Neither),
                },
                diagnostics: tally.diag,
            },
        );
    }
    Ok(Table1Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        trials,
        backend: "roots".to_string(),
        auditor: "hurwitz".to_string(),
        tolerances: Tolerances::default(),
        per_n,
    })
}
