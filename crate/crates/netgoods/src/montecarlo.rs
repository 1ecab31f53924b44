//! Monte-Carlo estimation of kernel-existence probability in random
//! digraphs, across a sweep of population sizes.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::kernels::{kernel_exists, KernelExistence};

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    /// Population sizes to sweep, ascending.
    pub n_values: Vec<usize>,
    pub p: f64,
    /// Graphs sampled per population size.
    pub trials: usize,
    pub seed: u64,
    /// Kernel-search expansion budget per graph.
    pub search_budget: u64,
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::InvalidConfig("n_values must be nonempty".into()));
        }
        if !self.n_values.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::InvalidConfig("n_values must be sorted".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("need at least one trial".into()));
        }
        if !(0.0..=1.0).contains(&self.p) || self.p.is_nan() {
            return Err(Error::InvalidProbability(self.p));
        }
        Ok(())
    }
}

/// Existence statistics for one population size.
#[derive(Debug, Clone, Serialize)]
pub struct ExistenceRow {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub exists: usize,
    pub undecided: usize,
    /// Existence frequency among decided trials.
    pub frequency: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentResult {
    pub rows: Vec<ExistenceRow>,
}

impl ExperimentResult {
    /// CSV rendering with a fixed header and six-decimal frequencies.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,trials,exists,undecided,frequency,ci_lo,ci_hi\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.6},{:.6},{:.6}\n",
                r.n, r.p, r.trials, r.exists, r.undecided, r.frequency, r.ci_lo, r.ci_hi
            ));
        }
        out
    }
}

/// For each `n`, sample `trials` graphs from G(n, p) and decide kernel
/// existence with a first-solution search. Budget-exhausted searches are
/// counted as undecided, never as evidence either way. Fully reproducible:
/// trial `(i, t)` draws from its own seed-derived stream.
pub fn run_existence_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.n_values.len());
    for (ni, &n) in cfg.n_values.iter().enumerate() {
        let mut exists = 0usize;
        let mut undecided = 0usize;
        for t in 0..cfg.trials {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(((ni as u64) << 32) | t as u64);
            let g = Digraph::sample_gnp_with(n, cfg.p, &mut rng)?;
            match kernel_exists(&g, cfg.search_budget) {
                KernelExistence::Exists(_) => exists += 1,
                KernelExistence::Absent => {}
                KernelExistence::Undecided => undecided += 1,
            }
        }
        let decided = cfg.trials - undecided;
        let frequency = if decided == 0 {
            0.0
        } else {
            exists as f64 / decided as f64
        };
        let (ci_lo, ci_hi) = wilson_interval(exists, decided);
        rows.push(ExistenceRow {
            n,
            p: cfg.p,
            trials: cfg.trials,
            exists,
            undecided,
            frequency,
            ci_lo,
            ci_hi,
        });
    }
    Ok(ExperimentResult { rows })
}

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = phat + z2 / (2.0 * n);
    let margin = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((center - margin) / denom).max(0.0),
        ((center + margin) / denom).min(1.0),
    )
}
