//! Simultaneous best-response dynamics and stability classification.
//!
//! An equilibrium is stable when every small legitimate perturbation flows
//! back to it under iterated simultaneous best responses. Three analytic
//! certificates are checked first (non-specialized profiles are always
//! unstable; an empty elimination residual or a kernel of order 2 guarantee
//! stability); the empirical suite then probes the actual dynamics at the
//! configured radius. Empirical divergence is a hard witness, empirical
//! convergence is only evidence, and the verdict type keeps the two apart.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::elimination::eliminate;
use crate::error::{Error, Result};
use crate::game::{
    contributors, is_nash, is_specialized_profile, EffortProfile, GameParams, Spillover,
};
use crate::kernels::kernel_order;

/// How many trajectory states a divergence witness keeps.
const WITNESS_PREFIX: usize = 10;

/// Tuning for the empirical stability probe.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityConfig {
    /// Perturbation radius as a fraction of `e*`.
    pub rho: f64,
    /// Number of random perturbations (on top of the structured ones).
    pub samples: usize,
    pub max_iters: usize,
    /// Convergence tolerance as a fraction of `e*`.
    pub tol: f64,
    pub seed: u64,
}

impl StabilityConfig {
    pub fn defaults(n: usize, seed: u64) -> Self {
        StabilityConfig {
            rho: 0.1,
            samples: 200,
            max_iters: 50 * n.max(1),
            tol: 1e-8,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rho.is_nan() || self.rho <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "rho must be positive, got {}",
                self.rho
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.samples < 1 {
            return Err(Error::InvalidConfig("need at least one sample".into()));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("need at least one iteration".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnalyticVerdict {
    /// Interior efforts somewhere; such equilibria are never stable.
    NonSpecializedUnstable,
    /// Elimination removes every node; all behavior is forced.
    StableByEmptyResidual,
    /// Every free-rider is covered by at least two specialists.
    StableByOrder2,
    /// Stability equals that of the (strictly smaller) residual game.
    InheritedFromResidual,
    /// No certificate applies.
    Unknown,
}

/// Which perturbation broke (or survived) the probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PerturbationKind {
    /// Contributors shifted down and free-riders up simultaneously.
    ShiftPattern,
    SingleUp(usize),
    SingleDown(usize),
    Random(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceWitness {
    pub kind: PerturbationKind,
    pub perturbation: Vec<f64>,
    /// First few states of the runaway trajectory, starting at the
    /// perturbed profile.
    pub trajectory: Vec<Vec<f64>>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub enum EmpiricalOutcome {
    AllConverged { perturbations: usize },
    Diverged(DivergenceWitness),
}

impl EmpiricalOutcome {
    pub fn all_converged(&self) -> bool {
        matches!(self, EmpiricalOutcome::AllConverged { .. })
    }
}

/// Stability classification of one equilibrium.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityVerdict {
    pub analytic: AnalyticVerdict,
    pub empirical: EmpiricalOutcome,
    /// Order of the contributor kernel, when the profile is specialized.
    pub kernel_order: Option<usize>,
    pub residual_size: usize,
    pub eliminated: usize,
}

impl StabilityVerdict {
    /// Certified or evidenced stable: an analytic stability certificate, or
    /// no certificate but every probed perturbation converged.
    pub fn looks_stable(&self) -> bool {
        match self.analytic {
            AnalyticVerdict::StableByEmptyResidual | AnalyticVerdict::StableByOrder2 => true,
            AnalyticVerdict::NonSpecializedUnstable => false,
            _ => self.empirical.all_converged(),
        }
    }
}

/// Trajectory of simultaneous best-response iteration.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    /// Visited profiles, starting with the initial one.
    pub states: Vec<EffortProfile>,
    /// Iteration index at which the max-coordinate change dropped below
    /// tolerance, if it did before `max_iters`.
    pub converged_at: Option<usize>,
}

impl Trajectory {
    pub fn converged(&self) -> bool {
        self.converged_at.is_some()
    }

    pub fn last(&self) -> &EffortProfile {
        self.states.last().expect("trajectory is never empty")
    }
}

/// One simultaneous best-response update.
pub fn best_response_step(g: &Digraph, params: &GameParams, e: &EffortProfile) -> EffortProfile {
    let e_star = params.e_star();
    let next: Vec<f64> = (0..g.n())
        .map(|i| {
            let row = match params.spillover() {
                Spillover::Outgoing => g.out_row(i),
                Spillover::Incoming => g.in_row(i),
            };
            let spill: f64 = row.iter().map(|j| e.get(j)).sum();
            (e_star - spill).max(0.0)
        })
        .collect();
    EffortProfile::new(next).expect("best responses are nonnegative")
}

/// Iterate `e -> f(e)` until the step size falls below `tol * e*` or
/// `max_iters` updates have been applied.
pub fn iterate_best_response(
    g: &Digraph,
    params: &GameParams,
    e0: &EffortProfile,
    max_iters: usize,
    tol: f64,
) -> Result<Trajectory> {
    if e0.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: e0.len(),
        });
    }
    let tol_abs = tol * params.e_star();
    let mut states = vec![e0.clone()];
    let mut converged_at = None;
    for r in 0..max_iters {
        let cur = states.last().expect("nonempty");
        let next = best_response_step(g, params, cur);
        let change = next.distance(cur);
        states.push(next);
        if change <= tol_abs {
            converged_at = Some(r);
            break;
        }
    }
    Ok(Trajectory {
        states,
        converged_at,
    })
}

/// Probe whether the dynamics return to `e` from every perturbation in the
/// suite: the structured patterns plus `cfg.samples` random draws. Stops at
/// the first divergence; the suite order is fixed, so the reported witness
/// is deterministic.
pub fn empirical_probe(
    g: &Digraph,
    params: &GameParams,
    e: &EffortProfile,
    cfg: &StabilityConfig,
) -> Result<EmpiricalOutcome> {
    cfg.validate()?;
    if e.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: e.len(),
        });
    }
    let e_star = params.e_star();
    let rho_abs = cfg.rho * e_star;
    let tol_abs = cfg.tol * e_star;

    let mut tried = 0usize;
    for (kind, eps) in perturbation_suite(e, e_star, rho_abs, cfg) {
        tried += 1;
        let start = EffortProfile::new(
            e.as_slice()
                .iter()
                .zip(&eps)
                .map(|(&x, &d)| (x + d).max(0.0))
                .collect(),
        )
        .expect("perturbed efforts are nonnegative");
        if let Some(witness) = run_probe(g, params, e, start, tol_abs, cfg.max_iters, kind, eps) {
            return Ok(EmpiricalOutcome::Diverged(witness));
        }
    }
    Ok(EmpiricalOutcome::AllConverged {
        perturbations: tried,
    })
}

fn perturbation_suite(
    e: &EffortProfile,
    e_star: f64,
    rho_abs: f64,
    cfg: &StabilityConfig,
) -> Vec<(PerturbationKind, Vec<f64>)> {
    let n = e.len();
    let mut suite = Vec::new();

    // Contributors down, free-riders up; the pattern the order-2 condition
    // guards against.
    let shift: Vec<f64> = e
        .as_slice()
        .iter()
        .map(|&x| {
            if x >= 0.5 * e_star {
                -rho_abs.min(x)
            } else {
                rho_abs
            }
        })
        .collect();
    if shift.iter().any(|&d| d != 0.0) {
        suite.push((PerturbationKind::ShiftPattern, shift));
    }
    for i in 0..n {
        let mut up = vec![0.0; n];
        up[i] = rho_abs;
        suite.push((PerturbationKind::SingleUp(i), up));
        let down = rho_abs.min(e.get(i));
        if down > 0.0 {
            let mut d = vec![0.0; n];
            d[i] = -down;
            suite.push((PerturbationKind::SingleDown(i), d));
        }
    }
    for t in 0..cfg.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(t as u64);
        let eps: Vec<f64> = e
            .as_slice()
            .iter()
            .map(|&x| {
                let lo = -rho_abs.min(x);
                rng.random_range(lo..rho_abs)
            })
            .collect();
        suite.push((PerturbationKind::Random(t), eps));
    }
    suite
}

#[allow(clippy::too_many_arguments)]
fn run_probe(
    g: &Digraph,
    params: &GameParams,
    target: &EffortProfile,
    start: EffortProfile,
    tol_abs: f64,
    max_iters: usize,
    kind: PerturbationKind,
    eps: Vec<f64>,
) -> Option<DivergenceWitness> {
    let mut prefix: Vec<Vec<f64>> = vec![start.as_slice().to_vec()];
    let mut cur = start;
    for r in 0..=max_iters {
        if cur.distance(target) <= tol_abs {
            return None;
        }
        if r == max_iters {
            break;
        }
        let next = best_response_step(g, params, &cur);
        let stuck = next == cur;
        if prefix.len() < WITNESS_PREFIX {
            prefix.push(next.as_slice().to_vec());
        }
        cur = next;
        if stuck {
            // Exact fixed point away from the target; it will never move.
            return Some(DivergenceWitness {
                kind,
                perturbation: eps,
                trajectory: prefix,
                iterations: r + 1,
            });
        }
    }
    Some(DivergenceWitness {
        kind,
        perturbation: eps,
        trajectory: prefix,
        iterations: max_iters,
    })
}

/// Classify the stability of the Nash equilibrium `e`.
///
/// Analytic certificates are evaluated on the elimination residual and the
/// contributor kernel; the empirical suite always runs on the full game at
/// the configured radius, so the two parts of the verdict answer different
/// questions and may legitimately disagree when `rho` exceeds the
/// equilibrium's basin.
pub fn probe_stability(
    g: &Digraph,
    params: &GameParams,
    e: &EffortProfile,
    cfg: &StabilityConfig,
) -> Result<StabilityVerdict> {
    cfg.validate()?;
    if !is_nash(g, params, e)? {
        return Err(Error::NotNash);
    }
    let working = match params.spillover() {
        Spillover::Outgoing => g.clone(),
        Spillover::Incoming => g.transpose(),
    };
    let trace = eliminate(&working);
    let residual_size = trace.residual.n();
    let eliminated = g.n() - residual_size;

    let (analytic, order) = if !is_specialized_profile(params, e) {
        (AnalyticVerdict::NonSpecializedUnstable, None)
    } else {
        let k = contributors(params, e);
        let order = kernel_order(&working, &k)?;
        let verdict = if trace.residual_is_empty() {
            AnalyticVerdict::StableByEmptyResidual
        } else if order >= 2 {
            AnalyticVerdict::StableByOrder2
        } else if residual_size < g.n() {
            AnalyticVerdict::InheritedFromResidual
        } else {
            AnalyticVerdict::Unknown
        };
        (verdict, Some(order))
    };

    let empirical = empirical_probe(g, params, e, cfg)?;
    Ok(StabilityVerdict {
        analytic,
        empirical,
        kernel_order: order,
        residual_size,
        eliminated,
    })
}
