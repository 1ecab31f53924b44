//! One-shot graph analysis: everything the toolkit knows about a game,
//! bundled into a single serializable report.

use serde::Serialize;

use crate::digraph::{CycleParityReport, Digraph};
use crate::dynamics::{probe_stability, StabilityConfig, StabilityVerdict};
use crate::elimination::{eliminate, EliminationRound};
use crate::error::Result;
use crate::game::{contributors, payoff, specialized_equilibria, EffortProfile, GameParams};
use crate::kernels::enumerate_kernels;

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Kernel-search expansion budget.
    pub budget: u64,
    /// Simple-cycle enumeration cap for the even-cycle question.
    pub cycle_limit: u64,
    pub stability: StabilityConfig,
}

impl AnalyzeOptions {
    pub fn defaults(n: usize, seed: u64) -> Self {
        AnalyzeOptions {
            budget: 10_000_000,
            cycle_limit: 100_000,
            stability: StabilityConfig::defaults(n, seed),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumEntry {
    pub contributors: Vec<usize>,
    pub profile: EffortProfile,
    pub payoffs: Vec<f64>,
    pub stability: StabilityVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct EliminationSummary {
    pub rounds: Vec<EliminationRound>,
    pub forced_contributors: Vec<usize>,
    pub forced_free_riders: Vec<usize>,
    pub irrelevant: Vec<usize>,
    pub residual_nodes: Vec<usize>,
    pub residual_arcs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub arcs: usize,
    pub cycles: CycleParityReport,
    pub kernel_count: usize,
    pub kernels_exhaustive: bool,
    pub kernels: Vec<Vec<usize>>,
    pub equilibria: Vec<EquilibriumEntry>,
    pub elimination: EliminationSummary,
    /// True when any bounded search gave up before finishing; partial output.
    pub budget_exhausted: bool,
}

/// Run the full pipeline on one graph.
pub fn analyze(g: &Digraph, params: &GameParams, opts: &AnalyzeOptions) -> Result<AnalyzeReport> {
    let cycles = g.cycle_parity(opts.cycle_limit);
    let kernels = enumerate_kernels(g, opts.budget);
    let equilibria = specialized_equilibria(g, params, opts.budget)?;

    let mut entries = Vec::with_capacity(equilibria.profiles.len());
    for e in &equilibria.profiles {
        let stability = probe_stability(g, params, e, &opts.stability)?;
        entries.push(EquilibriumEntry {
            contributors: contributors(params, e).members(),
            profile: e.clone(),
            payoffs: payoffs_of(g, params, e)?,
            stability,
        });
    }

    let trace = eliminate(g);
    let elimination = EliminationSummary {
        rounds: trace.rounds.clone(),
        forced_contributors: trace.forced_contributors.members(),
        forced_free_riders: trace.forced_free_riders.members(),
        irrelevant: trace.irrelevant.members(),
        residual_nodes: trace.residual_nodes.clone(),
        residual_arcs: trace.residual.arc_count(),
    };

    let budget_exhausted =
        !kernels.exhaustive || !equilibria.exhaustive || cycles.has_even_cycle.is_none();
    Ok(AnalyzeReport {
        n: g.n(),
        arcs: g.arc_count(),
        cycles,
        kernel_count: kernels.count,
        kernels_exhaustive: kernels.exhaustive,
        kernels: kernels.kernels.iter().map(|k| k.members()).collect(),
        equilibria: entries,
        elimination,
        budget_exhausted,
    })
}

fn payoffs_of(g: &Digraph, params: &GameParams, e: &EffortProfile) -> Result<Vec<f64>> {
    (0..g.n()).map(|i| payoff(g, params, e, i)).collect()
}
