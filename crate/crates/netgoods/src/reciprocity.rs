//! Comparative statics in network reciprocity.
//!
//! Making one-way links bidirectional never destroys a specialized
//! equilibrium; it can only add new ones. This module checks that
//! persistence between concrete graph pairs, constructs a strict orientation
//! realizing a given maximal independent set as a kernel, and packages the
//! standard caveat that *interior* equilibria enjoy no such monotonicity.

use serde::Serialize;

use crate::digraph::{Digraph, NodeSet};
use crate::error::{Error, Result};
use crate::game::{best_response, is_nash, specialized_equilibria, EffortProfile, GameParams};
use crate::kernels::verify_kernel;

/// True iff every specialized equilibrium of the base game is still an
/// equilibrium on `ghat`. Requires `g ⊆ ghat ⊆ s(g)`.
pub fn check_monotonicity(
    g: &Digraph,
    ghat: &Digraph,
    params: &GameParams,
    budget: u64,
) -> Result<bool> {
    if !g.is_subgraph_of(ghat) || !ghat.is_subgraph_of(&g.symmetrize()) {
        return Err(Error::NotPartialSymmetrization);
    }
    let report = specialized_equilibria(g, params, budget)?;
    if !report.exhaustive {
        return Err(Error::BudgetExhausted);
    }
    for e in &report.profiles {
        if !is_nash(ghat, params, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orient a symmetric graph so that the maximal independent set `k` becomes
/// a kernel of a strict digraph with the same architecture: cross edges
/// point from free-riders into `k`, and edges between free-riders point from
/// the higher label to the lower.
pub fn orient_from_mis(gbar: &Digraph, k: &NodeSet) -> Result<Digraph> {
    if !gbar.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !verify_kernel(gbar, k)? {
        // On a symmetric graph, kernels are exactly the maximal independent sets.
        return Err(Error::NotMaximalIndependent);
    }
    let mut edges = Vec::new();
    for (u, v) in gbar.edges() {
        if u > v {
            continue; // each symmetric pair once
        }
        match (k.contains(u), k.contains(v)) {
            (true, true) => unreachable!("independent set has no internal edges"),
            (false, true) => edges.push((u, v)),
            (true, false) => edges.push((v, u)),
            (false, false) => edges.push((v, u)), // higher label points lower
        }
    }
    let oriented = Digraph::from_edges(gbar.n(), &edges).expect("orientation edges are valid");
    debug_assert!(oriented.one_way_arcs().len() == oriented.arc_count());
    debug_assert_eq!(oriented.symmetrize(), *gbar);
    debug_assert_eq!(verify_kernel(&oriented, k), Ok(true));
    Ok(oriented)
}

/// Persistence of the base game's specialized equilibria across a pair of
/// graphs with the same architecture: one row per equilibrium, one column
/// per graph.
#[derive(Debug, Clone, Serialize)]
pub struct PersistenceMatrix {
    pub graphs: Vec<String>,
    pub rows: Vec<PersistenceRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PersistenceRow {
    pub contributors: Vec<usize>,
    pub preserved: Vec<bool>,
}

pub fn persistence_matrix(
    g: &Digraph,
    ghat: &Digraph,
    params: &GameParams,
    budget: u64,
) -> Result<PersistenceMatrix> {
    if !g.is_subgraph_of(ghat) || !ghat.is_subgraph_of(&g.symmetrize()) {
        return Err(Error::NotPartialSymmetrization);
    }
    let report = specialized_equilibria(g, params, budget)?;
    if !report.exhaustive {
        return Err(Error::BudgetExhausted);
    }
    let mut rows = Vec::with_capacity(report.profiles.len());
    for e in &report.profiles {
        rows.push(PersistenceRow {
            contributors: crate::game::contributors(params, e).members(),
            preserved: vec![is_nash(g, params, e)?, is_nash(ghat, params, e)?],
        });
    }
    Ok(PersistenceMatrix {
        graphs: vec!["base".into(), "target".into()],
        rows,
    })
}

/// The packaged non-monotonicity caveat for interior equilibria: the
/// three-player directed cycle's distributed equilibrium survives on the
/// cycle but not on its symmetrization.
#[derive(Debug, Clone, Serialize)]
pub struct InteriorCounterexample {
    pub graph: Digraph,
    pub symmetrized: Digraph,
    pub profile: EffortProfile,
    pub nash_on_original: bool,
    pub nash_on_symmetrized: bool,
    pub best_responses_on_symmetrized: Vec<f64>,
}

pub fn counterexample_interior(params: &GameParams) -> InteriorCounterexample {
    let graph = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).expect("cycle edges");
    let symmetrized = graph.symmetrize();
    let half = params.e_star() / 2.0;
    let profile = EffortProfile::new(vec![half; 3]).expect("nonnegative");
    let nash_on_original = is_nash(&graph, params, &profile).expect("sizes match");
    let nash_on_symmetrized = is_nash(&symmetrized, params, &profile).expect("sizes match");
    let best_responses_on_symmetrized = (0..3)
        .map(|i| best_response(&symmetrized, params, &profile, i).expect("in range"))
        .collect();
    InteriorCounterexample {
        graph,
        symmetrized,
        profile,
        nash_on_original,
        nash_on_symmetrized,
        best_responses_on_symmetrized,
    }
}
