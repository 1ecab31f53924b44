//! The public-goods game on a digraph: payoffs, best responses, and the
//! correspondence between kernels and specialized equilibria.
//!
//! Each player exerts a nonnegative effort and benefits from the efforts of
//! the players it points at. Equilibrium structure depends only on the
//! threshold effort `e*` where marginal benefit meets marginal cost; the
//! concrete benefit function only affects reported payoff values.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::digraph::{Digraph, NodeSet};
use crate::error::{Error, Result};
use crate::kernels::enumerate_kernels;

/// Relative tolerance (in units of `e*`) for equilibrium verification.
pub const EQUILIBRIUM_TOL: f64 = 1e-9;

/// Which adjacency direction carries spillovers.
///
/// `Outgoing` is the model's convention: player `i` benefits from the nodes
/// in its out-neighborhood. `Incoming` plays the same game on the transpose
/// and exists for sensitivity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spillover {
    Outgoing,
    Incoming,
}

/// Game parameters: marginal cost `c`, threshold effort `e*`, and the
/// benefit curve `b(x) = (1 + e*) * c * ln(1 + x)`, which satisfies
/// `b(0) = 0`, `b'(0) = (1 + e*) c > c`, and `b'(e*) = c` exactly.
#[derive(Debug, Clone, Serialize)]
pub struct GameParams {
    cost: f64,
    e_star: f64,
    benefit_scale: f64,
    spillover: Spillover,
}

impl GameParams {
    pub fn new(cost: f64, e_star: f64) -> Result<Self> {
        if cost.is_nan() || cost <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "cost must be positive, got {cost}"
            )));
        }
        if e_star.is_nan() || e_star <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "threshold effort must be positive, got {e_star}"
            )));
        }
        Ok(GameParams {
            cost,
            e_star,
            benefit_scale: (1.0 + e_star) * cost,
            spillover: Spillover::Outgoing,
        })
    }

    /// The default game: unit cost, unit threshold, `b(x) = 2 ln(1 + x)`.
    pub fn default_unit() -> Self {
        GameParams::new(1.0, 1.0).expect("unit parameters are valid")
    }

    pub fn with_incoming_spillovers(mut self) -> Self {
        self.spillover = Spillover::Incoming;
        self
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn e_star(&self) -> f64 {
        self.e_star
    }

    pub fn spillover(&self) -> Spillover {
        self.spillover
    }

    pub fn benefit(&self, x: f64) -> f64 {
        self.benefit_scale * x.ln_1p()
    }

    /// Neighborhood whose efforts spill over to `i` under this convention.
    fn spill_row<'g>(&self, g: &'g Digraph, i: usize) -> &'g NodeSet {
        match self.spillover {
            Spillover::Outgoing => g.out_row(i),
            Spillover::Incoming => g.in_row(i),
        }
    }

    fn tol(&self) -> f64 {
        EQUILIBRIUM_TOL * self.e_star
    }
}

/// Per-node efforts; value type tied to a graph of the same size.
/// Serializes as a plain array in node order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffortProfile(Vec<f64>);

impl<'de> Deserialize<'de> for EffortProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        EffortProfile::new(Vec::<f64>::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

impl EffortProfile {
    pub fn new(efforts: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = efforts.iter().find(|&&e| e.is_nan() || e < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "efforts must be nonnegative, got {bad}"
            )));
        }
        Ok(EffortProfile(efforts))
    }

    pub fn zeros(n: usize) -> Self {
        EffortProfile(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Max-norm distance to another profile of the same length.
    pub fn distance(&self, other: &EffortProfile) -> f64 {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_profile(g: &Digraph, e: &EffortProfile) -> Result<()> {
    if e.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: e.len(),
        });
    }
    Ok(())
}

fn spill_sum(g: &Digraph, params: &GameParams, e: &EffortProfile, i: usize) -> f64 {
    params.spill_row(g, i).iter().map(|j| e.get(j)).sum()
}

/// Player `i`'s payoff: `b(e_i + sum of spillovers) - c * e_i`.
pub fn payoff(g: &Digraph, params: &GameParams, e: &EffortProfile, i: usize) -> Result<f64> {
    check_profile(g, e)?;
    if i >= g.n() {
        return Err(Error::NodeOutOfRange { node: i, n: g.n() });
    }
    let received = e.get(i) + spill_sum(g, params, e, i);
    Ok(params.benefit(received) - params.cost * e.get(i))
}

/// Player `i`'s best response to the rest of the profile:
/// `max(0, e* - sum of spillovers)`.
pub fn best_response(g: &Digraph, params: &GameParams, e: &EffortProfile, i: usize) -> Result<f64> {
    check_profile(g, e)?;
    if i >= g.n() {
        return Err(Error::NodeOutOfRange { node: i, n: g.n() });
    }
    Ok((params.e_star - spill_sum(g, params, e, i)).max(0.0))
}

/// True iff every effort is (within tolerance) exactly 0 or exactly `e*`.
pub fn is_specialized_profile(params: &GameParams, e: &EffortProfile) -> bool {
    let tol = params.tol();
    e.as_slice()
        .iter()
        .all(|&x| x.abs() <= tol || (x - params.e_star).abs() <= tol)
}

/// True iff every player already plays a best response.
pub fn is_nash(g: &Digraph, params: &GameParams, e: &EffortProfile) -> Result<bool> {
    check_profile(g, e)?;
    let tol = params.tol();
    for i in 0..g.n() {
        let target = (params.e_star - spill_sum(g, params, e, i)).max(0.0);
        if (e.get(i) - target).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Contributors of a specialized profile: the players at `e*`.
pub fn contributors(params: &GameParams, e: &EffortProfile) -> NodeSet {
    let tol = params.tol();
    let mut k = NodeSet::empty(e.len());
    for (i, &x) in e.as_slice().iter().enumerate() {
        if (x - params.e_star).abs() <= tol {
            k.insert(i);
        }
    }
    k
}

/// The specialized profile where exactly the members of `k` play `e*`.
pub fn contributors_to_profile(
    params: &GameParams,
    n: usize,
    k: &NodeSet,
) -> Result<EffortProfile> {
    if k.universe() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: k.universe(),
        });
    }
    Ok(EffortProfile(
        (0..n)
            .map(|i| if k.contains(i) { params.e_star } else { 0.0 })
            .collect(),
    ))
}

/// All specialized equilibria found within the kernel-search budget.
#[derive(Debug, Clone, Serialize)]
pub struct EquilibriaReport {
    pub profiles: Vec<EffortProfile>,
    pub exhaustive: bool,
}

/// Enumerate specialized equilibria via kernel enumeration. Every returned
/// profile is a specialized Nash equilibrium; `exhaustive` is false when the
/// search budget ran out and the list may be incomplete.
pub fn specialized_equilibria(
    g: &Digraph,
    params: &GameParams,
    budget: u64,
) -> Result<EquilibriaReport> {
    let working = match params.spillover() {
        Spillover::Outgoing => g.clone(),
        Spillover::Incoming => g.transpose(),
    };
    let report = enumerate_kernels(&working, budget);
    let mut profiles = Vec::with_capacity(report.kernels.len());
    for k in &report.kernels {
        let e = contributors_to_profile(params, g.n(), k)?;
        debug_assert_eq!(is_nash(g, params, &e), Ok(true));
        debug_assert!(is_specialized_profile(params, &e));
        profiles.push(e);
    }
    Ok(EquilibriaReport {
        profiles,
        exhaustive: report.exhaustive,
    })
}

/// Kernel membership decides Nash-ness of the induced specialized profile;
/// exposed for callers that already have a candidate contributor set.
pub fn profile_from_kernel_is_nash(g: &Digraph, params: &GameParams, k: &NodeSet) -> Result<bool> {
    let e = contributors_to_profile(params, g.n(), k)?;
    is_nash(g, params, &e)
}
