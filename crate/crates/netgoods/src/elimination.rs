//! Iterative node elimination and equilibrium lifting.
//!
//! Each round removes three classes of players whose equilibrium behavior is
//! locally determined:
//!
//! * nodes with no out-neighbors must contribute (nobody can cover them),
//! * nodes pointing at such a forced contributor can safely free-ride,
//! * after those removals, nodes with no in-neighbors influence nobody and
//!   are strategically irrelevant.
//!
//! Rounds repeat until nothing changes; the surviving subgraph is the
//! residual. Its specialized equilibria are in bijection with those of the
//! original game, and [`lift_equilibrium`] realizes that bijection.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::{Digraph, NodeSet};
use crate::error::{Error, Result};
use crate::game::{is_nash, is_specialized_profile, EffortProfile, GameParams};

/// One round of removals, in original node labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EliminationRound {
    /// Nodes with no remaining out-neighbors: forced contributors.
    pub contributors: NodeSet,
    /// Nodes with an out-neighbor among this round's contributors: forced
    /// free-riders.
    pub free_riders: NodeSet,
    /// Nodes left without in-neighbors after the removals above.
    pub irrelevant: NodeSet,
}

/// Full record of an elimination run.
///
/// Serialization embeds the original graph, so a stored trace can be parsed
/// back and lifted against later.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTrace {
    pub rounds: Vec<EliminationRound>,
    pub forced_contributors: NodeSet,
    pub forced_free_riders: NodeSet,
    pub irrelevant: NodeSet,
    /// Residual graph, compacted to labels `0..residual_nodes.len()`.
    pub residual: Digraph,
    /// `residual_nodes[new]` is the original label of residual node `new`.
    pub residual_nodes: Vec<usize>,
    original: Digraph,
}

/// JSON form of a trace.
#[derive(Serialize, Deserialize)]
struct TraceDoc {
    rounds: Vec<RoundDoc>,
    forced_contributors: Vec<usize>,
    forced_free_riders: Vec<usize>,
    irrelevant: Vec<usize>,
    residual: Digraph,
    residual_nodes: Vec<usize>,
    original: Digraph,
}

#[derive(Serialize, Deserialize)]
struct RoundDoc {
    contributors: Vec<usize>,
    free_riders: Vec<usize>,
    irrelevant: Vec<usize>,
}

impl Serialize for EliminationTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TraceDoc {
            rounds: self
                .rounds
                .iter()
                .map(|r| RoundDoc {
                    contributors: r.contributors.members(),
                    free_riders: r.free_riders.members(),
                    irrelevant: r.irrelevant.members(),
                })
                .collect(),
            forced_contributors: self.forced_contributors.members(),
            forced_free_riders: self.forced_free_riders.members(),
            irrelevant: self.irrelevant.members(),
            residual: self.residual.clone(),
            residual_nodes: self.residual_nodes.clone(),
            original: self.original.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EliminationTrace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = TraceDoc::deserialize(deserializer)?;
        let n = doc.original.n();
        let set = |members: &[usize]| {
            NodeSet::from_members(n, members.iter().copied()).map_err(D::Error::custom)
        };
        Ok(EliminationTrace {
            rounds: doc
                .rounds
                .iter()
                .map(|r| {
                    Ok(EliminationRound {
                        contributors: set(&r.contributors)?,
                        free_riders: set(&r.free_riders)?,
                        irrelevant: set(&r.irrelevant)?,
                    })
                })
                .collect::<std::result::Result<_, D::Error>>()?,
            forced_contributors: set(&doc.forced_contributors)?,
            forced_free_riders: set(&doc.forced_free_riders)?,
            irrelevant: set(&doc.irrelevant)?,
            residual: doc.residual,
            residual_nodes: doc.residual_nodes,
            original: doc.original,
        })
    }
}

impl EliminationTrace {
    pub fn original(&self) -> &Digraph {
        &self.original
    }

    pub fn original_n(&self) -> usize {
        self.original.n()
    }

    pub fn residual_is_empty(&self) -> bool {
        self.residual.n() == 0
    }
}

/// Run the elimination to its fixed point.
pub fn eliminate(g: &Digraph) -> EliminationTrace {
    let n = g.n();
    let mut alive = NodeSet::full(n);
    let mut rounds = Vec::new();
    let mut forced_contributors = NodeSet::empty(n);
    let mut forced_free_riders = NodeSet::empty(n);
    let mut irrelevant_all = NodeSet::empty(n);

    loop {
        let mut contributors = NodeSet::empty(n);
        for i in alive.iter() {
            if g.out_row(i).intersection_len(&alive) == 0 {
                contributors.insert(i);
            }
        }
        // A contributor has no live out-neighbors, so it cannot also land
        // in the free-rider set.
        let mut free_riders = NodeSet::empty(n);
        for i in alive.iter() {
            if g.out_row(i).intersects(&contributors) {
                free_riders.insert(i);
            }
        }
        debug_assert!(contributors.is_disjoint(&free_riders));

        alive.subtract(&contributors);
        alive.subtract(&free_riders);

        let mut irrelevant = NodeSet::empty(n);
        for i in alive.iter() {
            if g.in_row(i).intersection_len(&alive) == 0 {
                irrelevant.insert(i);
            }
        }
        alive.subtract(&irrelevant);

        if contributors.is_empty() && free_riders.is_empty() && irrelevant.is_empty() {
            break;
        }
        forced_contributors.union_with(&contributors);
        forced_free_riders.union_with(&free_riders);
        irrelevant_all.union_with(&irrelevant);
        rounds.push(EliminationRound {
            contributors,
            free_riders,
            irrelevant,
        });
    }

    let residual_nodes = alive.members();
    let mut new_label = vec![usize::MAX; n];
    for (new, &old) in residual_nodes.iter().enumerate() {
        new_label[old] = new;
    }
    let mut edges = Vec::new();
    for &old_u in &residual_nodes {
        for old_v in g.out_row(old_u).iter() {
            if alive.contains(old_v) {
                edges.push((new_label[old_u], new_label[old_v]));
            }
        }
    }
    let residual =
        Digraph::from_edges(residual_nodes.len(), &edges).expect("residual edges are valid");

    EliminationTrace {
        rounds,
        forced_contributors,
        forced_free_riders,
        irrelevant: irrelevant_all,
        residual,
        residual_nodes,
        original: g.clone(),
    }
}

/// Extend a specialized equilibrium of the residual game to the full graph.
///
/// Forced contributors play `e*`, forced free-riders play 0, residual nodes
/// copy `residual_e`, and irrelevant nodes are assigned by replaying the
/// equilibrium condition in reverse round order: by construction, every
/// out-neighbor of an irrelevant node is already assigned when its own
/// effort is computed.
pub fn lift_equilibrium(
    trace: &EliminationTrace,
    residual_e: &EffortProfile,
    params: &GameParams,
) -> Result<EffortProfile> {
    if residual_e.len() != trace.residual.n() {
        return Err(Error::SizeMismatch {
            expected: trace.residual.n(),
            got: residual_e.len(),
        });
    }
    if !is_specialized_profile(params, residual_e) || !is_nash(&trace.residual, params, residual_e)?
    {
        return Err(Error::NotResidualEquilibrium);
    }

    let g = &trace.original;
    let n = g.n();
    let e_star = params.e_star();
    let mut effort = vec![f64::NAN; n];

    for (new, &old) in trace.residual_nodes.iter().enumerate() {
        // Snap to exact 0 / e* so the replayed threshold sums are exact.
        let x = residual_e.get(new);
        effort[old] = if x > 0.5 * e_star { e_star } else { 0.0 };
    }
    for i in trace.forced_contributors.iter() {
        effort[i] = e_star;
    }
    for i in trace.forced_free_riders.iter() {
        effort[i] = 0.0;
    }
    for round in trace.rounds.iter().rev() {
        for i in round.irrelevant.iter() {
            let spill: f64 = g
                .out_row(i)
                .iter()
                .map(|j| {
                    debug_assert!(!effort[j].is_nan(), "out-neighbor {j} of {i} unassigned");
                    effort[j]
                })
                .sum();
            effort[i] = if spill >= e_star { 0.0 } else { e_star };
        }
    }

    debug_assert!(effort.iter().all(|x| !x.is_nan()));
    let lifted = EffortProfile::new(effort)?;
    debug_assert_eq!(is_nash(g, params, &lifted), Ok(true));
    Ok(lifted)
}
