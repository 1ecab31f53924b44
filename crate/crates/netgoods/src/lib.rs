//! Kernels of directed graphs and the networked public-goods games they
//! solve.
//!
//! A kernel of a digraph is an independent set that every outside node has
//! an arc into. In the public-goods game where each player benefits from the
//! efforts of the nodes it points at, kernels are exactly the contributor
//! sets of *specialized* equilibria: profiles where everyone plays either the
//! threshold effort `e*` or nothing. This crate turns that correspondence
//! into tools:
//!
//! * [`digraph`] — bit-row digraphs, parsing, SCCs, cycle parity,
//!   symmetrization, seeded G(n,p) sampling;
//! * [`kernels`] — kernel verification and budgeted exact enumeration, plus
//!   the weighted-threshold variant;
//! * [`game`] — payoffs, best responses, Nash and specialized-equilibrium
//!   checks, and equilibrium enumeration through kernels;
//! * [`elimination`] — iterative removal of players with forced behavior and
//!   lifting of residual equilibria back to the full game;
//! * [`dynamics`] — simultaneous best-response iteration and stability
//!   verdicts (analytic certificates plus an empirical perturbation probe);
//! * [`reciprocity`] — persistence of equilibria as one-way links become
//!   bidirectional, and the orientation construction;
//! * [`montecarlo`] — seeded random-digraph existence experiments;
//! * [`analysis`] — the all-in-one report behind the CLI.
//!
//! The `examples/` directory has one runnable walkthrough per capability:
//!
//! ```text
//! cargo run --example small_digraph_kernels
//! cargo run --example specialized_equilibria
//! cargo run --example elimination_walkthrough
//! cargo run --example stability_probe
//! cargo run --example reciprocity_sweep
//! cargo run --example random_existence
//! cargo run --example full_analysis
//! ```
//!
//! Quick taste — the two-player mutual link has two specialized equilibria:
//!
//! ```
//! use netgoods::digraph::Digraph;
//! use netgoods::game::{specialized_equilibria, GameParams};
//!
//! let g = Digraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
//! let params = GameParams::default_unit();
//! let report = specialized_equilibria(&g, &params, 1_000_000).unwrap();
//! let profiles: Vec<_> = report.profiles.iter().map(|e| e.as_slice().to_vec()).collect();
//! assert_eq!(profiles, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
//! ```

pub mod analysis;
pub mod digraph;
pub mod dynamics;
pub mod elimination;
pub mod error;
pub mod game;
pub mod kernels;
pub mod montecarlo;
pub mod reciprocity;

pub use digraph::{Digraph, NodeSet};
pub use error::{Error, Result};
pub use game::{EffortProfile, GameParams};
