//! Iterative node elimination on an 8-node digraph with an odd 5-cycle,
//! then lifting the residual game's equilibria back to the full graph.
//!
//! Run with: cargo run --example elimination_walkthrough

use netgoods::digraph::{parse_edge_list, to_edge_list};
use netgoods::elimination::{eliminate, lift_equilibrium};
use netgoods::game::{specialized_equilibria, GameParams};

fn main() {
    let g = parse_edge_list(include_str!("data/elimination_demo.edges")).expect("bundled graph");
    println!("input graph: n={} arcs={}", g.n(), g.arc_count());

    let trace = eliminate(&g);
    for (t, round) in trace.rounds.iter().enumerate() {
        println!(
            "round {}: forced contributors {}  forced free-riders {}  irrelevant {}",
            t + 1,
            round.contributors,
            round.free_riders,
            round.irrelevant
        );
    }
    println!(
        "residual: nodes {:?} (original labels), edge list:\n{}",
        trace.residual_nodes,
        to_edge_list(&trace.residual)
    );

    let params = GameParams::default_unit();
    let residual_eq = specialized_equilibria(&trace.residual, &params, 1_000_000).unwrap();
    println!(
        "residual game has {} equilibria; lifting them:",
        residual_eq.profiles.len()
    );
    for re in &residual_eq.profiles {
        let full = lift_equilibrium(&trace, re, &params).unwrap();
        println!(
            "  residual {:?} -> full {:?}",
            re.as_slice(),
            full.as_slice()
        );
    }
}
