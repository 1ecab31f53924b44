//! The public-goods game layer: specialized equilibria of a digraph, with
//! per-player payoffs and best-response checks.
//!
//! Run with: cargo run --example specialized_equilibria

use netgoods::digraph::Digraph;
use netgoods::game::{
    best_response, contributors, is_nash, payoff, specialized_equilibria, EffortProfile, GameParams,
};

fn main() {
    let params = GameParams::default_unit();

    // A star with two centers: 2, 3, 4 each benefit from both 0 and 1.
    let g = Digraph::from_edges(5, &[(2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (4, 1)]).unwrap();
    let report = specialized_equilibria(&g, &params, 1_000_000).unwrap();
    println!(
        "two-center star: {} specialized equilibrium(s)",
        report.profiles.len()
    );
    for e in &report.profiles {
        println!(
            "  contributors {}: profile {:?}",
            contributors(&params, e),
            e.as_slice()
        );
        for i in 0..g.n() {
            println!(
                "    player {i}: payoff {:.4}",
                payoff(&g, &params, e, i).unwrap()
            );
        }
    }

    // The directed 3-cycle has no specialized equilibrium, but it does have
    // an interior Nash equilibrium at e*/2 everywhere.
    let cycle = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let report = specialized_equilibria(&cycle, &params, 1_000_000).unwrap();
    println!(
        "\n3-cycle: {} specialized equilibria",
        report.profiles.len()
    );
    let half = params.e_star() / 2.0;
    let interior = EffortProfile::new(vec![half; 3]).unwrap();
    println!(
        "  interior profile {:?}: nash={}",
        interior.as_slice(),
        is_nash(&cycle, &params, &interior).unwrap()
    );
    println!(
        "  best response of player 0 to it: {:.2}",
        best_response(&cycle, &params, &interior, 0).unwrap()
    );
}
