//! The all-in-one report behind the CLI's `analyze` subcommand, driven from
//! library code: structure, kernels, equilibria, elimination, and stability
//! in a single pass.
//!
//! Run with: cargo run --example full_analysis

use netgoods::analysis::{analyze, AnalyzeOptions};
use netgoods::digraph::parse_edge_list;
use netgoods::game::GameParams;

fn main() {
    let g = parse_edge_list(include_str!("data/elimination_demo.edges")).expect("bundled graph");
    let params = GameParams::default_unit();
    let report = analyze(&g, &params, &AnalyzeOptions::defaults(g.n(), 7)).expect("sizes match");

    println!("nodes {} / arcs {}", report.n, report.arcs);
    println!(
        "acyclic={} odd-cycle={} even-cycle={:?}",
        report.cycles.is_acyclic, report.cycles.has_odd_cycle, report.cycles.has_even_cycle
    );
    println!("kernels: {:?}", report.kernels);
    for entry in &report.equilibria {
        println!(
            "equilibrium {:?}: analytic {:?}, kernel order {:?}",
            entry.contributors, entry.stability.analytic, entry.stability.kernel_order
        );
    }
    println!(
        "elimination: {} rounds, residual nodes {:?}",
        report.elimination.rounds.len(),
        report.elimination.residual_nodes
    );

    // The whole report serializes for machine consumption.
    println!(
        "\n{}",
        serde_json::to_string_pretty(&report.cycles).unwrap()
    );
}
