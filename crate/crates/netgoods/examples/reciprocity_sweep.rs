//! What happens to specialized equilibria as one-way links become
//! bidirectional: equilibria persist and new ones appear, while interior
//! equilibria enjoy no such guarantee.
//!
//! Run with: cargo run --example reciprocity_sweep

use netgoods::digraph::{Digraph, NodeSet};
use netgoods::game::GameParams;
use netgoods::kernels::enumerate_kernels;
use netgoods::reciprocity::{counterexample_interior, orient_from_mis, persistence_matrix};

fn main() {
    let params = GameParams::default_unit();

    // Strict graph, one added bidirectional link, full symmetrization.
    let g = Digraph::from_edges(3, &[(0, 1), (2, 1), (2, 0)]).unwrap();
    let ghat = Digraph::from_edges(3, &[(0, 1), (1, 0), (2, 1), (2, 0)]).unwrap();
    let sg = g.symmetrize();
    for (name, h) in [("strict", &g), ("partial", &ghat), ("symmetric", &sg)] {
        let count = enumerate_kernels(h, 1_000_000).count;
        println!("{name:9} graph: {count} kernel(s)");
    }

    let matrix = persistence_matrix(&g, &sg, &params, 1_000_000).unwrap();
    println!("\npersistence of the strict graph's equilibria under symmetrization:");
    for row in &matrix.rows {
        println!(
            "  contributors {:?}: preserved = {:?}",
            row.contributors, row.preserved
        );
    }

    // The converse construction: orient a symmetric graph so a chosen
    // maximal independent set becomes a kernel of a strict digraph.
    let triangle =
        Digraph::from_edges(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
    let k = NodeSet::from_members(3, [0]).unwrap();
    let oriented = orient_from_mis(&triangle, &k).unwrap();
    println!(
        "\ntriangle oriented around {{0}}: arcs {:?}",
        oriented.edges()
    );

    // Interior equilibria are not monotone: the 3-cycle's distributed
    // profile dies under symmetrization.
    let record = counterexample_interior(&params);
    println!(
        "\ninterior caveat: profile {:?} nash on cycle = {}, nash on symmetrized = {}",
        record.profile.as_slice(),
        record.nash_on_original,
        record.nash_on_symmetrized
    );
    println!(
        "  best responses on the symmetrized graph: {:?}",
        record.best_responses_on_symmetrized
    );
}
