//! Stability of specialized equilibria under simultaneous best-response
//! dynamics, across four instructive games.
//!
//! Run with: cargo run --example stability_probe

use netgoods::digraph::Digraph;
use netgoods::dynamics::{probe_stability, EmpiricalOutcome, StabilityConfig};
use netgoods::game::{EffortProfile, GameParams};

fn main() {
    let params = GameParams::default_unit();
    let cases: Vec<(&str, Digraph, Vec<f64>)> = vec![
        (
            "single arc 1->0 (everything forced)",
            Digraph::from_edges(2, &[(1, 0)]).unwrap(),
            vec![1.0, 0.0],
        ),
        (
            "mutual pair (no stable equilibrium)",
            Digraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap(),
            vec![1.0, 0.0],
        ),
        (
            "two hubs covering each outsider twice (order-2 kernel)",
            Digraph::from_edges(4, &[(2, 0), (2, 1), (3, 0), (3, 1)]).unwrap(),
            vec![1.0, 1.0, 0.0, 0.0],
        ),
        (
            "directed 3-cycle, interior profile (never stable)",
            Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
            vec![0.5, 0.5, 0.5],
        ),
    ];

    for (name, g, efforts) in cases {
        let e = EffortProfile::new(efforts).unwrap();
        let cfg = StabilityConfig::defaults(g.n(), 7);
        let v = probe_stability(&g, &params, &e, &cfg).unwrap();
        println!("{name}");
        println!(
            "  analytic: {:?} (kernel order {:?}, residual size {})",
            v.analytic, v.kernel_order, v.residual_size
        );
        match &v.empirical {
            EmpiricalOutcome::AllConverged { perturbations } => {
                println!("  empirical: all {perturbations} perturbations flowed back");
            }
            EmpiricalOutcome::Diverged(w) => {
                println!(
                    "  empirical: diverged under {:?} after {} iterations",
                    w.kind, w.iterations
                );
                for (i, state) in w.trajectory.iter().take(4).enumerate() {
                    println!("    step {i}: {state:?}");
                }
            }
        }
        println!();
    }
}
