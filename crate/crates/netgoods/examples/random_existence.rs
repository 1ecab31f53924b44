//! Monte-Carlo estimate of how often a random digraph G(n, p) admits a
//! kernel (equivalently, how often the game has a specialized equilibrium).
//!
//! Run with: cargo run --example random_existence

use netgoods::montecarlo::{run_existence_experiment, ExperimentConfig};

fn main() {
    let cfg = ExperimentConfig {
        n_values: vec![4, 8, 12, 16],
        p: 0.5,
        trials: 300,
        seed: 7,
        search_budget: 10_000_000,
    };
    let result = run_existence_experiment(&cfg).expect("valid config");
    print!("{}", result.to_csv());

    println!();
    for row in &result.rows {
        let bar_len = (row.frequency * 40.0).round() as usize;
        println!(
            "n={:2}  {:>5.1}%  {}",
            row.n,
            row.frequency * 100.0,
            "#".repeat(bar_len)
        );
    }
    println!("\n(existence tends to 1 as n grows, but the approach is slow and not monotone)");
}
