//! Command-line front end; all real work lives in the library.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use netgoods::analysis::{analyze, AnalyzeOptions};
use netgoods::digraph::{parse_edge_list, parse_json, to_edge_list, Digraph};
use netgoods::dynamics::{probe_stability, EmpiricalOutcome, StabilityConfig};
use netgoods::elimination::eliminate;
use netgoods::game::{contributors, specialized_equilibria, GameParams};
use netgoods::kernels::enumerate_kernels;
use netgoods::montecarlo::{run_existence_experiment, ExperimentConfig};
use netgoods::reciprocity::persistence_matrix;

const EXIT_PARTIAL: u8 = 2;

#[derive(Parser)]
#[command(
    name = "netgoods",
    version,
    about = "Digraph kernels and networked public-goods equilibria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-shot report: structure, kernels, equilibria, elimination, stability.
    Analyze(AnalyzeArgs),
    /// Enumerate kernels of a graph.
    Kernels(KernelsArgs),
    /// Run iterative node elimination and print the trace and residual.
    Eliminate(EliminateArgs),
    /// Probe stability of every specialized equilibrium.
    Stability(StabilityArgs),
    /// Equilibrium persistence between a graph and a more reciprocal one.
    Reciprocity(ReciprocityArgs),
    /// Monte-Carlo kernel-existence experiment on G(n,p).
    RandomExperiment(RandomArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file.
    file: PathBuf,
    /// Input format.
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
}

impl GraphInput {
    fn load(&self) -> anyhow::Result<Digraph> {
        let text = fs::read_to_string(&self.file)
            .with_context(|| format!("reading {}", self.file.display()))?;
        let g = match self.format {
            Format::Edgelist => parse_edge_list(&text),
            Format::Json => parse_json(&text),
        };
        g.with_context(|| format!("parsing {}", self.file.display()))
    }
}

#[derive(Args)]
struct JsonOut {
    /// Emit machine-readable JSON instead of text; write to PATH, or stdout
    /// when PATH is omitted or `-`.
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
}

impl JsonOut {
    fn wanted(&self) -> bool {
        self.json.is_some()
    }

    fn emit<T: serde::Serialize>(&self, value: &T) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(value)?;
        match self.json.as_deref() {
            Some(p) if p != std::path::Path::new("-") => {
                fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?
            }
            _ => println!("{text}"),
        }
        Ok(())
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    json: JsonOut,
    /// Kernel-search expansion budget.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Simple-cycle enumeration cap.
    #[arg(long, default_value_t = 100_000)]
    cycle_limit: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also print the graph in DOT format.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct KernelsArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    json: JsonOut,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

#[derive(Args)]
struct EliminateArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    json: JsonOut,
    /// Also print the residual graph in DOT format.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    json: JsonOut,
    /// Perturbation radius as a fraction of e*.
    #[arg(long, default_value_t = 0.1)]
    rho: f64,
    /// Random perturbations per equilibrium.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Iteration cap; 0 means 50 * n.
    #[arg(long, default_value_t = 0)]
    max_iters: usize,
    /// Convergence tolerance as a fraction of e*.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Print witness trajectories in the text output.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ReciprocityArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Second, more reciprocal graph; defaults to the full symmetrization.
    target: Option<PathBuf>,
    /// Compare against the full symmetrization of the first graph.
    #[arg(long, conflicts_with = "target")]
    full_symmetrization: bool,
    #[command(flatten)]
    json: JsonOut,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

#[derive(Args)]
struct RandomArgs {
    /// Comma-separated population sizes, e.g. 4,8,12.
    #[arg(long, short, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Edge probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Kernel-search expansion budget per sampled graph.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Kernels(args) => cmd_kernels(args),
        Command::Eliminate(args) => cmd_eliminate(args),
        Command::Stability(args) => cmd_stability(args),
        Command::Reciprocity(args) => cmd_reciprocity(args),
        Command::RandomExperiment(args) => cmd_random(args),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let g = args.graph.load()?;
    let params = GameParams::default_unit();
    let mut opts = AnalyzeOptions::defaults(g.n(), args.seed);
    opts.budget = args.budget;
    opts.cycle_limit = args.cycle_limit;
    let report = analyze(&g, &params, &opts)?;

    if args.json.wanted() {
        args.json.emit(&report)?;
    } else {
        println!("nodes: {}", report.n);
        println!("arcs:  {}", report.arcs);
        println!(
            "cycles: acyclic={} odd={} even={}",
            report.cycles.is_acyclic,
            report.cycles.has_odd_cycle,
            match report.cycles.has_even_cycle {
                Some(b) => b.to_string(),
                None => "undecided".into(),
            }
        );
        let qualifier = if report.kernels_exhaustive {
            ""
        } else {
            " (partial)"
        };
        println!("kernels{qualifier}: {}", report.kernel_count);
        for k in &report.kernels {
            println!("  {k:?}");
        }
        if report.equilibria.is_empty() {
            println!("no specialized equilibrium");
        }
        for entry in &report.equilibria {
            println!(
                "equilibrium {:?}: analytic={:?} empirical={} order={:?}",
                entry.contributors,
                entry.stability.analytic,
                if entry.stability.empirical.all_converged() {
                    "converged"
                } else {
                    "diverged"
                },
                entry.stability.kernel_order,
            );
        }
        println!(
            "elimination: {} rounds, residual {} nodes / {} arcs",
            report.elimination.rounds.len(),
            report.elimination.residual_nodes.len(),
            report.elimination.residual_arcs
        );
        if args.dot {
            print!("{}", g.to_dot("g"));
        }
    }
    Ok(exit_for(report.budget_exhausted))
}

fn cmd_kernels(args: KernelsArgs) -> anyhow::Result<ExitCode> {
    let g = args.graph.load()?;
    let report = enumerate_kernels(&g, args.budget);
    if args.json.wanted() {
        args.json.emit(&report)?;
    } else {
        let qualifier = if report.exhaustive { "" } else { " (partial)" };
        println!("kernels{qualifier}: {}", report.count);
        for k in &report.kernels {
            println!("  {k}");
        }
    }
    Ok(exit_for(!report.exhaustive))
}

fn cmd_eliminate(args: EliminateArgs) -> anyhow::Result<ExitCode> {
    let g = args.graph.load()?;
    let trace = eliminate(&g);
    if args.json.wanted() {
        args.json.emit(&trace)?;
    } else {
        for (t, round) in trace.rounds.iter().enumerate() {
            println!(
                "round {}: contributors={} free-riders={} irrelevant={}",
                t + 1,
                round.contributors,
                round.free_riders,
                round.irrelevant
            );
        }
        if trace.rounds.is_empty() {
            println!("graph is already a fixed point");
        }
        println!(
            "residual nodes (original labels): {:?}",
            trace.residual_nodes
        );
        print!("{}", to_edge_list(&trace.residual));
        if args.dot {
            print!("{}", trace.residual.to_dot("residual"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stability(args: StabilityArgs) -> anyhow::Result<ExitCode> {
    let g = args.graph.load()?;
    let params = GameParams::default_unit();
    let cfg = StabilityConfig {
        rho: args.rho,
        samples: args.samples,
        max_iters: if args.max_iters == 0 {
            50 * g.n().max(1)
        } else {
            args.max_iters
        },
        tol: args.tol,
        seed: args.seed,
    };
    let equilibria = specialized_equilibria(&g, &params, args.budget)?;

    let mut verdicts = Vec::new();
    for e in &equilibria.profiles {
        let verdict = probe_stability(&g, &params, e, &cfg)?;
        verdicts.push((contributors(&params, e).members(), verdict));
    }

    if args.json.wanted() {
        let doc: Vec<serde_json::Value> = verdicts
            .iter()
            .map(|(k, v)| {
                serde_json::json!({
                    "contributors": k,
                    "verdict": v,
                })
            })
            .collect();
        args.json.emit(&serde_json::json!({
            "exhaustive": equilibria.exhaustive,
            "equilibria": doc,
        }))?;
    } else {
        if verdicts.is_empty() {
            println!("no specialized equilibrium to probe");
        }
        for (k, v) in &verdicts {
            println!(
                "contributors {:?}: analytic={:?} kernel_order={:?} residual={} empirical={}",
                k,
                v.analytic,
                v.kernel_order,
                v.residual_size,
                if v.empirical.all_converged() {
                    "all converged".into()
                } else {
                    describe_witness(v)
                },
            );
            if args.trace {
                if let EmpiricalOutcome::Diverged(w) = &v.empirical {
                    for (i, state) in w.trajectory.iter().enumerate() {
                        println!("  step {i}: {state:?}");
                    }
                }
            }
        }
    }
    Ok(exit_for(!equilibria.exhaustive))
}

fn describe_witness(v: &netgoods::dynamics::StabilityVerdict) -> String {
    match &v.empirical {
        EmpiricalOutcome::Diverged(w) => {
            format!(
                "diverged under {:?} after {} iterations",
                w.kind, w.iterations
            )
        }
        EmpiricalOutcome::AllConverged { .. } => "all converged".into(),
    }
}

fn cmd_reciprocity(args: ReciprocityArgs) -> anyhow::Result<ExitCode> {
    let g = args.graph.load()?;
    let target = match (&args.target, args.full_symmetrization) {
        (Some(path), _) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            match args.graph.format {
                Format::Edgelist => parse_edge_list(&text)?,
                Format::Json => parse_json(&text)?,
            }
        }
        (None, true) => g.symmetrize(),
        (None, false) => bail!("pass a second graph file or --full-symmetrization"),
    };
    let params = GameParams::default_unit();
    let matrix = persistence_matrix(&g, &target, &params, args.budget)?;
    if args.json.wanted() {
        args.json.emit(&matrix)?;
    } else {
        println!(
            "equilibrium persistence ({} -> {}):",
            matrix.graphs[0], matrix.graphs[1]
        );
        if matrix.rows.is_empty() {
            println!("  base game has no specialized equilibrium");
        }
        for row in &matrix.rows {
            println!(
                "  contributors {:?}: base={} target={}",
                row.contributors, row.preserved[0], row.preserved[1]
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_random(args: RandomArgs) -> anyhow::Result<ExitCode> {
    let cfg = ExperimentConfig {
        n_values: args.n,
        p: args.p,
        trials: args.trials,
        seed: args.seed,
        search_budget: args.budget,
    };
    let result = run_existence_experiment(&cfg)?;
    let csv = result.to_csv();
    match &args.csv {
        Some(path) => {
            let mut f =
                fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
            f.write_all(csv.as_bytes())?;
        }
        None => print!("{csv}"),
    }
    let undecided: usize = result.rows.iter().map(|r| r.undecided).sum();
    Ok(exit_for(undecided > 0))
}

fn exit_for(partial: bool) -> ExitCode {
    if partial {
        ExitCode::from(EXIT_PARTIAL)
    } else {
        ExitCode::SUCCESS
    }
}
