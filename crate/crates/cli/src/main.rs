//! `bic4`: generate, inspect and verify bipartite graphs for 4-cycle questions.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 hypothesis violation,
//! 3 counterexample found.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bipartite_c4::{
    build_reduction, check_thm10_hypothesis, check_thm9_hypothesis, find_directed_c4,
    find_rainbow_c4_exhaustive, find_rainbow_c4_guided, gen_dstar, gen_proper_coloring_complete,
    gen_random_colored, gen_random_oriented, is_dstar, parse_graph, to_json, verify_thm10_random,
    verify_thm9_exhaustive, verify_thm9_random, AnyGraph, ArcProfile, ColoredBipartiteGraph, ColoredParams,
    GuidedOutcome, HypothesisCheck, OrientedBipartiteGraph, ReductionError, ReductionOutcome, Thm10Params,
    ThresholdMode, VerificationReport,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "bic4", version, about = "Directed and rainbow 4-cycles in bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph to stdout.
    #[command(subcommand)]
    Gen(Gen),
    /// Search a graph file for a 4-cycle certificate.
    #[command(subcommand)]
    Detect(Detect),
    /// Build the auxiliary orientation of a colored graph for edge (x, y).
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Run a verification harness and print its report.
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Check(Check),
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// The extremal orientation without a directed 4-cycle.
    Dstar {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// K_{n,n} with the proper coloring C(a_i, b_j) = (i + j mod n) + 1.
    K33Proper {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    RandomOriented {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Probabilities of no arc, A->B and B->A, comma separated.
        #[arg(long, value_parser = parse_profile, default_value = "uniform")]
        profile: ArcProfile,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Repair and resample until 3·d⁺ ≥ opposite side size everywhere.
        #[arg(long)]
        enforce: bool,
    },
    RandomColored {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long)]
        palette: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample until 5·d^c ≥ 3·(opposite side size) + 8 everywhere.
        #[arg(long)]
        enforce: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Detect {
    DirectedC4 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    RainbowC4 {
        #[arg(long = "in")]
        input: PathBuf,
        /// Follow the reduction to an auxiliary orientation (checks the hypothesis first).
        #[arg(long, conflicts_with = "exhaustive")]
        guided: bool,
        /// Scan all pairs of side-A vertices (default).
        #[arg(long)]
        exhaustive: bool,
        /// Use a strict inequality in the color-degree threshold.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Args)]
struct Sides {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Oriented graphs: every instance meeting the out-degree bound has a directed 4-cycle or is extremal.
    Thm9 {
        #[command(flatten)]
        sides: Sides,
        /// Enumerate every orientation (default when --trials is absent).
        #[arg(long, conflicts_with = "trials")]
        exhaustive: bool,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_profile, default_value = "uniform")]
        profile: ArcProfile,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Colored graphs: every instance meeting the color-degree bound has a rainbow 4-cycle.
    Thm10 {
        #[command(flatten)]
        sides: Sides,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        palette: u64,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum Check {
    /// Check the degree hypothesis matching the file's graph kind.
    Hypothesis {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        strict: bool,
    },
}

fn parse_profile(s: &str) -> Result<ArcProfile, String> {
    if s == "uniform" {
        return Ok(ArcProfile::UNIFORM);
    }
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [none, a_to_b, b_to_a] = parts[..] else {
        return Err("expected three comma-separated probabilities".into());
    };
    ArcProfile::new(none, a_to_b, b_to_a).map_err(|e| e.to_string())
}

enum Status {
    Ok,
    HypothesisViolation,
    Counterexample,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Ok => 0,
            Status::HypothesisViolation => 2,
            Status::Counterexample => 3,
        })
    }
}

type CliResult = Result<Status, String>;

fn read_graph(path: &Path) -> Result<AnyGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_oriented(path: &Path) -> Result<OrientedBipartiteGraph, String> {
    read_graph(path)?.into_oriented().map_err(|e| format!("{}: {e}", path.display()))
}

fn read_colored(path: &Path) -> Result<ColoredBipartiteGraph, String> {
    read_graph(path)?.into_colored().map_err(|e| format!("{}: {e}", path.display()))
}

fn jobs(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn mode(strict: bool) -> ThresholdMode {
    if strict {
        ThresholdMode::Strict
    } else {
        ThresholdMode::AtLeast
    }
}

fn gen(cmd: Gen) -> CliResult {
    let text = match cmd {
        Gen::Dstar { m, n } => to_json(&gen_dstar(m, n).map_err(|e| e.to_string())?),
        Gen::K33Proper { n } => to_json(&gen_proper_coloring_complete(n)),
        Gen::RandomOriented { m, n, profile, seed, enforce } => {
            to_json(&gen_random_oriented(m, n, profile, seed, enforce).map_err(|e| e.to_string())?)
        }
        Gen::RandomColored { m, n, edge_prob, palette, seed, enforce } => {
            let params = ColoredParams::new(m, n, edge_prob, palette, enforce);
            to_json(&gen_random_colored(params, seed).map_err(|e| e.to_string())?)
        }
    };
    println!("{text}");
    Ok(Status::Ok)
}

fn detect(cmd: Detect) -> CliResult {
    match cmd {
        Detect::DirectedC4 { input } => {
            let d = read_oriented(&input)?;
            if let Some(cert) = find_directed_c4(&d) {
                println!("{}", json!({ "found": true, "certificate": cert }));
                eprintln!("directed 4-cycle a{} -> b{} -> a{} -> b{}", cert.a1, cert.b1, cert.a2, cert.b2);
                return Ok(Status::Ok);
            }
            let hypothesis = check_thm9_hypothesis(&d);
            let blocks = is_dstar(&d);
            println!("{}", json!({ "found": false, "hypothesis": hypothesis, "extremal": blocks }));
            if blocks.is_some() {
                eprintln!("no directed 4-cycle; the graph is the extremal orientation");
                Ok(Status::Ok)
            } else if hypothesis.passed() {
                eprintln!("no directed 4-cycle although the out-degree hypothesis holds: counterexample");
                Ok(Status::Counterexample)
            } else {
                eprintln!("no directed 4-cycle");
                Ok(Status::Ok)
            }
        }
        Detect::RainbowC4 { input, guided, exhaustive: _, strict } => {
            let g = read_colored(&input)?;
            if guided {
                let outcome = find_rainbow_c4_guided(&g, mode(strict)).map_err(|e| e.to_string())?;
                println!("{}", serde_json::to_string(&outcome).expect("outcomes serialize"));
                return Ok(match outcome {
                    GuidedOutcome::Found { branch, .. } => {
                        eprintln!("rainbow 4-cycle found ({branch:?})");
                        Status::Ok
                    }
                    GuidedOutcome::HypothesisViolation { vertex } => {
                        eprintln!("hypothesis violated: color degree of {vertex} is below the threshold");
                        Status::HypothesisViolation
                    }
                    GuidedOutcome::Counterexample { .. } => {
                        eprintln!("no rainbow 4-cycle although the hypothesis holds: counterexample");
                        Status::Counterexample
                    }
                });
            }
            if let Some(cert) = find_rainbow_c4_exhaustive(&g) {
                println!("{}", json!({ "found": true, "certificate": cert }));
                eprintln!("rainbow 4-cycle with colors {:?}", cert.colors);
                return Ok(Status::Ok);
            }
            let hypothesis = check_thm10_hypothesis(&g, mode(strict));
            println!("{}", json!({ "found": false, "hypothesis": hypothesis }));
            if hypothesis.passed() {
                eprintln!("no rainbow 4-cycle although the hypothesis holds: counterexample");
                Ok(Status::Counterexample)
            } else {
                eprintln!("no rainbow 4-cycle");
                Ok(Status::Ok)
            }
        }
    }
}

fn reduce(input: &Path, x: usize, y: usize) -> CliResult {
    let g = read_colored(input)?;
    match build_reduction(&g, x, y) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string(&outcome).expect("contexts serialize"));
            match &outcome {
                ReductionOutcome::Context(ctx) => eprintln!(
                    "auxiliary orientation on {}x{} with {} arcs, {} edges skipped",
                    ctx.a1.len(),
                    ctx.b1.len(),
                    ctx.arcs.len(),
                    ctx.skipped.len()
                ),
                ReductionOutcome::EarlyRainbow { certificate } => {
                    eprintln!("rainbow 4-cycle found while building: colors {:?}", certificate.colors)
                }
            }
            Ok(Status::Ok)
        }
        Err(ReductionError::HypothesisTooWeak { vertex, have, need }) => {
            println!("{}", json!({ "hypothesis": HypothesisCheck::Fail(vertex), "have": have, "need": need }));
            eprintln!("color degree of {vertex} is {have}, the reduction needs {need}");
            Ok(Status::HypothesisViolation)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn report(r: &VerificationReport) -> Status {
    println!("{}", serde_json::to_string(r).expect("reports serialize"));
    eprintln!(
        "examined {}, hypothesis satisfied {}, with cycle {}, extremal {}, generation failures {}, diagnostics {}, counterexamples {}, {} ms",
        r.instances_examined,
        r.hypothesis_satisfied,
        r.with_cycle,
        r.extremal,
        r.generation_failures,
        r.proof_branch_diagnostics,
        r.counterexamples.len(),
        r.elapsed_ms
    );
    if r.counterexamples.is_empty() {
        Status::Ok
    } else {
        Status::Counterexample
    }
}

fn verify(cmd: Verify) -> CliResult {
    let r = match cmd {
        Verify::Thm9 { sides: Sides { m, n }, exhaustive: _, trials: None, jobs: j, .. } => {
            verify_thm9_exhaustive(m, n, jobs(j))
        }
        Verify::Thm9 { sides: Sides { m, n }, trials: Some(trials), seed, profile, jobs: j, .. } => {
            verify_thm9_random(m, n, trials, seed, profile, jobs(j))
        }
        Verify::Thm10 { sides: Sides { m, n }, trials, palette, edge_prob, seed, jobs: j } => {
            verify_thm10_random(Thm10Params { m, n, trials, palette, edge_prob, seed }, jobs(j))
        }
    };
    r.map(|r| report(&r)).map_err(|e| e.to_string())
}

fn check(cmd: Check) -> CliResult {
    let Check::Hypothesis { input, strict } = cmd;
    let result = match read_graph(&input)? {
        AnyGraph::Oriented(d) => check_thm9_hypothesis(&d),
        AnyGraph::Colored(g) => check_thm10_hypothesis(&g, mode(strict)),
    };
    println!("{}", serde_json::to_string(&result).expect("checks serialize"));
    match result {
        HypothesisCheck::Pass => {
            eprintln!("hypothesis holds");
            Ok(Status::Ok)
        }
        HypothesisCheck::Fail(v) => {
            eprintln!("hypothesis fails at {v}");
            Ok(Status::HypothesisViolation)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Gen(cmd) => gen(cmd),
        Command::Detect(cmd) => detect(cmd),
        Command::Reduce { input, x, y } => reduce(&input, x, y),
        Command::Verify(cmd) => verify(cmd),
        Command::Check(cmd) => check(cmd),
    };
    match result {
        Ok(status) => status.into(),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
