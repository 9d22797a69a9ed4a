use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;

use patrol_core::greedy::GreedyConfig;
use patrol_core::instances::{generate, run_benchmark, GenSpec};
use patrol_core::minmax::{bicriterion_min_robots, latency_walks, weighted_cost, WeightedInstance};
use patrol_core::model::io::{read_instance, read_solution, write_instance, write_solution};
use patrol_core::oracle::{exact_decision, exact_min_robots};
use patrol_core::{verify, Algorithm, Error, Instance, Rational, Solution};

#[derive(Parser)]
#[command(name = "patrol", version, about = "Plan periodic patrols under per-vertex latency constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute walks for an instance and write them as JSON.
    Solve {
        #[arg(long, default_value = "ogreedy")]
        algo: Algorithm,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        greedy: GreedyArgs,
    },
    /// Check a solution against an instance; exit 1 if infeasible.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Generate a random instance in the unit square.
    Gen {
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        k_min: u32,
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run solvers on every instance in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "approx,greedy,ogreedy")]
        algos: Vec<Algorithm>,
        /// Per-cell time limit in seconds.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        /// Write per-cell results as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        greedy: GreedyArgs,
    },
    /// Exact search on a tiny instance.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        /// Decide this robot count; without it, find the minimum.
        #[arg(long)]
        robots: Option<usize>,
        #[arg(long, default_value_t = 32)]
        horizon: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimise the largest weighted latency with a fixed robot count,
    /// weights r_min / r(v).
    Minmax {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        robots: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fewest robots meeting every constraint relaxed by a factor alpha.
    Minrobots {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "1")]
        alpha: Rational,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct GreedyArgs {
    /// Weight factor for vertices already on the walk.
    #[arg(long, default_value = "1/10")]
    m: Rational,
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GreedyArgs {
    fn config(&self) -> GreedyConfig {
        GreedyConfig { m: self.m, restarts: self.restarts, seed: self.seed }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err.chain().any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::Config(_))));
            ExitCode::from(if usage { 2 } else { 3 })
        }
    }
}

fn load(path: &Path) -> Result<Instance> {
    let inst = read_instance(path).with_context(|| format!("reading {}", path.display()))?;
    let violations = inst.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        anyhow::bail!("{}: invalid instance: {}", path.display(), list.join("; "));
    }
    Ok(inst)
}

fn save(path: &Path, sol: &Solution) -> Result<()> {
    write_solution(path, sol).with_context(|| format!("writing {}", path.display()))
}

fn verdict(feasible: bool) -> ExitCode {
    if feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Solve { algo, input, output, greedy } => {
            let inst = load(&input)?;
            let sol = algo.solve(&inst, &greedy.config())?;
            let report = verify(&sol, &inst)?;
            assert!(report.is_feasible(), "{algo} produced an infeasible solution:\n{report}");
            save(&output, &sol)?;
            println!("{report}");
            println!("robots: {}  total length: {}", sol.robots(), sol.total_length(&inst));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, solution } => {
            let inst = load(&input)?;
            let sol = read_solution(&solution).with_context(|| format!("reading {}", solution.display()))?;
            let report = verify(&sol, &inst)?;
            println!("{report}");
            Ok(verdict(report.is_feasible()))
        }
        Command::Gen { n, seed, k_min, k_max, output } => {
            let inst = generate(&GenSpec { n, k_range: (k_min, k_max), seed })?;
            write_instance(&output, &inst).with_context(|| format!("writing {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { dir, algos, budget, csv, greedy } => {
            if !budget.is_finite() || budget <= 0.0 {
                return Err(Error::Config(format!("budget {budget} must be positive")).into());
            }
            let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                .with_context(|| format!("listing {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            let insts = paths.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
            let table = run_benchmark(&insts, &algos, Duration::from_secs_f64(budget), &greedy.config());
            print!("{table}");
            if let Some(path) = csv {
                let file = fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
                table.write_csv(file)?;
            }
            let all_ok = table.rows.iter().all(|r| r.feasible != Some(false));
            Ok(verdict(all_ok))
        }
        Command::Oracle { input, robots, horizon, output } => {
            let inst = load(&input)?;
            let k = match robots {
                Some(k) => k,
                None => {
                    let k = exact_min_robots(&inst, horizon)?;
                    println!("minimum robots: {k}");
                    k
                }
            };
            let decision = exact_decision(&inst, k, horizon)?;
            match decision.solution {
                Some(sol) => {
                    println!("feasible with {k} robots ({} states)", decision.states);
                    println!("{}", verify(&sol, &inst)?);
                    if let Some(path) = output {
                        save(&path, &sol)?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("{k} robots: infeasible at horizon {horizon} ({} states)", decision.states);
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Minmax { input, robots, output } => {
            let inst = load(&input)?;
            let winst = WeightedInstance::from_latencies(&inst);
            let sol = latency_walks(&winst, robots)?;
            let cost = weighted_cost(&sol, &winst)?;
            println!(
                "robots: {}  weighted cost: {cost} (~{:.6})  r_min: {}",
                sol.robots(),
                cost.to_f64().unwrap_or(f64::NAN),
                inst.r_min()
            );
            if let Some(path) = output {
                save(&path, &sol)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minrobots { input, alpha, output } => {
            let inst = load(&input)?;
            let res = bicriterion_min_robots(&inst, alpha)?;
            println!(
                "robots: {}  achieved relaxation: {} (~{:.6})",
                res.robots,
                res.achieved,
                res.achieved.to_f64().unwrap_or(f64::NAN)
            );
            if let Some(path) = output {
                save(&path, &res.solution)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
