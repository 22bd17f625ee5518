//! `kp` — solve, validate, oracle-check, benchmark, and render knock-pick
//! instances.
//!
//! Exit codes: 0 success, 1 input error, 2 internal invariant violation.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use knockpick::bench::{run_benchmark, BenchConfig, BenchError, SubgraphSpec};
use knockpick::executor::{validate_plan, Action, Plan, PlanVerdict};
use knockpick::gadgets::enumerate_faces;
use knockpick::grid::{BlockSet, GridCoord};
use knockpick::oracle::{oracle_min_knocks, DEFAULT_CELL_LIMIT};
use knockpick::solve;

#[derive(Parser)]
#[command(
    name = "kp",
    version,
    about = "Optimal knock-pick planning for tightly packed block grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum-knock plan for an instance and write it out.
    Solve {
        /// Instance file ("<rows> <cols>" header, then '#'/'.' rows).
        instance: PathBuf,
        /// Plan output path (default: the instance path with a .plan extension).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a plan against an instance, checking every action.
    Validate { instance: PathBuf, plan: PathBuf },
    /// Exhaustively search the true minimum knock count (small instances).
    Oracle {
        instance: PathBuf,
        /// Refuse instances with more occupied cells than this.
        #[arg(long, default_value_t = DEFAULT_CELL_LIMIT)]
        cell_limit: usize,
    },
    /// Print an instance grid, optionally replaying a plan frame by frame.
    Render {
        instance: PathBuf,
        /// Plan to replay; one frame per action is printed when given.
        plan: Option<PathBuf>,
        /// Force frame output (already the default when a plan is given).
        #[arg(long)]
        frames: bool,
    },
    /// Run the synthetic benchmark and write a CSV of the results.
    Bench {
        /// Full grids to sweep, e.g. --grids 3x3,5x5 (default: the standard
        /// sweep when no --grids/--subgraph is given).
        #[arg(long, value_delimiter = ',')]
        grids: Option<Vec<String>>,
        /// Random-subgraph series as ROWSxCOLS:CELLS, e.g. --subgraph 5x5:16.
        /// Repeatable.
        #[arg(long = "subgraph")]
        subgraphs: Vec<String>,
        /// Instances per series.
        #[arg(long, default_value_t = 20)]
        reps: usize,
        /// Seed for the instance generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// CSV output path.
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
    },
}

enum CliError {
    /// Stdout went away (e.g. piped into `head`); stop without noise.
    Quiet,
    /// Unreadable or malformed input: exit 1.
    Input(String),
    /// A violated solver invariant: exit 2.
    Invariant(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        if e.kind() == io::ErrorKind::BrokenPipe {
            CliError::Quiet
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) | Err(CliError::Quiet) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Solve {
            instance,
            out: plan_out,
        } => cmd_solve(&instance, plan_out, out),
        Command::Validate { instance, plan } => cmd_validate(&instance, &plan, out),
        Command::Oracle {
            instance,
            cell_limit,
        } => cmd_oracle(&instance, cell_limit, out),
        Command::Render {
            instance,
            plan,
            frames,
        } => cmd_render(&instance, plan.as_deref(), frames, out),
        Command::Bench {
            grids,
            subgraphs,
            reps,
            seed,
            out: csv_out,
        } => cmd_bench(grids, subgraphs, reps, seed, csv_out, out),
    }
}

fn read_instance(path: &Path) -> Result<BlockSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    BlockSet::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_plan(path: &Path) -> Result<Plan, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Plan::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn cmd_solve(
    instance: &Path,
    plan_out: Option<PathBuf>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let b = read_instance(instance)?;
    let plan = solve(&b).map_err(|e| CliError::Invariant(e.to_string()))?;
    let (cleaned, _) = b.clean();
    let faces = enumerate_faces(&cleaned).len();
    writeln!(
        out,
        "cells={} faces={} knocks={} actions={}",
        b.len(),
        faces,
        plan.knock_count(),
        plan.total_actions()
    )?;
    let path = plan_out.unwrap_or_else(|| instance.with_extension("plan"));
    fs::write(&path, plan.serialize())
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn cmd_validate(instance: &Path, plan_path: &Path, out: &mut impl Write) -> Result<(), CliError> {
    let b = read_instance(instance)?;
    let plan = read_plan(plan_path)?;
    let report = validate_plan(&b, &plan);
    match report.verdict {
        PlanVerdict::HullMismatch => Err(CliError::Input("plan/instance mismatch".into())),
        PlanVerdict::Violation(v) => {
            writeln!(out, "violation at {v}")?;
            Err(CliError::Input("plan is not feasible".into()))
        }
        PlanVerdict::Valid if !report.emptied => {
            writeln!(out, "incomplete: replay leaves blocks behind")?;
            Err(CliError::Input("plan does not empty the instance".into()))
        }
        PlanVerdict::Valid => {
            writeln!(out, "valid")?;
            Ok(())
        }
    }
}

fn cmd_oracle(instance: &Path, cell_limit: usize, out: &mut impl Write) -> Result<(), CliError> {
    let b = read_instance(instance)?;
    let knocks = oracle_min_knocks(&b, cell_limit).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "min_knocks={knocks}")?;
    Ok(())
}

fn format_grid(b: &BlockSet, mark: Option<(GridCoord, char)>) -> String {
    let hull = b.hull();
    let mut text = String::new();
    for i in 0..hull.rows() {
        for j in 0..hull.cols() {
            let c = GridCoord::new(i, j);
            text.push(match mark {
                Some((m, ch)) if m == c => ch,
                _ if b.contains(c) => '#',
                _ => '.',
            });
        }
        text.push('\n');
    }
    text
}

fn cmd_render(
    instance: &Path,
    plan_path: Option<&Path>,
    _frames: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let b = read_instance(instance)?;
    let Some(plan_path) = plan_path else {
        write!(out, "{}", format_grid(&b, None))?;
        return Ok(());
    };
    let plan = read_plan(plan_path)?;
    let report = validate_plan(&b, &plan);
    match report.verdict {
        PlanVerdict::HullMismatch => return Err(CliError::Input("plan/instance mismatch".into())),
        PlanVerdict::Violation(v) => {
            return Err(CliError::Input(format!("plan does not replay: {v}")))
        }
        PlanVerdict::Valid => {}
    }
    writeln!(out, "frame 0: start")?;
    write!(out, "{}", format_grid(&b, None))?;
    let mut cur = b;
    for (idx, &action) in plan.actions().iter().enumerate() {
        let (desc, mark) = match action {
            Action::Pick(v) => {
                if cur.contains(v) {
                    cur = cur.without(v);
                }
                (format!("pick {v}"), (v, 'P'))
            }
            Action::Knock(v, d) => {
                cur = cur.without(v);
                (format!("knock {v} {}", d.arrow()), (v, 'K'))
            }
        };
        writeln!(out)?;
        writeln!(out, "frame {}: {desc}", idx + 1)?;
        write!(out, "{}", format_grid(&cur, Some(mark)))?;
    }
    Ok(())
}

fn parse_dims(text: &str) -> Result<(i32, i32), CliError> {
    let err = || CliError::Input(format!("bad grid spec {text:?} (expected ROWSxCOLS)"));
    let (m, n) = text.split_once('x').ok_or_else(err)?;
    let m: i32 = m.trim().parse().map_err(|_| err())?;
    let n: i32 = n.trim().parse().map_err(|_| err())?;
    if m < 1 || n < 1 {
        return Err(err());
    }
    Ok((m, n))
}

fn parse_subgraph(text: &str) -> Result<SubgraphSpec, CliError> {
    let err = || {
        CliError::Input(format!(
            "bad subgraph spec {text:?} (expected ROWSxCOLS:CELLS)"
        ))
    };
    let (dims, cells) = text.split_once(':').ok_or_else(err)?;
    let (rows, cols) = parse_dims(dims)?;
    let cells: usize = cells.trim().parse().map_err(|_| err())?;
    Ok(SubgraphSpec { rows, cols, cells })
}

fn cmd_bench(
    grids: Option<Vec<String>>,
    subgraphs: Vec<String>,
    reps: usize,
    seed: u64,
    csv_out: PathBuf,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let mut cfg = if grids.is_none() && subgraphs.is_empty() {
        BenchConfig::default_sweep()
    } else {
        BenchConfig {
            full_grids: grids
                .unwrap_or_default()
                .iter()
                .map(|g| parse_dims(g))
                .collect::<Result<_, _>>()?,
            subgraphs: subgraphs
                .iter()
                .map(|s| parse_subgraph(s))
                .collect::<Result<_, _>>()?,
            ..BenchConfig::default_sweep()
        }
    };
    cfg.reps = reps;
    cfg.seed = seed;
    cfg.out_path = Some(csv_out.clone());
    let rows = run_benchmark(&cfg).map_err(|e| match e {
        BenchError::Solve(_) | BenchError::PlanInvalid { .. } => CliError::Invariant(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    // timings live in the CSV; stdout stays deterministic for fixed seeds
    for row in &rows {
        writeln!(
            out,
            "{} |V|={} knocks_mean={:.2}",
            row.grid_label(),
            row.cells,
            row.knocks_mean
        )?;
    }
    writeln!(out, "wrote {}", csv_out.display())?;
    Ok(())
}
