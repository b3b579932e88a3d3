//! `ternmap`: exact checks of ternary digit-substitution maps.
//!
//! Exit status: 0 on success, 1 for invalid input or configuration,
//! 2 when a checked property fails.

mod commands;
mod config;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{load_budget, CliError, CliResult, RunConfig, BUDGET_ENV};
use report::{Format, Report, Status};

const EXIT_INPUT: u8 = 1;
const EXIT_PROPERTY: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "ternmap", version, about = "Exact checks of ternary digit-substitution maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in map: f, f01, f02, f12, f1..f6
    #[arg(long, global = true)]
    map: Option<String>,

    /// Custom map given by its digit images of 0, 1, 2 (e.g. `021`)
    #[arg(long = "map-table", global = true, conflicts_with = "map")]
    map_table: Option<String>,

    /// Point as `0.<digits>` or `0.<digits>(<period>)`, or `1`
    #[arg(long, global = true)]
    x: Option<String>,

    /// Target value, same grammar as --x
    #[arg(long, global = true)]
    y: Option<String>,

    #[arg(long, global = true)]
    depth: Option<u32>,

    #[arg(long, global = true)]
    rank: Option<u32>,

    #[arg(long, global = true)]
    trials: Option<u64>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Count closed squares touching the graph closure (boxcount)
    #[arg(long, global = true)]
    closed: bool,

    /// TOML file overriding resource budgets
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Image of --x under the map, raw and canonical
    Eval,
    /// Functional equations on random representations (or at --x)
    Verify {
        /// Check a single identity (ff2..ff9, thm)
        #[arg(long)]
        id: Option<String>,
    },
    /// Graph points k/3^depth as CSV-ready rows
    Sample,
    /// One-sided limits and jump at --x, or at random terminating points
    Jump,
    /// Difference quotients under digit perturbations at depths 1..=depth
    Probe,
    /// Rank-m squares met by the graph, for m = 1..=rank
    Boxcount,
    /// Depth-limited preimage count of --y under a merge map
    Levelset {
        /// Also report the least-squares slope over depths 1..=depth
        #[arg(long)]
        regression: bool,
    },
    /// Level-set estimates for targets with 1s at linear, quadratic or exponential positions
    Sweep {
        #[arg(long)]
        rule: Option<String>,
    },
    /// Lebesgue integral: exact self-similar value or Riemann mean
    Integral {
        #[arg(long, default_value = "selfsimilar")]
        method: String,
    },
    /// Coefficients of f_m = a x + b + c f_ij
    Decompose,
    /// Exhaustive fixed-point scan up to --depth digits
    Fixedpoints,
    /// Whether --y is a value of f, with a preimage
    Range,
    /// Monotonicity on the sets branching after --prefix
    Mono {
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Colliding pairs G1..G4 after --prefix, or after random prefixes
    Inject {
        #[arg(long)]
        prefix: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Verify { .. } => "verify",
            Command::Sample => "sample",
            Command::Jump => "jump",
            Command::Probe => "probe",
            Command::Boxcount => "boxcount",
            Command::Levelset { .. } => "levelset",
            Command::Sweep { .. } => "sweep",
            Command::Integral { .. } => "integral",
            Command::Decompose => "decompose",
            Command::Fixedpoints => "fixedpoints",
            Command::Range => "range",
            Command::Mono { .. } => "mono",
            Command::Inject { .. } => "inject",
        }
    }
}

fn config(cli: &Cli) -> CliResult<RunConfig> {
    Ok(RunConfig {
        subcommand: cli.command.name(),
        map_name: cli.map.clone(),
        map_table: cli.map_table.clone(),
        x: cli.x.clone(),
        y: cli.y.clone(),
        depth: cli.depth,
        rank: cli.rank,
        trials: cli.trials,
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format,
        closed: cli.closed,
        budget: load_budget(cli.budget.as_deref())?,
    })
}

fn run(command: &Command, cfg: &RunConfig) -> CliResult<Report> {
    match command {
        Command::Eval => commands::eval_cmd(cfg),
        Command::Verify { id } => commands::verify_cmd(cfg, id.as_deref()),
        Command::Sample => commands::sample_cmd(cfg),
        Command::Jump => commands::jump_cmd(cfg),
        Command::Probe => commands::probe_cmd(cfg),
        Command::Boxcount => commands::boxcount_cmd(cfg),
        Command::Levelset { regression } => commands::levelset_cmd(cfg, *regression),
        Command::Sweep { rule } => commands::sweep_cmd(cfg, rule.as_deref()),
        Command::Integral { method } => commands::integral_cmd(cfg, method),
        Command::Decompose => commands::decompose_cmd(cfg),
        Command::Fixedpoints => commands::fixedpoints_cmd(cfg),
        Command::Range => commands::range_cmd(cfg),
        Command::Mono { prefix } => commands::mono_cmd(cfg, prefix.as_deref()),
        Command::Inject { prefix } => commands::inject_cmd(cfg, prefix.as_deref()),
    }
}

fn emit(report: &Report, cfg: &RunConfig) -> CliResult<()> {
    let format = cfg.format;
    let io_err = |path: &PathBuf| {
        let path = path.clone();
        move |source| CliError::Output { path, source }
    };
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err(path))?;
            let mut w = BufWriter::new(file);
            report.render(format, &mut w).map_err(io_err(path))?;
            w.flush().map_err(io_err(path))
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let stdout_path = PathBuf::from("<stdout>");
            report.render(format, &mut w).map_err(io_err(&stdout_path))?;
            w.flush().map_err(io_err(&stdout_path))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = config(&cli).and_then(|cfg| {
        let report = run(&cli.command, &cfg)?;
        emit(&report, &cfg)?;
        Ok(report.status)
    });
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(EXIT_PROPERTY),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
