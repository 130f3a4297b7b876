use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pauliprobe::experiment::{
    learner_plan_report, run_experiment, tester_plan_report, ExperimentConfig, ExperimentKind,
    PlanReport, LEARNER_COLUMNS, TESTER_COLUMNS,
};
use pauliprobe::learner::PlanMode;
use pauliprobe::verify::{verify_suite, VerifyLevel};
use pauliprobe::Error;

const DEFAULT_OUT: &str = "pauliprobe-out";

fn csv_help() -> String {
    format!(
        "CSV columns (one row per trial):\n  test:  {}\n  learn: {}\n\n\
         Environment:\n  PAULIPROBE_THREADS  cap on the trial worker pool (default: all cores)\n\n\
         Exit codes: 0 ok, 1 verification failure or I/O error, 2 bad configuration, 3 infeasible plan",
        TESTER_COLUMNS.join(","),
        LEARNER_COLUMNS.join(",")
    )
}

#[derive(Parser)]
#[command(name = "pauliprobe", version, about = "Test and learn local Hamiltonians from simulated time evolution")]
#[command(after_help = csv_help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the locality tester on balanced planted close/far instances.
    Test(ExperimentArgs),
    /// Run the learner on random k-local instances.
    Learn(ExperimentArgs),
    /// Run the self-check suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print theory-mode plans and their cost formulas without running.
    Plan {
        #[arg(long, value_enum, default_value = "both")]
        kind: PlanKind,
        /// Print the plans as JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        args: ExperimentArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlanKind {
    Tester,
    Learner,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Theory,
    Practical,
}

/// Inline flags override values read from `--config`.
#[derive(Args, Default)]
struct ExperimentArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    eps1: Option<f64>,
    #[arg(long)]
    eps2: Option<f64>,
    /// Learner accuracy target.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Term density of random learner instances.
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    m1: Option<u64>,
    /// Tester sample count (practical mode).
    #[arg(long)]
    m: Option<u64>,
    /// Taylor remainder constant.
    #[arg(long)]
    c: Option<f64>,
    /// Bound constant C on the k-local coefficient sum.
    #[arg(long)]
    bh_const: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a whitespace-separated .dat file for gnuplot.
    #[arg(long)]
    gnuplot_stub: bool,
}

impl ExperimentArgs {
    fn into_config(self, kind: ExperimentKind) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_json_file(path)?,
            None => ExperimentConfig::default(),
        };
        cfg.kind = kind;
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { cfg.$f = v; })* };
        }
        set!(n, k, eps1, eps2, eps, delta, density, trials, seed, c, bh_const);
        macro_rules! set_opt {
            ($($f:ident),*) => { $(if self.$f.is_some() { cfg.$f = self.$f; })* };
        }
        set_opt!(alpha, gamma, beta, m1, m, out);
        if let Some(mode) = self.mode {
            cfg.mode = match mode {
                ModeArg::Theory => PlanMode::Theory,
                ModeArg::Practical => PlanMode::Practical,
            };
        }
        cfg.gnuplot_stub |= self.gnuplot_stub;
        Ok(cfg)
    }
}

fn run_kind(args: ExperimentArgs, kind: ExperimentKind) -> Result<(), Error> {
    let cfg = args.into_config(kind)?;
    let record = run_experiment(&cfg)?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let paths = record.write(&dir)?;
    print!("{}", record.summary_table());
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Test(args) => run_kind(args, ExperimentKind::Tester)?,
        Command::Learn(args) => run_kind(args, ExperimentKind::Learner)?,
        Command::Verify { level, json } => {
            let level = match level {
                LevelArg::Quick => VerifyLevel::Quick,
                LevelArg::Full => VerifyLevel::Full,
            };
            let report = verify_suite(level)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Plan { kind, json, args } => {
            let cfg = args.into_config(ExperimentKind::Tester)?;
            let report = PlanReport {
                tester: matches!(kind, PlanKind::Tester | PlanKind::Both)
                    .then(|| tester_plan_report(&cfg))
                    .transpose()?,
                learner: matches!(kind, PlanKind::Learner | PlanKind::Both)
                    .then(|| learner_plan_report(&cfg))
                    .transpose()?,
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
