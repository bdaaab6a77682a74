use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mirror_feedback::cli;
use mirror_feedback::config::{parse_config, RunConfig};

#[derive(Parser)]
#[command(name = "mirror-feedback", version, about = "Delayed-feedback dynamics of a three-level emitter in front of a mirror")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweep points (default: all processors).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one trajectory and write t,re_c3,im_c3,pop.
    Simulate(#[command(flatten)] Common),
    /// Report trapping conditions and frequency parity.
    Check(#[command(flatten)] Common),
    /// Integrate one trajectory per swept value.
    Sweep(#[command(flatten)] Common),
    /// Compare the delay equation against the discretized-reservoir model.
    OracleCompare(#[command(flatten)] Common),
}

fn load(common: &Common) -> mirror_feedback::Result<RunConfig> {
    if let Some(jobs) = common.jobs {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let text = fs::read_to_string(&common.config)?;
    parse_config(&text)
}

fn run() -> mirror_feedback::Result<i32> {
    let args = Cli::parse();
    match &args.command {
        Command::Simulate(common) => {
            let cfg = load(common)?;
            let out = common.out.clone().unwrap_or_else(|| PathBuf::from("trajectory.csv"));
            cli::cmd_simulate(&cfg, &out)
        }
        Command::Check(common) => {
            let cfg = load(common)?;
            cli::cmd_check(&cfg)
        }
        Command::Sweep(common) => {
            let cfg = load(common)?;
            let out = common.out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
            cli::cmd_sweep(&cfg, &out)
        }
        Command::OracleCompare(common) => {
            let cfg = load(common)?;
            cli::cmd_oracle_compare(&cfg, common.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::EXIT_ERROR as u8)
        }
    }
}
