//! `halfline-heat`: evaluates the half-line heat solution from an INI config
//! and writes CSV.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 1 for I/O errors.

mod commands;
mod config;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::output::{gnuplot_script, Table};

#[derive(Parser)]
#[command(name = "halfline-heat", version, about = "Half-line heat equation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solution values on the grid for each requested representation.
    Eval(Common),
    /// Pairwise differences between representations and the PDE residual.
    Compare(Common),
    /// One-sided limits towards x = 0 or t = 0.
    Trace(Common),
    /// Limits along three paths into the corner (0, 0).
    Corner(Common),
    /// Node-doubling and radius-doubling studies of the contour quadrature.
    Convergence(Common),
}

#[derive(Args)]
struct Common {
    /// INI configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; overrides `[experiment] output`. Standard output when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    /// Also write a gnuplot script next to the CSV (needs an output file).
    #[arg(long)]
    plot_script: bool,
}

enum Failure {
    Config(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        let (code, kind, msg) = match self {
            Failure::Config(m) => (2, "config error", m),
            Failure::Numerical(m) => (3, "numerical failure", m),
            Failure::Io(m) => (1, "i/o error", m),
        };
        eprintln!("halfline-heat: {kind}: {msg}");
        ExitCode::from(code)
    }
}

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure::Io(e.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (name, common, command): (&str, Common, fn(&RunConfig) -> halfline_heat::Result<Table>) = match cli.command {
        Command::Eval(c) => ("eval", c, commands::cmd_eval),
        Command::Compare(c) => ("compare", c, commands::cmd_compare),
        Command::Trace(c) => ("trace", c, commands::cmd_trace),
        Command::Corner(c) => ("corner", c, commands::cmd_corner),
        Command::Convergence(c) => ("convergence", c, commands::cmd_convergence),
    };
    let cfg = RunConfig::load(&common.config).map_err(|e| Failure::Config(e.0))?;
    if name == "trace" && cfg.traces.is_empty() {
        return Err(Failure::Config("[experiment] traces is required for trace".into()));
    }
    let out = common.out.clone().or_else(|| cfg.output.clone());
    if common.plot_script && out.is_none() {
        return Err(Failure::Config("--plot-script needs --out or [experiment] output".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs as usize)
        .build()
        .map_err(io_err)?;
    let table = pool
        .install(|| command(&cfg))
        .map_err(|e| Failure::Numerical(e.to_string()))?;
    match &out {
        Some(path) => {
            let f = File::create(path).map_err(|e| io_err(format!("{}: {e}", path.display())))?;
            table.write(BufWriter::new(f)).map_err(io_err)?;
            if common.plot_script {
                let script = gnuplot_script(&table, path, &commands::plot_spec(name));
                std::fs::write(path.with_extension("gp"), script).map_err(io_err)?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock).map_err(io_err)?;
            lock.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
