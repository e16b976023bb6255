mod args;
mod commands;
mod error;
mod hbar;
mod output;
mod sweep;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use output::{emit, render};

fn workers(cli: &Cli) -> usize {
    cli.workers
        .map(usize::from)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

pub(crate) struct Done {
    pub rows: usize,
    /// Non-zero only for a sweep with failed tasks.
    pub code: i32,
    pub note: Option<String>,
}

/// Runs one parsed command line and writes its output.
pub(crate) fn execute(cli: &Cli, argv: &[String]) -> Result<Done, CliError> {
    let (report, code) = match &cli.command {
        Command::Sweep { plan } => sweep::run(plan, workers(cli), cli.fail_fast)?,
        cmd => (commands::run(cmd, cli.a, cli.b)?, 0),
    };
    emit(&render(&report, cli.format, argv), cli.out.as_deref())?;
    Ok(Done {
        rows: report.rows.len(),
        code,
        note: report.note,
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Spectrum { .. } => "spectrum",
        Command::Count { .. } => "count",
        Command::Period { .. } => "period",
        Command::Dos { .. } => "dos",
        Command::Tunneling { .. } => "tunneling",
        Command::Lyapunov { .. } => "lyapunov",
        Command::Converge { .. } => "converge",
        Command::Sweep { .. } => "sweep",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // --help and --version exit 0
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let name = command_name(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers(&cli)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("dwell: cannot start worker pool: {e}");
            return ExitCode::from(3);
        }
    };
    let start = Instant::now();
    match pool.install(|| execute(&cli, &argv)) {
        Ok(done) => {
            let dest = cli
                .out
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "stdout".into());
            let note = done.note.map(|n| format!("; {n}")).unwrap_or_default();
            eprintln!(
                "dwell {name}: {} rows to {dest} in {:.2} s{note}",
                done.rows,
                start.elapsed().as_secs_f64()
            );
            ExitCode::from(done.code as u8)
        }
        Err(e) => {
            eprintln!("dwell {name}: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
