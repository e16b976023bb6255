//! Batch execution of independent tasks from a JSON plan.
//!
//! ```json
//! {"tasks": [{"key": "sinc-1/10", "args": ["spectrum", "--method", "sinc",
//!             "--hbar", "1/10", "--out", "runs/sinc-10.csv"]}]}
//! ```
//!
//! Tasks run in key order on the worker pool. Each must name its own
//! `--out`; a failing task is reported and does not stop the others unless
//! `--fail-fast` is set.

use std::collections::BTreeSet;
use std::path::Path;

use clap::Parser;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use crate::args::{Cli, Command};
use crate::error::CliError;
use crate::output::Report;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plan {
    pub tasks: Vec<Task>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub key: Option<String>,
    pub args: Vec<String>,
}

#[derive(Debug)]
struct Outcome {
    key: String,
    result: Result<usize, CliError>,
    skipped: bool,
}

pub fn load_plan(path: &Path) -> Result<Vec<(String, Task)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read plan {}: {e}", path.display())))?;
    let plan: Plan = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed plan {}: {e}", path.display())))?;
    let mut seen = BTreeSet::new();
    let mut tasks = Vec::with_capacity(plan.tasks.len());
    for (i, t) in plan.tasks.into_iter().enumerate() {
        let key = t.key.clone().unwrap_or_else(|| format!("task-{i:04}"));
        if !seen.insert(key.clone()) {
            return Err(CliError::Usage(format!("duplicate task key '{key}'")));
        }
        tasks.push((key, t));
    }
    tasks.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(tasks)
}

fn run_task(task: &Task) -> Result<usize, CliError> {
    let argv = std::iter::once("dwell".to_string()).chain(task.args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let msg = e.to_string();
        CliError::Usage(msg.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string())
    })?;
    if matches!(cli.command, Command::Sweep { .. }) {
        return Err(CliError::Usage("sweeps cannot be nested".into()));
    }
    if cli.out.is_none() {
        return Err(CliError::Usage("sweep tasks must set --out".into()));
    }
    crate::execute(&cli, &task.args).map(|d| d.rows)
}

/// The summary report and the exit code of the worst failed task (0 when
/// all succeeded).
pub fn run(plan_path: &Path, workers: usize, fail_fast: bool) -> Result<(Report, i32), CliError> {
    let tasks = load_plan(plan_path)?;
    let mut outcomes: Vec<Outcome> = Vec::with_capacity(tasks.len());
    // with --fail-fast tasks go in batches of `workers`, so which tasks
    // ran depends only on the plan and the worker count
    let chunk = if fail_fast { workers.max(1) } else { tasks.len().max(1) };
    let mut failed = false;
    for batch in tasks.chunks(chunk) {
        if failed {
            outcomes.extend(batch.iter().map(|(key, _)| Outcome {
                key: key.clone(),
                result: Ok(0),
                skipped: true,
            }));
            continue;
        }
        let done: Vec<Outcome> = batch
            .par_iter()
            .map(|(key, task)| Outcome {
                key: key.clone(),
                result: run_task(task),
                skipped: false,
            })
            .collect();
        failed = done.iter().any(|o| o.result.is_err());
        outcomes.extend(done);
    }

    let mut r = Report::new(&["key", "status", "exit_code", "rows", "message"]);
    let mut items = Vec::new();
    let mut worst = 0;
    let mut n_failed = 0;
    for o in &outcomes {
        let (status, code, rows, message) = match (&o.result, o.skipped) {
            (_, true) => ("skipped", 0, 0, String::new()),
            (Ok(rows), false) => ("ok", 0, *rows, String::new()),
            (Err(e), false) => {
                eprintln!("dwell sweep: task {} failed: {e}", o.key);
                n_failed += 1;
                worst = worst.max(e.exit_code());
                ("failed", e.exit_code(), 0, e.to_string())
            }
        };
        // keep the CSV cell on one line and free of separators
        let cell = message.replace(['\n', '\r'], " ").replace(',', ";");
        r.rows.push(vec![o.key.clone(), status.into(), code.to_string(), rows.to_string(), cell]);
        items.push(json!({"key": o.key, "status": status, "exit_code": code, "rows": rows, "message": message}));
    }
    r.json = json!({"tasks": items});
    r.note = Some(format!("{} task(s), {n_failed} failed", outcomes.len()));
    Ok((r, worst))
}
