use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use hecke_core::catalog::{self, Catalog, RunReport, Task, DEFAULT_CATALOG};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact affine Hecke algebra checks over a catalog of cases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run tasks and write one TSV per (case, task) plus summary.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Restrict to these tasks; repeatable. All configured tasks run when absent.
        #[arg(long = "task")]
        tasks: Vec<String>,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
    },
    /// Load and validate a catalog without running tasks.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the bundled default catalog.
    DefaultCatalog,
}

const CONFIG_ERROR: u8 = 2;

fn load(path: &Path) -> std::result::Result<Catalog, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Catalog::from_json(&text).map_err(|e| e.to_string())
}

fn write_reports(out: &Path, run: &RunReport) -> Result<()> {
    for r in &run.reports {
        let path = out.join(r.file_name());
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        fs::write(&path, r.to_tsv()).with_context(|| format!("writing {}", path.display()))?;
    }
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    fs::write(out.join("summary.json"), run.summary_json()).context("writing summary.json")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::DefaultCatalog => {
            print!("{DEFAULT_CATALOG}");
            ExitCode::SUCCESS
        }
        Command::Validate { config } => match load(&config) {
            Ok(cat) => {
                println!("ok: {} cases", cat.cases.len());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(CONFIG_ERROR)
            }
        },
        Command::Run { config, tasks, out } => {
            let cat = match load(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(CONFIG_ERROR);
                }
            };
            let filter = match tasks.iter().map(|t| t.parse()).collect::<hecke_core::Result<Vec<Task>>>() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(CONFIG_ERROR);
                }
            };
            let run = catalog::run(&cat, &filter);
            if let Err(e) = write_reports(&out, &run) {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            for r in &run.reports {
                let note = if r.note.is_empty() { String::new() } else { format!("  ({})", r.note) };
                println!("{:<6} {:<12} {}{note}", r.verdict.to_string(), r.case, r.task);
            }
            ExitCode::from(run.exit_code() as u8)
        }
    }
}
