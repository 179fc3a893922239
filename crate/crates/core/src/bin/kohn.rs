use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kohn_core::cli::{emit_report, exit_code, run_problem, ProblemFile, ReportFormat};
use kohn_core::ideal::RadicalMode;

#[derive(Parser)]
#[command(name = "kohn", version, about = "Run the Kohn multiplier-ideal algorithm on a problem file")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a problem file and emit its trace.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "machine")]
        format: ReportFormat,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        radical_mode: Option<RadicalMode>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let Command::Run { file, format, max_steps, radical_mode, out } = args.command;
    let mut problem = match ProblemFile::from_path(&file) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    if let Some(k) = max_steps {
        problem.caps.max_steps = Some(k);
    }
    if let Some(m) = radical_mode {
        problem.radical_mode = m;
    }
    let doc = match run_problem(&problem) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let bytes = emit_report(&doc, format);
    let written = match &out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        return fail(e);
    }
    ExitCode::from(exit_code(&doc) as u8)
}
