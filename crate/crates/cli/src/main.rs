use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use steinberg::verify::{
    render_markdown, run, suite, Check, CheckReport, Params, RunOptions, Status, SuiteLevel,
};

/// Exact verification of Steinberg idempotents, Tits buildings and Stiefel splittings.
#[derive(Parser)]
#[command(name = "steinberg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one named check.
    Run {
        /// One of the names printed by `steinberg list`.
        check: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a named suite of checks.
    Suite {
        #[arg(value_enum, default_value = "quick")]
        level: Level,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the available checks.
    List,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Third block size for `assoc-comm` (default 1).
    #[arg(long)]
    k: Option<usize>,
    /// A group such as `C4`, `C2^2`, `C2xC4`, `Q8`, `D8`, `Heis3` or `file:<path>`.
    #[arg(long)]
    group: Option<String>,
    #[arg(long = "max-degree")]
    max_degree: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    /// Worker threads (all cores by default).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Record wall time in `elapsed_ms`.
    #[arg(long)]
    timings: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

/// Writes to standard output, ignoring a closed pipe.
fn write_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(reports: &[CheckReport], single: bool, output: &OutputArgs) -> Result<(), String> {
    let text = match output.format {
        Format::Json if single => serde_json::to_string_pretty(&reports[0]),
        Format::Json => serde_json::to_string_pretty(reports),
        Format::Markdown => Ok(render_markdown(reports)),
    }
    .map_err(|e| e.to_string())?;
    let text = if text.ends_with('\n') {
        text
    } else {
        text + "\n"
    };
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            write_stdout(&text);
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::List => {
            let names: String = Check::ALL.iter().map(|c| format!("{c}\n")).collect();
            write_stdout(&names);
            Ok(true)
        }
        Command::Run {
            check,
            params,
            output,
        } => {
            let check: Check = check.parse().map_err(|e: steinberg::Error| e.to_string())?;
            let params = Params {
                p: params.p,
                n: params.n,
                d: params.d,
                i: params.i,
                j: params.j,
                k: params.k,
                group: params.group,
                max_degree: params.max_degree,
            };
            let options = RunOptions {
                timings: output.timings,
            };
            let pool = pool(output.threads)?;
            let report = pool
                .install(|| run(check, &params, options))
                .map_err(|e| e.to_string())?;
            let passed = report.status == Status::Pass;
            emit(&[report], true, &output)?;
            Ok(passed)
        }
        Command::Suite { level, output } => {
            let level = match level {
                Level::Quick => SuiteLevel::Quick,
                Level::Full => SuiteLevel::Full,
            };
            let reports = suite(
                level,
                output.threads,
                RunOptions {
                    timings: output.timings,
                },
            )
            .map_err(|e| e.to_string())?;
            let passed = reports.iter().all(|r| r.status == Status::Pass);
            emit(&reports, false, &output)?;
            Ok(passed)
        }
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    builder.build().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
