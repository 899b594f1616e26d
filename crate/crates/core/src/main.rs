use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use convar::builtins::{builtin, BUILTIN_NAMES};
use convar::report::VerificationReport;
use convar::runner::{run_scenario, RunOptions};
use convar::scenario::{ScenarioError, ScenarioFile};

#[derive(Parser)]
#[command(
    name = "convar",
    version,
    about = "Run and verify conceptual-variable scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a built-in scenario.
    Run {
        /// Scenario file (JSON).
        #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
        path: Option<PathBuf>,
        /// Name of a built-in scenario instead of a file.
        #[arg(long)]
        builtin: Option<String>,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// List the built-in scenarios.
    List,
    /// Print a built-in scenario as JSON.
    Emit { name: String },
    /// Run every built-in scenario.
    Selftest {
        #[command(flatten)]
        flags: RunFlags,
    },
}

#[derive(Args, Clone)]
struct RunFlags {
    /// Write the JSON report here, and a text summary next to it (.txt).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Multiply every tolerance by this factor.
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Also search the full symmetric group for relating permutations (at most 8 points).
    #[arg(long)]
    exhaustive_relatedness: bool,
    /// Override max_n of a2-falsify checks.
    #[arg(long)]
    max_n: Option<usize>,
    /// Record per-check wall-clock time in the report.
    #[arg(long)]
    timings: bool,
}

impl RunFlags {
    fn options(&self) -> RunOptions {
        RunOptions {
            tolerance_scale: self.tolerance_scale,
            exhaustive_relatedness: self.exhaustive_relatedness,
            max_n_override: self.max_n,
            timings: self.timings,
        }
    }
}

const EXIT_USAGE: u8 = 2;

fn summary_path(report: &Path) -> PathBuf {
    report.with_extension("txt")
}

fn write_outputs(report: &VerificationReport, target: Option<&Path>) -> Result<(), String> {
    match target {
        Some(path) => {
            std::fs::write(path, report.to_json())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            let txt = summary_path(path);
            std::fs::write(&txt, report.render_text())
                .map_err(|e| format!("cannot write {}: {e}", txt.display()))?;
            print!("{}", report.render_text());
        }
        None => {
            print!("{}", report.to_json());
            eprint!("{}", report.render_text());
        }
    }
    Ok(())
}

fn load(path: Option<&Path>, name: Option<&str>) -> Result<ScenarioFile, ScenarioError> {
    match (path, name) {
        (Some(p), _) => ScenarioFile::from_path(p),
        (None, Some(n)) => builtin(n),
        (None, None) => unreachable!("clap requires a path or --builtin"),
    }
}

fn run(path: Option<&Path>, name: Option<&str>, flags: &RunFlags) -> ExitCode {
    let report = match load(path, name).and_then(|f| run_scenario(&f, &flags.options())) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = write_outputs(&report, flags.report.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(report.exit_code() as u8)
}

fn selftest(flags: &RunFlags) -> ExitCode {
    let mut worst = 0u8;
    let mut combined = Vec::new();
    for name in BUILTIN_NAMES {
        match builtin(name).and_then(|f| run_scenario(&f, &flags.options())) {
            Ok(r) => {
                let s = &r.summary;
                println!(
                    "{:<20} {} ({} pass, {} fail, {} not-applicable, {} error, {} informational)",
                    name,
                    if r.exit_code() == 0 { "ok" } else { "FAILED" },
                    s.pass,
                    s.fail,
                    s.not_applicable,
                    s.error,
                    s.informational
                );
                worst = worst.max(r.exit_code() as u8);
                combined.push(r);
            }
            Err(e) => {
                println!("{name:<20} error: {e}");
                worst = EXIT_USAGE;
            }
        }
    }
    if let Some(path) = &flags.report {
        let mut text = serde_json::to_string_pretty(&combined).expect("reports serialize");
        text.push('\n');
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            path,
            builtin,
            flags,
        } => run(path.as_deref(), builtin.as_deref(), &flags),
        Command::List => {
            for name in BUILTIN_NAMES {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Emit { name } => match builtin(&name) {
            Ok(f) => {
                print!("{}", f.to_json());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Selftest { flags } => selftest(&flags),
    }
}
