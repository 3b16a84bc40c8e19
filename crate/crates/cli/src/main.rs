//! `zxsurg` — spider-diagram evaluation, exact rewriting, heralded
//! lattice-surgery procedures, and the stabilizer lattice simulation, under
//! one binary with machine-checkable verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zxsurg::commands::{
    cmd_dot, cmd_eval, cmd_sample, cmd_simplify, cmd_simplify_fuzz, cmd_surface_run,
};
use zxsurg::report::VerifyReport;
use zxsurg::suites::run_suites;
use zxsurg::{tolerance_from_env, CliError};

#[derive(Parser)]
#[command(
    name = "zxsurg",
    version,
    about = "Spider diagrams, heralded surgery procedures, and the lattice that runs them"
)]
struct Cli {
    /// Seed for every randomized subcommand; identical seeds give
    /// byte-identical output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram commands: evaluate, normalize, render.
    #[command(subcommand)]
    Zx(ZxCommand),
    /// Heralded-procedure commands.
    #[command(subcommand)]
    Surgery(SurgeryCommand),
    /// Lattice-experiment commands.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Run the named verification suite (exit 0 only if every case passes).
    Verify {
        /// all, zx-rules, cnot, tgate, appendix, or physical.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the reports as a JSON array to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ZxCommand {
    /// Evaluate a diagram file to its tensor.
    Eval {
        file: PathBuf,
        /// Also write the matrix as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a diagram to normal form, self-checking that the tensor is
    /// unchanged (a failed self-check exits 4).
    Simplify {
        /// Diagram file (omit when fuzzing).
        file: Option<PathBuf>,
        /// Print the rewrite step log after the diagram.
        #[arg(long)]
        steps: bool,
        /// Normalize this many seeded random diagrams instead of a file.
        #[arg(long, value_name = "N")]
        fuzz: Option<usize>,
    },
    /// Render a diagram file as Graphviz DOT.
    Dot { file: PathBuf },
}

#[derive(Subcommand)]
enum SurgeryCommand {
    /// Sample heralded outcomes of a procedure (a file path or a builtin
    /// name) and print the outcome histogram with model probabilities.
    Sample {
        /// Procedure file, or a builtin such as cnot-standard or t-merge.
        procedure: String,
        /// Product input state, one factor per qubit over 0, 1, +, −
        /// (e.g. "++" or "|0+⟩").
        #[arg(long)]
        state: String,
        /// Number of seeded draws.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Run a lattice experiment config and print one JSON record per line
    /// (exit 1 if any record fails its checks).
    Run { config: PathBuf },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let tol = tolerance_from_env()?;
    match cli.command {
        Command::Zx(zx) => match zx {
            ZxCommand::Eval { file, out } => {
                print!("{}", cmd_eval(&file, out.as_deref())?);
                Ok(ExitCode::SUCCESS)
            }
            ZxCommand::Simplify { file, steps, fuzz } => {
                if let Some(n) = fuzz {
                    print!("{}", cmd_simplify_fuzz(n, cli.seed, tol)?);
                    return Ok(ExitCode::SUCCESS);
                }
                let Some(file) = file else {
                    return Err(CliError::Parse(
                        "simplify needs a diagram file (or --fuzz N)".into(),
                    ));
                };
                let result = cmd_simplify(&file, tol)?;
                println!("{}", result.diagram_json);
                if steps {
                    if result.steps.is_empty() {
                        println!("# already in normal form");
                    }
                    for (i, s) in result.steps.iter().enumerate() {
                        println!("# step {}: {s}", i + 1);
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            ZxCommand::Dot { file } => {
                print!("{}", cmd_dot(&file)?);
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Surgery(SurgeryCommand::Sample {
            procedure,
            state,
            trials,
        }) => {
            print!("{}", cmd_sample(&procedure, &state, cli.seed, trials)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface(SurfaceCommand::Run { config }) => {
            let (lines, all_pass) = cmd_surface_run(&config)?;
            print!("{lines}");
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify { suite, json } => {
            let reports = run_suites(&suite, tol, cli.seed)?;
            for r in &reports {
                print!("{}", r.render_text());
            }
            let all_pass = reports.iter().all(VerifyReport::all_pass);
            if let Some(path) = json {
                let doc = serde_json::to_string_pretty(&reports).expect("plain data");
                std::fs::write(path, doc)?;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
