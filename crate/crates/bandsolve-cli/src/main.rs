use std::io::Write;
use std::process::ExitCode;

use bandsolve::generators::GeneratorKind;
use bandsolve_cli::commands;
use bandsolve_cli::{CliError, Mode, ResultDocument};
use clap::{Parser, Subcommand};

/// Multi-diagonal linear system solver.
#[derive(Parser)]
#[command(name = "bandsolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the system in a band file.
    Solve {
        path: String,
        #[arg(long, value_enum, default_value = "numeric")]
        mode: Mode,
        /// Pivot zero threshold for numeric mode.
        #[arg(long, env = "BANDSOLVE_EPSILON")]
        epsilon: Option<f64>,
    },
    /// Determinant of the matrix in a band file.
    Det {
        path: String,
        #[arg(long, value_enum, default_value = "numeric")]
        mode: Mode,
        #[arg(long, env = "BANDSOLVE_EPSILON")]
        epsilon: Option<f64>,
    },
    /// Predicted operation counts, and measured ones for a band file.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        path: Option<String>,
    },
    /// Write a generated system to standard output.
    Generate {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        /// Defaults to the stencil width for poisson1d / biharmonic1d.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare the solver with the dense exact oracle (n <= 64).
    Verify { path: String },
}

type Failure = (CliError, &'static str, Option<Mode>);

fn fail(command: &'static str, mode: Option<Mode>) -> impl Fn(CliError) -> Failure {
    move |e| (e, command, mode)
}

fn run(command: Command) -> Result<String, Failure> {
    let doc = match command {
        Command::Solve {
            path,
            mode,
            epsilon,
        } => commands::read_system(&path)
            .and_then(|s| commands::solve("solve", &s, mode, epsilon, true))
            .map_err(fail("solve", Some(mode)))?,
        Command::Det {
            path,
            mode,
            epsilon,
        } => commands::read_system(&path)
            .and_then(|s| commands::solve("det", &s, mode, epsilon, false))
            .map_err(fail("det", Some(mode)))?,
        Command::Count { n, m, path } => path
            .map(|p| commands::read_system(&p))
            .transpose()
            .and_then(|s| commands::count(n, m, s.as_ref()))
            .map_err(fail("count", None))?,
        Command::Generate { kind, n, m, seed } => {
            return commands::generate_file(kind, n, m, seed).map_err(fail("generate", None));
        }
        Command::Verify { path } => commands::read_system(&path)
            .and_then(|s| commands::verify(&s))
            .map_err(fail("verify", Some(Mode::Symbolic)))?,
    };
    Ok(to_json(&doc))
}

fn to_json(doc: &ResultDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    text
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the code of other invalid-input failures
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (text, code) = match run(cli.command) {
        Ok(text) => (text, 0),
        Err((e, command, mode)) => {
            eprintln!("bandsolve: {e}");
            let mut doc = ResultDocument::new(command, mode);
            doc.exit_code = e.exit_code();
            doc.error = Some(e.to_string());
            (to_json(&doc), doc.exit_code)
        }
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(code)
}
