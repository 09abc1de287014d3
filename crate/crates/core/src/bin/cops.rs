use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cops_core::experiments::{self, CliError, GraphSource, PRule, PolicyKind, ProbeConfig};
use cops_core::game::{SolveLimits, DEFAULT_STATE_LIMIT};
use cops_core::guarding::GuardConfig;

#[derive(Parser)]
#[command(name = "cops", version, about = "Cops and robber workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Generated graph, e.g. `petersen`, `grid:4:4`, `gnp:30:0.2:7`.
    #[arg(long = "gen", value_name = "FAMILY[:PARAMS]", conflicts_with = "file")]
    gen: Option<String>,
    /// Edge-list file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl Input {
    fn source(&self) -> Result<GraphSource, CliError> {
        match (&self.gen, &self.file) {
            (Some(spec), None) => Ok(GraphSource::Generated(spec.clone())),
            (None, Some(path)) => Ok(GraphSource::File(path.clone())),
            _ => Err(CliError::Input(
                "give exactly one of --gen or --file".into(),
            )),
        }
    }
}

#[derive(Args, Clone)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact cop number.
    Copnumber {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        state_limit: u64,
        #[arg(long)]
        max_k: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Genus and cop-number bounds.
    Bounds {
        #[command(flatten)]
        input: Input,
        /// Known orientable genus, used for the cop upper bounds.
        #[arg(long)]
        genus: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the shadow guard against a robber policy.
    Guard {
        #[command(flatten)]
        input: Input,
        /// Comma separated vertices of the path.
        #[arg(long)]
        path: String,
        #[arg(long, default_value = "random")]
        policy: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Rounds per trial.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write one JSON trace per trial here.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep seeded G(n, p) graphs.
    Probe {
        /// Comma separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma separated seeds.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        /// Fixed edge probability; default is 2.5 ln(n)/n.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        state_limit: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Print a graph as an edge list.
    Gen {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            let newline = if text.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{text}{newline}").and_then(|()| stdout.flush()) {
                // A closed pipe (`cops ... | head`) is not an error.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Output(e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

fn json_only(output: &Output) -> Result<(), CliError> {
    if output.csv {
        return Err(CliError::Input("this command only writes JSON".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Copnumber {
            input,
            state_limit,
            max_k,
            output,
        } => {
            json_only(&output)?;
            let limits = SolveLimits { state_limit, max_k };
            emit(
                &experiments::cmd_copnumber(&input.source()?, &limits)?,
                output.out.as_ref(),
            )
        }
        Command::Bounds {
            input,
            genus,
            output,
        } => {
            json_only(&output)?;
            emit(
                &experiments::cmd_bounds(&input.source()?, genus)?,
                output.out.as_ref(),
            )
        }
        Command::Guard {
            input,
            path,
            policy,
            trials,
            steps,
            seed,
            trace_dir,
            output,
        } => {
            json_only(&output)?;
            let policy: PolicyKind = policy.parse()?;
            let cfg = GuardConfig {
                trials,
                seed,
                max_rounds: steps,
                record_traces: false,
            };
            let path = experiments::parse_path(&path)?;
            let text = experiments::cmd_guard(
                &input.source()?,
                &path,
                policy,
                &cfg,
                trace_dir.as_deref(),
            )?;
            emit(&text, output.out.as_ref())
        }
        Command::Probe {
            n,
            seeds,
            p,
            max_k,
            state_limit,
            output,
        } => {
            let cfg = ProbeConfig {
                ns: n,
                seeds,
                p_rule: p.map_or(PRule::Corollary, PRule::Explicit),
                state_limit,
                max_k,
            };
            emit(
                &experiments::cmd_probe(&cfg, output.json)?,
                output.out.as_ref(),
            )
        }
        Command::Gen { input, out } => emit(&experiments::cmd_gen(&input.source()?)?, out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
