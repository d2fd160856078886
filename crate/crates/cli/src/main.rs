//! `bsato`: exact b-function, Capelli and zeta-function verification.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 bad usage or input,
//! 3 the `--max-seconds` budget ran out.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use commands::{CliError, Kind, Params, Suite};
use report::{Outcome, RunReport};

#[derive(Parser)]
#[command(
    name = "bsato",
    version,
    about = "Exact verification of Bernstein-Sato polynomials"
)]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Abort with exit code 3 once this many seconds have passed.
    #[arg(long, global = true, value_name = "SECONDS")]
    max_seconds: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the b-function of a family, optionally recovering it from D_d.
    Bfun {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Recover P_f from the action of D_d and compare.
        #[arg(long)]
        verify: bool,
        /// Also print b_Z(s) = b(s - codim).
        #[arg(long)]
        renormalize: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "minors")]
        kind: Kind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Rank for `capelli` and `lemma-fsr`.
        #[arg(long)]
        r: Option<usize>,
        /// Largest power for `cayley`.
        #[arg(long)]
        max_power: Option<u32>,
        /// Size bound: |λ|, |â| or degree d, depending on the suite; matrix
        /// size for `all`.
        #[arg(long)]
        max_size: Option<u32>,
        /// Print the operators involved in textual form.
        #[arg(long)]
        print_operator: bool,
    },
    /// Topological zeta function, poles and the monodromy check.
    Zeta {
        #[arg(value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Check that b·Z is a polynomial and every pole is a root of b.
        #[arg(long)]
        check_smc: bool,
        /// JSON resolution data: {"components":[{"a":..,"k":..}],"chi":"symbolic"}.
        #[arg(long, value_name = "FILE")]
        resolution: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Bfun { .. } => "bfun".into(),
            Command::Verify { suite, .. } => {
                let v = clap::ValueEnum::to_possible_value(suite).expect("named suite");
                format!("verify {}", v.get_name())
            }
            Command::Zeta { .. } => "zeta".into(),
        }
    }

    fn run(self) -> Result<Outcome, CliError> {
        match self {
            Command::Bfun {
                kind,
                m,
                n,
                verify,
                renormalize,
            } => {
                let space = commands::space_of(kind, m, n)?;
                Ok(commands::bfun(space, verify, renormalize))
            }
            Command::Verify {
                suite,
                kind,
                m,
                n,
                r,
                max_power,
                max_size,
                print_operator,
            } => {
                let takes_space = !matches!(suite, Suite::LemmaFsr | Suite::All)
                    && !(suite == Suite::Capelli && n.is_none());
                // The blow-up chart only exists for Pfaffians.
                let kind = if suite == Suite::Blowup {
                    Kind::Pfaffian
                } else {
                    kind
                };
                let space = if takes_space {
                    let default_n = if kind == Kind::Pfaffian && suite != Suite::Blowup {
                        1
                    } else {
                        2
                    };
                    Some(commands::space_of(kind, m, Some(n.unwrap_or(default_n)))?)
                } else {
                    None
                };
                let params = Params {
                    r,
                    max_power,
                    max_size,
                    print_operator,
                };
                commands::verify(suite, space, &params)
            }
            Command::Zeta {
                kind,
                m,
                n,
                check_smc,
                resolution,
            } => {
                let space = match kind {
                    Some(k) => Some(commands::space_of(k, m, n)?),
                    None if m.is_some() || n.is_some() => {
                        return Err(CliError::Usage("--m/--n need a kind".into()))
                    }
                    None => None,
                };
                commands::zeta(space, resolution.as_deref(), check_smc)
            }
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("BSATO_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("BSATO_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn execute(command: Command) -> Result<(RunReport, Vec<String>), CliError> {
    let name = command.name();
    let start = Instant::now();
    let outcome = command.run()?;
    Ok(outcome.finish(name, start.elapsed().as_millis() as u64))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.max_seconds {
        None => execute(cli.command),
        Some(secs) if secs.is_finite() && secs > 0.0 => {
            let (tx, rx) = mpsc::channel();
            let command = cli.command;
            std::thread::spawn(move || {
                let _ = tx.send(execute(command));
            });
            match rx.recv_timeout(Duration::from_secs_f64(secs)) {
                Ok(r) => r,
                Err(_) => {
                    eprintln!("error: budget of {secs} s exceeded");
                    return ExitCode::from(3);
                }
            }
        }
        Some(secs) => {
            eprintln!("error: --max-seconds must be positive, got {secs}");
            return ExitCode::from(2);
        }
    };
    match result {
        Ok((run, lines)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&run).expect("report serializes")
                );
            } else {
                run.print_text(&lines);
            }
            if run.status == bsato_core::Status::Pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
