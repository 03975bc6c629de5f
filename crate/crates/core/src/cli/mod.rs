//! Command-line front end. Every command builds a JSON value; `--format`
//! decides whether it is printed as JSON or as flattened `key = value` lines.

mod commands;
mod render;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hullkit::config::{OutputFormat, RunConfig, BOUND_ENV};
use hullkit::HullError;

#[derive(Debug, Parser)]
#[command(name = "hullkit", version, about = "Translational hulls of endomorphism semigroups of finite algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest semigroup whose translations are enumerated.
    #[arg(long, global = true, env = BOUND_ENV)]
    pub bound: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Rep,
    Sep,
    Reductive,
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SnIdealArg {
    Full,
    NonAut,
    EvenGenerated,
}

/// ALGEBRA arguments are JSON files or `builtin:NAME` with NAME one of
/// set:N, cyclic:N, sym:N, vector:P:D, clifford.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a built-in algebra as JSON.
    Make {
        /// set:N, cyclic:N, sym:N, vector:P:D or clifford
        name: String,
    },
    /// Enumerate End(A) and summarise its Green structure.
    End {
        algebra: String,
        /// Generators of A used to extend endomorphisms.
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<usize>>,
        /// Write the egg-box diagram in Graphviz format here.
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
    },
    /// Translational hull of an ideal of End(A) and its realisations.
    Hull {
        algebra: String,
        /// all, rank:K, non-units, minimal, gens:I,J,... or a semigroup file
        #[arg(long)]
        ideal: String,
    },
    /// The quotient A/~ with the induced action of I/≈.
    Quotient {
        algebra: String,
        #[arg(long)]
        ideal: String,
    },
    /// Representability, separability, reductivity and balance of an ideal.
    Check {
        algebra: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "rep,sep,reductive,balanced")]
        properties: Vec<Property>,
    },
    /// End(S_n) from its closed-form description.
    Sn {
        n: usize,
        /// Build the partial model for n = 4.
        #[arg(long)]
        allow_n4: bool,
        /// Also analyse one ideal of End(S_n).
        #[arg(long, value_enum)]
        ideal: Option<SnIdealArg>,
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
    },
    /// Hull of a multiplicative ideal of a finite semiring.
    Semiring {
        file: String,
        /// Replace the semiring by its n×n matrices.
        #[arg(long)]
        matrix: Option<usize>,
        /// all, gens:I,J,... or unit:I,J (the ideal of a matrix unit)
        #[arg(long)]
        ideal: String,
        /// Idempotents of I for the three-condition check, or `diag` for
        /// the diagonal matrix units.
        #[arg(long)]
        idempotents: Option<String>,
    },
    /// Check every built-in theorem on the fixed corpus.
    Audit,
}

/// A command's printable result plus an optional failed assertion.
pub struct Outcome {
    /// First line of text output.
    pub headline: Option<String>,
    pub value: Value,
    pub violation: Option<String>,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Outcome {
            headline: None,
            value,
            violation: None,
        }
    }

    pub fn headed(mut self, line: String) -> Self {
        self.headline = Some(line);
        self
    }
}

fn config(cli: &Cli) -> Result<RunConfig, HullError> {
    let mut cfg = RunConfig::default();
    if let Some(b) = cli.bound {
        cfg.enumeration_bound = b;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = config(&cli).and_then(|cfg| commands::dispatch(&cli.command, &cfg));
    match result {
        Ok(out) => {
            // algebra files are always written as JSON
            let format = if matches!(cli.command, Command::Make { .. }) { Format::Json } else { cli.format };
            let mut text = String::new();
            match format {
                Format::Json => text = serde_json::to_string_pretty(&out.value).expect("json") + "\n",
                Format::Text => {
                    if let Some(h) = &out.headline {
                        text = format!("{h}\n");
                    }
                    text.push_str(&render::text(&out.value));
                }
            }
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
            match out.violation {
                Some(msg) => {
                    eprintln!("error: {}", HullError::TheoremViolation(msg));
                    2
                }
                None => 0,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
