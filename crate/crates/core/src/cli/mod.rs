//! Command-line front end.

pub mod config;
pub mod parse;
pub mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::report::Status;

pub use config::{BracketChoice, FileConfig, Format, RunConfig};
pub use parse::{parse_element, parse_element_expr, ElementExpr};
pub use run::{render, run_check, run_suite, CHECKS, PROCEDURES, TABLES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "trilie", version, about = "Exact verification of two infinite-dimensional 3-Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one named check.
    Verify { check: String },
    /// Run an analysis procedure (any check name, or derived-series, lower-central, hypo-nilpotent).
    Analyze { procedure: String },
    /// Verify one multiplication table.
    Table { name: String },
    /// Run the configured check list, or every check.
    Report,
    /// List the accepted names.
    List,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// omega, fk, functional or determinant; both omega and fk when absent.
    #[arg(long, global = true)]
    pub bracket: Option<String>,
    /// Derivation index of the FK bracket and of the dk-induced Lie bracket.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// const:C, poly:P(t) or support:i=c,...
    #[arg(long, global = true)]
    pub beta: Option<String>,
    /// Inclusive index range lo..hi.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maximum closure steps.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Reference index with nonzero beta for the W family.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s0: Option<i64>,
    /// json or text.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Element in the grammar `c*L[i] + ...`; repeatable.
    #[arg(long = "seed-element", global = true, allow_hyphen_values = true)]
    pub seed_element: Vec<String>,
    /// TOML file with the same keys as these flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Lie bracket for the functional construction and the center check: dk:K, fixed-l:K or fixed-m:K.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lie: Option<String>,
    /// Witt module index 1, 2 or 3; all three when absent.
    #[arg(long, global = true)]
    pub module: Option<u8>,
    /// Use the realization map with the sign as printed (M_r -> beta_r y exp(kx)).
    #[arg(long = "printed-map", global = true)]
    pub printed_map: bool,
    /// Comma-separated check list for `report`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub checks: Vec<String>,
}

impl Flags {
    fn as_file_config(&self) -> FileConfig {
        FileConfig {
            bracket: self.bracket.clone(),
            k: self.k,
            beta: self.beta.clone(),
            window: self.window.clone(),
            samples: self.samples,
            seed: self.seed,
            depth: self.depth,
            s0: self.s0,
            format: self.format.clone(),
            seed_element: (!self.seed_element.is_empty()).then(|| self.seed_element.clone()),
            lie: self.lie.clone(),
            module: self.module,
            printed_map: self.printed_map.then_some(true),
            checks: (!self.checks.is_empty()).then(|| self.checks.clone()),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, Error> {
        let base = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        RunConfig::from_file_config(base.overridden_by(self.as_file_config()))
    }
}

/// Output text and exit code for one invocation.
pub fn execute(cli: &Cli) -> (String, i32) {
    let result = cli.flags.resolve().and_then(|cfg| {
        let reports = match &cli.command {
            Command::Verify { check } if CHECKS.contains(&check.as_str()) => run_check(check, &cfg)?,
            Command::Verify { check } => return Err(Error::Config(format!("unknown check '{check}'; see `trilie list`"))),
            Command::Analyze { procedure } => run_check(procedure, &cfg)?,
            Command::Table { name } => {
                let name = if name == "5-1" { "table-5-1" } else { name.as_str() };
                if !TABLES.contains(&name) {
                    return Err(Error::Config(format!("unknown table '{name}', expected one of {}", TABLES.join(", "))));
                }
                run_check(name, &cfg)?
            }
            Command::Report => run_suite(&cfg)?,
            Command::List => {
                let text = format!("checks: {}\nprocedures: {}\ntables: {}\n", CHECKS.join(" "), PROCEDURES.join(" "), TABLES.join(" "));
                return Ok((text, Status::Pass));
            }
        };
        Ok((render(&reports, cfg.format), run::overall(&reports)))
    });
    match result {
        Ok((text, status)) => (text, if status.is_failure() { EXIT_FAIL } else { EXIT_PASS }),
        Err(e) => (format!("error: {e}\n"), EXIT_CONFIG),
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let (text, code) = execute(&cli);
    if code == EXIT_CONFIG {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (String, i32) {
        let cli = Cli::try_parse_from(std::iter::once("trilie").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn verify_fundamental_identity() {
        let (out, code) = run(&["verify", "fundamental-identity", "--bracket", "omega", "--window", "-2..2", "--samples", "5"]);
        assert_eq!(code, EXIT_PASS, "{out}");
        assert!(out.starts_with("[pass] fundamental-identity"));
    }

    #[test]
    fn config_errors_exit_two() {
        assert_eq!(run(&["verify", "nonsense"]).1, EXIT_CONFIG);
        assert_eq!(run(&["verify", "center", "--window", "2..1"]).1, EXIT_CONFIG);
        assert_eq!(run(&["analyze", "ideal-closure", "--seed-element", "M[2"]).1, EXIT_CONFIG);
        assert_eq!(run(&["table", "6-1"]).1, EXIT_CONFIG);
    }

    #[test]
    fn failing_check_exits_one() {
        let (out, code) = run(&["verify", "nambu-realization", "--bracket", "fk", "--printed-map", "--window", "-1..1", "--samples", "2"]);
        assert_eq!(code, EXIT_FAIL, "{out}");
    }

    #[test]
    fn ideal_closure_from_seed() {
        let (out, code) =
            run(&["analyze", "ideal-closure", "--bracket", "omega", "--seed-element", "M[2]", "--window", "-3..3", "--format", "json"]);
        assert_eq!(code, EXIT_PASS, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["stats"]["final"], "full");
    }

    #[test]
    fn repeat_runs_are_identical() {
        let args = ["verify", "vandermonde", "--window", "-3..3", "--seed", "9", "--format", "json"];
        assert_eq!(run(&args), run(&args));
    }
}
