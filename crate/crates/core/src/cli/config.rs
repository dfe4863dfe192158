//! Run configuration: an optional TOML file overridden by command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::algebra::{Element, FunctionalSpec};
use crate::analysis::closure::DEFAULT_DEPTH;
use crate::brackets::{LieBracketSpec, TriBracketSpec};
use crate::error::Error;
use crate::window::Window;

use super::parse::parse_element;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketChoice {
    Omega,
    Fk,
    /// Induced by `--lie` and `--beta`, certified on the window.
    Functional,
    /// The Jacobian-determinant construction.
    Determinant,
}

impl FromStr for BracketChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "omega" => Ok(BracketChoice::Omega),
            "fk" => Ok(BracketChoice::Fk),
            "functional" => Ok(BracketChoice::Functional),
            "determinant" => Ok(BracketChoice::Determinant),
            other => Err(Error::Config(format!("unknown bracket '{other}', expected omega, fk, functional or determinant"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format '{other}', expected json or text"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

/// Every key is optional; the same names as the long flags, with `_` for `-`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub bracket: Option<String>,
    pub k: Option<i64>,
    pub beta: Option<String>,
    pub window: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub s0: Option<i64>,
    pub format: Option<String>,
    pub seed_element: Option<Vec<String>>,
    pub lie: Option<String>,
    pub module: Option<u8>,
    pub printed_map: Option<bool>,
    pub checks: Option<Vec<String>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config file: {}", e.message())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overridden_by(self, over: FileConfig) -> FileConfig {
        FileConfig {
            bracket: over.bracket.or(self.bracket),
            k: over.k.or(self.k),
            beta: over.beta.or(self.beta),
            window: over.window.or(self.window),
            samples: over.samples.or(self.samples),
            seed: over.seed.or(self.seed),
            depth: over.depth.or(self.depth),
            s0: over.s0.or(self.s0),
            format: over.format.or(self.format),
            seed_element: over.seed_element.or(self.seed_element),
            lie: over.lie.or(self.lie),
            module: over.module.or(self.module),
            printed_map: over.printed_map.or(self.printed_map),
            checks: over.checks.or(self.checks),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// `None` runs bracket-dependent checks for both Omega and FK.
    pub bracket: Option<BracketChoice>,
    pub k: i64,
    pub beta: FunctionalSpec,
    pub window: Window,
    pub samples: usize,
    pub seed: u64,
    pub depth: usize,
    pub s0: Option<i64>,
    pub format: Format,
    pub seed_elements: Vec<Element>,
    pub lie: LieBracketSpec,
    pub module: Option<u8>,
    pub printed_map: bool,
    pub checks: Vec<String>,
}

pub const DEFAULT_WINDOW: (i64, i64) = (-5, 5);
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_K: i64 = 1;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            bracket: None,
            k: DEFAULT_K,
            beta: FunctionalSpec::default(),
            window: Window::new(DEFAULT_WINDOW.0, DEFAULT_WINDOW.1).expect("valid default window"),
            samples: DEFAULT_SAMPLES,
            seed: 0,
            depth: DEFAULT_DEPTH,
            s0: None,
            format: Format::Text,
            seed_elements: Vec::new(),
            lie: LieBracketSpec::DkInduced(DEFAULT_K),
            module: None,
            printed_map: false,
            checks: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn from_file_config(file: FileConfig) -> Result<Self, Error> {
        let mut cfg = RunConfig::default();
        if let Some(b) = file.bracket {
            cfg.bracket = Some(b.parse()?);
        }
        if let Some(k) = file.k {
            cfg.k = k;
        }
        cfg.lie = match file.lie {
            Some(l) => l.parse()?,
            None => LieBracketSpec::DkInduced(cfg.k),
        };
        if let Some(b) = file.beta {
            cfg.beta = b.parse()?;
        }
        if let Some(w) = file.window {
            cfg.window = w.parse()?;
        }
        cfg.samples = file.samples.unwrap_or(cfg.samples);
        cfg.seed = file.seed.unwrap_or(cfg.seed);
        cfg.depth = file.depth.unwrap_or(cfg.depth);
        cfg.s0 = file.s0;
        if let Some(f) = file.format {
            cfg.format = f.parse()?;
        }
        for text in file.seed_element.unwrap_or_default() {
            let e = parse_element(&text).map_err(|e| Error::Config(format!("seed element '{text}': {e}")))?;
            cfg.seed_elements.push(e);
        }
        if let Some(m) = file.module {
            if !(1..=3).contains(&m) {
                return Err(Error::Config(format!("module must be 1, 2 or 3, got {m}")));
            }
            cfg.module = Some(m);
        }
        cfg.printed_map = file.printed_map.unwrap_or(false);
        cfg.checks = file.checks.unwrap_or_default();
        if cfg.depth == 0 {
            return Err(Error::Config("depth must be positive".into()));
        }
        if let Some(s0) = cfg.s0 {
            if num_traits::Zero::is_zero(&cfg.beta.beta(s0)) {
                return Err(Error::Config(format!("beta vanishes at s0 = {s0}")));
            }
        }
        Ok(cfg)
    }

    pub fn s0(&self) -> i64 {
        self.s0.unwrap_or_else(|| self.beta.nonzero_index())
    }

    pub fn tri_spec(&self, choice: BracketChoice) -> Result<TriBracketSpec, Error> {
        Ok(match choice {
            BracketChoice::Omega => TriBracketSpec::Omega,
            BracketChoice::Fk => TriBracketSpec::fk(self.k, self.beta.clone()),
            BracketChoice::Functional => TriBracketSpec::from_functional(self.lie, self.beta.clone(), &self.window)?,
            BracketChoice::Determinant => TriBracketSpec::Determinant,
        })
    }

    /// The brackets a bracket-dependent check runs under.
    pub fn bracket_choices(&self) -> Vec<BracketChoice> {
        match self.bracket {
            Some(b) => vec![b],
            None => vec![BracketChoice::Omega, BracketChoice::Fk],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = FileConfig::parse("bracket = \"fk\"\nk = 2\nwindow = \"-2..2\"\nseed_element = [\"M[2]\"]\n").unwrap();
        let flags = FileConfig { k: Some(0), ..Default::default() };
        let cfg = RunConfig::from_file_config(file.overridden_by(flags)).unwrap();
        assert_eq!(cfg.bracket, Some(BracketChoice::Fk));
        assert_eq!(cfg.k, 0);
        assert_eq!(cfg.lie, LieBracketSpec::DkInduced(0));
        assert_eq!(cfg.window, Window::new(-2, 2).unwrap());
        assert_eq!(cfg.seed_elements, vec![Element::m(2)]);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(FileConfig::parse("colour = 3").is_err());
        for file in [
            FileConfig { bracket: Some("lie".into()), ..Default::default() },
            FileConfig { window: Some("3..1".into()), ..Default::default() },
            FileConfig { module: Some(4), ..Default::default() },
            FileConfig { beta: Some("support:1=1".into()), s0: Some(0), ..Default::default() },
            FileConfig { seed_element: Some(vec!["L[1".into()]), ..Default::default() },
            FileConfig { depth: Some(0), ..Default::default() },
        ] {
            assert!(matches!(RunConfig::from_file_config(file), Err(Error::Config(_))));
        }
    }
}
