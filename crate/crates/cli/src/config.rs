use std::fmt;
use std::path::{Path, PathBuf};

use ternmap::{Budget, Error as CoreError};
use thiserror::Error;

use crate::report::Format;

/// Environment variable naming a TOML file that overrides budget limits.
pub const BUDGET_ENV: &str = "TERNMAP_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("budget file {path}: {reason}")]
    Budget { path: PathBuf, reason: String },

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Config(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub fn load_budget(path: Option<&Path>) -> CliResult<Budget> {
    let Some(path) = path else {
        return Ok(Budget::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Budget {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    toml::from_str(&text).map_err(|e| CliError::Budget {
        path: path.to_path_buf(),
        reason: e.message().to_string(),
    })
}

/// Everything a subcommand needs, resolved from flags and the budget file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub map_name: Option<String>,
    pub map_table: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub depth: Option<u32>,
    pub rank: Option<u32>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub closed: bool,
    pub budget: Budget,
}

impl RunConfig {
    pub fn trials_or(&self, default: u64) -> CliResult<u64> {
        let trials = self.trials.unwrap_or(default);
        if trials == 0 {
            return Err(CoreError::TooSmall {
                what: "trials",
                value: 0,
                min: 1,
            }
            .into());
        }
        if trials > self.budget.max_trials {
            return Err(CoreError::OverBudget {
                what: "trials",
                value: trials,
                max: self.budget.max_trials,
            }
            .into());
        }
        Ok(trials)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::JsonLines => "json-lines",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn budget_overrides_and_defaults() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "max_rank = 4").unwrap();
        let b = load_budget(Some(file.path())).unwrap();
        assert_eq!(b.max_rank, 4);
        assert_eq!(b.max_trials, Budget::default().max_trials);
        assert_eq!(load_budget(None).unwrap(), Budget::default());
    }

    #[test]
    fn unknown_budget_keys_are_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "max_rnak = 4").unwrap();
        assert!(matches!(load_budget(Some(file.path())), Err(CliError::Budget { .. })));
    }
}
