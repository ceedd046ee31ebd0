//! Run configuration: defaults, a `section.key = value` file, then flags.

use std::path::Path;

use serde::Serialize;

use crate::construct::ConstructionConfig;
use crate::decompose::EpsChoice;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative Parseval residual allowed by `transform`.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: 1e-10 }
    }
}

/// The fully resolved configuration embedded in every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Worker threads; `None` uses every available core.
    pub threads: Option<usize>,
    pub construct: ConstructionConfig,
    pub epsilon: EpsChoice,
    pub tol: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            threads: None,
            construct: ConstructionConfig::default(),
            epsilon: EpsChoice::default(),
            tol: Tolerances::default(),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("`{key}`: cannot parse `{value}`")))
}

impl RunConfig {
    /// Applies one `section.key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "run.seed" => self.seed = parse_num(key, value)?,
            "run.threads" => self.threads = Some(parse_num(key, value)?),
            "construct.c_const" => self.construct.c_const = parse_num(key, value)?,
            "construct.c_exp" => self.construct.c_exp = parse_num(key, value)?,
            "construct.moment_threshold" => {
                self.construct.moment_threshold = parse_num(key, value)?
            }
            "construct.resample_cap" => self.construct.resample_cap = parse_num(key, value)?,
            "construct.round_retry_cap" => self.construct.round_retry_cap = parse_num(key, value)?,
            "decompose.epsilon" => self.epsilon = value.parse()?,
            "decompose.c_eps" => {
                self.epsilon = EpsChoice::Auto {
                    c_eps: parse_num(key, value)?,
                }
            }
            "tol.residual" => self.tol.residual = parse_num(key, value)?,
            other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Applies every assignment in `text`. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `section.key = value`", i + 1))
            })?;
            if !key.contains('.') {
                return Err(Error::Parse(format!(
                    "line {}: key `{}` has no section",
                    i + 1,
                    key.trim()
                )));
            }
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        self.apply_text(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_layer() {
        let mut c = RunConfig::default();
        c.apply_text(
            "# comment\nconstruct.c_const = 2000\n\nrun.seed=7\ndecompose.epsilon = 0.3\n",
        )
        .unwrap();
        assert_eq!(c.construct.c_const, 2000.0);
        assert_eq!(c.seed, 7);
        assert_eq!(c.epsilon, EpsChoice::Fixed(0.3));
        c.apply_text("decompose.epsilon = auto").unwrap();
        assert_eq!(c.epsilon, EpsChoice::default());
    }

    #[test]
    fn rejects_bad_lines() {
        let mut c = RunConfig::default();
        assert!(c.apply_text("seed = 1").is_err());
        assert!(c.apply_text("run.colour = red").is_err());
        assert!(c.apply_text("run.seed").is_err());
        assert!(c.apply_text("run.seed = x").is_err());
    }
}
