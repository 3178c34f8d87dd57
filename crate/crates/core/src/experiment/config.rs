use std::path::{Path, PathBuf};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::AuditMode;
use crate::board::{Goal, Player};
use crate::strategy::{BREAKER_STRATEGIES, WALKER_STRATEGIES};

/// Environment variable that overrides `output_dir`.
pub const OUTPUT_DIR_ENV: &str = "WB_OUTPUT_DIR";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn invalid(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::InvalidConfig(msg.into())
}

/// One experiment, read from a TOML file. Every key can be overridden with
/// `key=value` pairs whose value is written in TOML syntax (bare words are
/// taken as strings).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub goal: Goal,
    pub n: Vec<usize>,
    /// Biases for `batch`.
    #[serde(default)]
    pub b: Vec<usize>,
    /// Inclusive bias range `[lo, hi]` for `sweep`.
    #[serde(default)]
    pub b_range: Option<[usize; 2]>,
    /// Exact rationals, written `"2/5"` or `"0.4"`.
    #[serde(default)]
    pub p: Option<String>,
    #[serde(default)]
    pub epsilon: Option<String>,
    pub walker: String,
    pub breaker: String,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub audit: AuditMode,
    /// Defaults to Walker with `breaker.isolation` and Breaker otherwise.
    #[serde(default)]
    pub first_player: Option<Player>,
    /// Keep playing after Walker's win until the board is full. Defaults to
    /// true for `walker.hamiltonicity`.
    #[serde(default)]
    pub play_out: Option<bool>,
    /// Fill the wallclock column. Off by default so reruns are identical.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Also write one transcript per trial under `output_dir/transcripts`.
    #[serde(default)]
    pub transcripts: bool,
    #[serde(default)]
    pub hamilton_budget: Option<u64>,
}

fn default_trials() -> usize {
    1
}

impl ExperimentConfig {
    pub fn from_toml(text: &str, overrides: &[String]) -> Result<Self, ExperimentError> {
        let mut table: toml::Table = text.parse()?;
        for o in overrides {
            let (key, value) = o
                .split_once('=')
                .ok_or_else(|| invalid(format!("override {o:?} is not key=value")))?;
            let key = key.trim();
            let value = value.trim();
            let parsed = format!("v = {value}")
                .parse::<toml::Table>()
                .ok()
                .and_then(|mut t| t.remove("v"))
                .unwrap_or_else(|| toml::Value::String(value.to_string()));
            table.insert(key.to_string(), parsed);
        }
        let cfg: ExperimentConfig = table.try_into()?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, ExperimentError> {
        Self::from_toml(&std::fs::read_to_string(path)?, overrides)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.n.is_empty() {
            return Err(invalid("n is empty"));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < 3) {
            return Err(invalid(format!("n = {n} is below 3")));
        }
        if self.b.contains(&0) {
            return Err(invalid("b must be at least 1"));
        }
        if let Some([lo, hi]) = self.b_range {
            if lo == 0 || lo > hi {
                return Err(invalid(format!("empty bias range [{lo}, {hi}]")));
            }
        }
        if !WALKER_STRATEGIES.contains(&self.walker.as_str()) {
            return Err(invalid(format!("unknown walker strategy {:?}", self.walker)));
        }
        if !BREAKER_STRATEGIES.contains(&self.breaker.as_str()) {
            return Err(invalid(format!("unknown breaker strategy {:?}", self.breaker)));
        }
        if let Some(p) = self.p_ratio()? {
            if p <= Ratio::from_integer(0) || p > Ratio::from_integer(1) {
                return Err(invalid("p must lie in (0, 1]"));
            }
        } else if self.walker == "walker.hamiltonicity" {
            return Err(invalid("walker.hamiltonicity needs p"));
        }
        let eps = self.epsilon_ratio()?;
        if eps <= Ratio::from_integer(0) || eps >= Ratio::from_integer(1) {
            return Err(invalid("epsilon must lie in (0, 1)"));
        }
        if self.threads == Some(0) {
            return Err(invalid("threads must be at least 1"));
        }
        Ok(())
    }

    pub fn p_ratio(&self) -> Result<Option<Ratio<i64>>, ExperimentError> {
        self.p.as_deref().map(parse_ratio).transpose()
    }

    /// Defaults to `1/20`.
    pub fn epsilon_ratio(&self) -> Result<Ratio<i64>, ExperimentError> {
        Ok(self
            .epsilon
            .as_deref()
            .map(parse_ratio)
            .transpose()?
            .unwrap_or(Ratio::new(1, 20)))
    }

    pub fn first_player(&self) -> Player {
        self.first_player.unwrap_or(if self.breaker == "breaker.isolation" {
            Player::Walker
        } else {
            Player::Breaker
        })
    }

    pub fn play_out(&self) -> bool {
        self.play_out.unwrap_or(self.walker == "walker.hamiltonicity")
    }

    /// `WB_OUTPUT_DIR`, then `output_dir`, then `out`.
    pub fn resolved_output_dir(&self) -> PathBuf {
        std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| self.output_dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}

/// Parses `"a/b"`, an integer or a plain decimal such as `"0.05"` exactly.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>, ExperimentError> {
    let s = s.trim();
    let bad = || invalid(format!("not a rational number: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int: i64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let denom = 10i64.pow(frac.len() as u32);
    let num: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    Ok(Ratio::new(int * denom + num, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
goal = "connectivity"
n = [200]
b = [7]
walker = "walker.connectivity"
breaker = "breaker.greedy_star"
trials = 50
"#;

    #[test]
    fn parses_and_overrides() {
        let c = ExperimentConfig::from_toml(BASE, &[]).unwrap();
        assert_eq!(c.trials, 50);
        assert_eq!(c.first_player(), Player::Breaker);
        let c = ExperimentConfig::from_toml(BASE, &["trials=3".into(), "breaker=breaker.isolation".into()]).unwrap();
        assert_eq!((c.trials, c.breaker.as_str()), (3, "breaker.isolation"));
        assert_eq!(c.first_player(), Player::Walker);
        let c = ExperimentConfig::from_toml(BASE, &["n=[10, 20]".into()]).unwrap();
        assert_eq!(c.n, vec![10, 20]);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            ExperimentConfig::from_toml(BASE, &["trials=0".into()]),
            Err(ExperimentError::InvalidConfig(_))
        ));
        assert!(ExperimentConfig::from_toml(BASE, &["b_range=[5, 2]".into()]).is_err());
        assert!(ExperimentConfig::from_toml(BASE, &["walker=walker.nope".into()]).is_err());
        assert!(ExperimentConfig::from_toml(BASE, &["walker=walker.hamiltonicity".into()]).is_err());
        assert!(ExperimentConfig::from_toml(BASE, &["colour=1".into()]).is_err());
    }

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("2/5").unwrap(), Ratio::new(2, 5));
        assert_eq!(parse_ratio("0.4").unwrap(), Ratio::new(2, 5));
        assert_eq!(parse_ratio("0.05").unwrap(), Ratio::new(1, 20));
        assert_eq!(parse_ratio("3").unwrap(), Ratio::from_integer(3));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }
}
