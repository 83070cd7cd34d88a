//! Flat `key = value` settings for optimizer budgets and suite sizes.
//!
//! ```text
//! # comments and blank lines are ignored
//! optimizer.restarts = 4
//! fixed_point.samples = 1000
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::sphere_geom::ExtentConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Used by the `extent` subcommand.
    pub extent: ExtentConfig,
    /// Budget per lens space in the optimizer soundness sweep.
    pub soundness_restarts: u32,
    pub soundness_max_iters: u32,
    pub soundness_samples: u32,
    pub soundness_max_n: u64,
    pub scan_max_n: u64,
    pub threshold_n: u64,
    pub fixed_point_samples: usize,
    pub abelian_samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            extent: ExtentConfig::default(),
            soundness_restarts: 3,
            soundness_max_iters: 60,
            soundness_samples: 50,
            soundness_max_n: 200,
            scan_max_n: 300,
            threshold_n: 61,
            fixed_point_samples: 1000,
            abelian_samples: 10,
        }
    }
}

pub const KEYS: [&str; 13] = [
    "extent.q",
    "extent.restarts",
    "extent.max_iters",
    "extent.step_tolerance",
    "soundness.restarts",
    "soundness.max_iters",
    "soundness.samples",
    "soundness.max_n",
    "scan.max_n",
    "scan.threshold_n",
    "fixed_point.samples",
    "embed.abelian_samples",
    "seed",
];

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .or_else(|_| invalid(format!("bad value {value:?} for {key}")))
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "extent.q" => self.extent.q = num(key, value)?,
            "extent.restarts" => self.extent.restarts = num(key, value)?,
            "extent.max_iters" => self.extent.max_iters = num(key, value)?,
            "extent.step_tolerance" => self.extent.step_tolerance = num(key, value)?,
            "soundness.restarts" => self.soundness_restarts = num(key, value)?,
            "soundness.max_iters" => self.soundness_max_iters = num(key, value)?,
            "soundness.samples" => self.soundness_samples = num(key, value)?,
            "soundness.max_n" => self.soundness_max_n = num(key, value)?,
            "scan.max_n" => self.scan_max_n = num(key, value)?,
            "scan.threshold_n" => self.threshold_n = num(key, value)?,
            "fixed_point.samples" => self.fixed_point_samples = num(key, value)?,
            "embed.abelian_samples" => self.abelian_samples = num(key, value)?,
            "seed" => self.extent.seed = num(key, value)?,
            _ => return invalid(format!("unknown config key {key:?}; known keys: {}", KEYS.join(", "))),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return invalid(format!("line {}: expected key = value", lineno + 1));
            };
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.extent.validate()?;
        if self.soundness_restarts == 0 || self.soundness_max_iters == 0 {
            return invalid("soundness budgets must be positive");
        }
        if self.soundness_max_n < 3 {
            return invalid("soundness.max_n must be at least 3");
        }
        if self.threshold_n < 3 || self.threshold_n > self.scan_max_n {
            return invalid("need 3 <= scan.threshold_n <= scan.max_n");
        }
        if self.fixed_point_samples == 0 {
            return invalid("fixed_point.samples must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let cfg = Config::parse("# budgets\nextent.restarts = 7\n\nscan.max_n=120 # shorter\n").unwrap();
        assert_eq!(cfg.extent.restarts, 7);
        assert_eq!(cfg.scan_max_n, 120);
        assert_eq!(cfg.threshold_n, 61);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("nonsense").is_err());
        assert!(Config::parse("extent.q = five").is_err());
        assert!(Config::parse("unknown.key = 1").is_err());
        assert!(Config::parse("extent.restarts = 0").is_err());
        assert!(Config::parse("scan.threshold_n = 400").is_err());
    }
}
