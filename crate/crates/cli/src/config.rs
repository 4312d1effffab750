use std::path::{Path, PathBuf};

use invgen_core::finite::DEFAULT_ELEMENT_BUDGET;
use invgen_core::lattice::DEFAULT_LATTICE_BUDGET;
use invgen_core::tarski::ClosureBudget;
use serde::Serialize;

use crate::error::CliError;

/// Budgets and settings read from a `key=value` file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub lattice_budget: usize,
    pub element_budget: u128,
    pub class_budget: usize,
    pub tuple_budget: u64,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            lattice_budget: DEFAULT_LATTICE_BUDGET,
            element_budget: DEFAULT_ELEMENT_BUDGET,
            class_budget: invgen_core::classes::MAX_CLASSES,
            tuple_budget: ClosureBudget::default().max_tuples,
            cache_dir: None,
            seed: 1,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| CliError::Usage(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("{key}: not a number: {v:?}"))
        }
        match key {
            "lattice_budget" => self.lattice_budget = num(key, value)?,
            "element_budget" => self.element_budget = num(key, value)?,
            "class_budget" => self.class_budget = num(key, value)?,
            "tuple_budget" => self.tuple_budget = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "cache_dir" => {
                self.cache_dir = (!value.is_empty()).then(|| PathBuf::from(value));
            }
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    pub fn closure_budget(&self) -> ClosureBudget {
        ClosureBudget {
            max_tuples: self.tuple_budget,
            max_generations: self.tuple_budget,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = Config::parse("# budgets\nlattice_budget = 100\nseed=7\ncache_dir = /tmp/c\n").unwrap();
        assert_eq!(cfg.lattice_budget, 100);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.cache_dir, Some(PathBuf::from("/tmp/c")));
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("seed = x").is_err());
        assert!(Config::parse("seed").is_err());
    }
}
