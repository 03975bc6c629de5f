use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};

/// Environment variable overriding [`RunConfig::enumeration_bound`].
pub const BOUND_ENV: &str = "HULLKIT_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Bounds and knobs shared by every analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest semigroup whose translations are enumerated.
    pub enumeration_bound: usize,
    /// Largest carrier for which all of `T_A` is scanned.
    pub exhaustive_map_bound: usize,
    /// Cap on the number of translations or bi-translations materialised.
    pub max_results: usize,
    /// Largest semigroup order for which a dense multiplication table is built.
    pub max_table_order: usize,
    /// Largest number of maps scanned when filtering `T_A`.
    pub max_map_scan: usize,
    pub workers: usize,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enumeration_bound: 64,
            exhaustive_map_bound: 8,
            max_results: 2_000_000,
            max_table_order: 4096,
            max_map_scan: 20_000_000,
            workers: 1,
            format: OutputFormat::Text,
            seed: 0x5eed,
        }
    }
}

impl RunConfig {
    /// Default configuration with `HULLKIT_BOUND` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Ok(raw) = std::env::var(BOUND_ENV) {
            cfg.enumeration_bound = raw.trim().parse().map_err(|_| HullError::Parse {
                location: BOUND_ENV.into(),
                message: format!("expected a positive integer, got `{raw}`"),
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("enumeration_bound", self.enumeration_bound),
            ("exhaustive_map_bound", self.exhaustive_map_bound),
            ("max_results", self.max_results),
            ("max_table_order", self.max_table_order),
            ("max_map_scan", self.max_map_scan),
            ("workers", self.workers),
        ];
        for (name, v) in fields {
            if v == 0 {
                return Err(HullError::Precondition(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Whether `T_A` on a carrier of `n` points may be scanned exhaustively.
    pub fn check_map_scan(&self, n: usize) -> Result<usize> {
        if n > self.exhaustive_map_bound {
            return Err(HullError::size("carrier size for a T_A scan", n, self.exhaustive_map_bound));
        }
        let total = checked_pow(n, n).unwrap_or(usize::MAX);
        if total > self.max_map_scan {
            return Err(HullError::size("number of maps in T_A", total, self.max_map_scan));
        }
        Ok(total)
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
