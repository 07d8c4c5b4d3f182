//! Run configuration shared by the command-line surface and the examples.
//!
//! All randomness flows from the single seed recorded here, and every
//! emitted report embeds the configuration it was produced with, so runs
//! are reproducible byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub random_trials: u32,
    pub seed: u64,
    pub enumeration_ceiling: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: vec![5, 7, 11, 13],
            random_trials: 500,
            seed: 1,
            enumeration_ceiling: crate::search::DEFAULT_CEILING,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("prime list entry {0} is not prime or exceeds 2^16")]
    BadPrime(u64),
    #[error("could not read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("could not parse config file: {0}")]
    Parse(#[from] serde_json::Error),
}

impl RunConfig {
    /// All primes valid and below 2^16.
    pub fn validate(&self) -> Result<(), ConfigError> {
        for &p in &self.primes {
            if p >= 1 << 16 || PrimeField::new(p).is_err() {
                return Err(ConfigError::BadPrime(p));
            }
        }
        Ok(())
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn composite_primes_are_rejected() {
        let config = RunConfig {
            primes: vec![5, 9],
            ..RunConfig::default()
        };
        assert!(config.validate().is_err());
    }

    #[test]
    fn config_roundtrip() {
        let config = RunConfig::default();
        let text = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
    }
}
