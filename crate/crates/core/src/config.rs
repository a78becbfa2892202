use std::path::PathBuf;

use serde::Serialize;

use crate::arith::factor_fp::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::number_field::DEFAULT_PRECISION;

/// Smallest accepted starting precision for Hensel lifts.
pub const MIN_PRECISION_START: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
    Dot,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub precision_start: u32,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            precision_start: DEFAULT_PRECISION,
            output: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn new(seed: u64, precision_start: u32, output: Option<PathBuf>, format: Format) -> Result<Self> {
        if precision_start < MIN_PRECISION_START {
            return Err(Error::InvalidInput(format!(
                "precision start {precision_start} is below the minimum {MIN_PRECISION_START}"
            )));
        }
        Ok(RunConfig {
            seed,
            precision_start,
            output,
            format,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_floor() {
        assert_eq!(RunConfig::default().precision_start, 8);
        assert!(RunConfig::new(1, 3, None, Format::Json).is_err());
        assert!(RunConfig::new(1, 4, None, Format::Text).is_ok());
    }
}
