use serde::Serialize;

use crate::symexpr::ZeroTestConfig;

/// Sampling and tolerance settings shared by every analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub samples: usize,
    /// Absolute zero-test tolerance.
    pub tol: f64,
    /// Relative singular-value threshold for ranks and kernels.
    pub rank_tol: f64,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        let z = ZeroTestConfig::default();
        AnalysisConfig { samples: z.samples, tol: z.tol, rank_tol: 1e-10, seed: z.seed }
    }
}

impl AnalysisConfig {
    pub fn zero(&self) -> ZeroTestConfig {
        ZeroTestConfig { samples: self.samples, tol: self.tol, seed: self.seed, ..ZeroTestConfig::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        self.zero().validate()?;
        if !(self.rank_tol > 0.0 && self.rank_tol < 1.0) {
            return Err(format!("rank tolerance must lie in (0, 1), got {}", self.rank_tol));
        }
        Ok(())
    }
}
