use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and budgets shared by all engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Target relative accuracy of every engine.
    pub rel_tol: f64,
    /// Term budget for series, and factor budget for products.
    pub max_terms: usize,
    /// Initial quadrature node count.
    pub quad_nodes: usize,
    /// Hard cap on quadrature nodes.
    pub max_quad_nodes: usize,
    /// Factors closer than this to zero are ill-conditioned.
    pub ill_cond_guard: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            rel_tol: 1e-12,
            max_terms: 200_000,
            quad_nodes: 64,
            max_quad_nodes: 4096,
            ill_cond_guard: 1e-6,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig("rel_tol must be positive".into()));
        }
        if self.max_terms < 16 {
            return Err(Error::InvalidConfig("max_terms must be at least 16".into()));
        }
        if self.quad_nodes < 32 || !self.quad_nodes.is_power_of_two() {
            return Err(Error::InvalidConfig(
                "quad_nodes must be a power of two >= 32".into(),
            ));
        }
        if self.max_quad_nodes < self.quad_nodes {
            return Err(Error::InvalidConfig("max_quad_nodes below quad_nodes".into()));
        }
        if !(self.ill_cond_guard > 0.0 && self.ill_cond_guard <= 1e-4) {
            return Err(Error::InvalidConfig("ill_cond_guard must lie in (0, 1e-4]".into()));
        }
        Ok(())
    }

    /// Same configuration with both term and node budgets doubled.
    pub fn doubled_budget(&self) -> Self {
        EvalConfig {
            max_terms: self.max_terms * 2,
            quad_nodes: self.quad_nodes * 2,
            max_quad_nodes: self.max_quad_nodes * 2,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        EvalConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        let bad = [
            EvalConfig { rel_tol: 0.0, ..Default::default() },
            EvalConfig { max_terms: 8, ..Default::default() },
            EvalConfig { quad_nodes: 48, ..Default::default() },
            EvalConfig { ill_cond_guard: 1e-3, ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
