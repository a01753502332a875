use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two knobs behind every numerical decision.
///
/// `rank_rel` scales the singular-value cutoff `σ_max · rank_rel · max(rows, cols)`;
/// `residual_rel` is the relative residual under which a range inclusion or an
/// equation counts as satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub rank_rel: f64,
    pub residual_rel: f64,
}

impl ToleranceConfig {
    pub const DEFAULT_RANK_REL: f64 = 1e-10;
    pub const DEFAULT_RESIDUAL_REL: f64 = 1e-8;

    pub fn new(rank_rel: f64, residual_rel: f64) -> Result<Self> {
        for (name, v) in [("rank_rel", rank_rel), ("residual_rel", residual_rel)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(Self { rank_rel, residual_rel })
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { rank_rel: Self::DEFAULT_RANK_REL, residual_rel: Self::DEFAULT_RESIDUAL_REL }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let t = ToleranceConfig::default();
        assert_eq!(t.rank_rel, 1e-10);
        assert_eq!(t.residual_rel, 1e-8);
        assert_eq!(ToleranceConfig::new(1e-10, 1e-8).unwrap(), t);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ToleranceConfig::new(0.0, 1e-8).is_err());
        assert!(ToleranceConfig::new(1e-10, 1.0).is_err());
        assert!(ToleranceConfig::new(f64::NAN, 1e-8).is_err());
        assert!(ToleranceConfig::new(-1e-3, 1e-8).is_err());
    }
}
