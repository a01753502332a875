//! Truncations of the weighted shift `(a_i) ↦ (0, a_2/1, 0, a_4/2, 0, …)`.
//!
//! The operator on ℓ² has non-closed range. Its `2n × 2n` truncation keeps
//! rank `n` but its smallest nonzero singular value is `1/n`, so `‖T_n†‖₂ = n`
//! grows without bound.

use serde::Serialize;

use crate::matrix::{c64, ComplexMatrix};
use crate::spectral::{pinv, spectral_norm, svd};
use crate::tolerance::ToleranceConfig;

/// `2n × 2n` with `(T x)_{2j} = x_{2j} / j` (1-based), zero elsewhere.
pub fn truncated_shift(n: usize) -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(2 * n, 2 * n);
    for j in 1..=n {
        t.set(2 * j - 1, 2 * j - 1, c64(1.0 / j as f64, 0.0));
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftRow {
    pub n: usize,
    pub min_nonzero_sigma: f64,
    pub rank: usize,
    pub pinv_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedShiftReport {
    pub n: usize,
    pub singular_values: Vec<f64>,
    pub min_nonzero_sigma: f64,
    pub rank: usize,
    pub pinv_norm: f64,
    /// One row per truncation size `1..=n`.
    pub table: Vec<ShiftRow>,
}

fn row(n: usize, tol: &ToleranceConfig) -> (ShiftRow, Vec<f64>) {
    let t = truncated_shift(n);
    let dec = svd(&t).expect("n >= 1");
    let rank = dec.rank(tol);
    let min = if rank == 0 { 0.0 } else { dec.singular_values[rank - 1] };
    let pinv_norm = spectral_norm(&pinv(&t, tol));
    (ShiftRow { n, min_nonzero_sigma: min, rank, pinv_norm }, dec.singular_values)
}

/// Panics when `n == 0`.
pub fn truncated_shift_demo(n: usize, tol: &ToleranceConfig) -> TruncatedShiftReport {
    assert!(n >= 1, "truncation size must be positive");
    let table: Vec<ShiftRow> = (1..=n).map(|i| row(i, tol).0).collect();
    let (last, singular_values) = row(n, tol);
    TruncatedShiftReport {
        n,
        singular_values,
        min_nonzero_sigma: last.min_nonzero_sigma,
        rank: last.rank,
        pinv_norm: last.pinv_norm,
        table,
    }
}
