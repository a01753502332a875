//! The equation `AX = C`.
//!
//! `AX = C` is solvable exactly when `R(C) ⊆ R(A)`. The reduced solution
//! `D = A†C` is then the unique solution with `R(D) ⊆ N(A)^⊥`, every solution
//! is `D + N_A·W`, and `λ = ‖D‖₂²` certifies the majorization `CC* ≼ λ·AA*`.
//! Only that direction is claimed: majorization alone does not give a solution
//! in general modules, so nothing here infers solvability from it.

use serde::{Deserialize, Serialize};

use crate::error::{dims, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::projections::{projection_quad, range_equal, RangeDecision};
use crate::spectral::{min_eigenvalue, pinv, psd_sqrt, spectral_norm};
use crate::tolerance::ToleranceConfig;

/// Relative slack and negativity allowance of the majorization certificate.
pub const MAJORIZATION_SLACK: f64 = 1e-8;

/// Factor applied to `λ` when probing that the certificate is tight.
pub const TIGHTNESS_SHRINK: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct ReducedSolutionReport {
    #[serde(skip)]
    pub d: ComplexMatrix,
    /// `‖A·D − C‖_F / ‖C‖_F` (zero when `C = 0`).
    pub residual: f64,
    /// `‖D − P_{A*}·D‖_F`.
    pub reduced_certificate: f64,
    /// `‖D‖₂²`.
    pub lambda_factor: f64,
}

fn check_rows(context: &'static str, a: &ComplexMatrix, c: &ComplexMatrix) -> Result<()> {
    if a.rows() != c.rows() {
        return Err(dims(context, format!("A is {}x{}, C is {}x{}", a.rows(), a.cols(), c.rows(), c.cols())));
    }
    Ok(())
}

pub(crate) fn relative(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Reduced solution of `AX = C`, or [`Error::RangeNotContained`] when `R(C) ⊄ R(A)`.
pub fn reduced_solution(a: &ComplexMatrix, c: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ReducedSolutionReport> {
    check_rows("reduced_solution", a, c)?;
    let quad = projection_quad(a, tol);
    let inclusion = crate::projections::inclusion_with(c, a, &quad.p_a, quad.rank, tol);
    if !inclusion.holds {
        return Err(Error::RangeNotContained { residual: inclusion.residual });
    }
    let d = &pinv(a, tol) * c;
    let residual = relative((&(a * &d) - c).frobenius_norm(), c.frobenius_norm());
    let reduced_certificate = (&d - &(&quad.p_astar * &d)).frobenius_norm();
    let lambda_factor = spectral_norm(&d).powi(2);
    Ok(ReducedSolutionReport { d, residual, reduced_certificate, lambda_factor })
}

/// `X = D + N_A·W`, a member of the general solution of `AX = C`.
pub fn general_solution(
    a: &ComplexMatrix,
    report: &ReducedSolutionReport,
    w: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    if w.shape() != report.d.shape() {
        return Err(dims("general_solution", format!("W must be {}x{}", report.d.rows(), report.d.cols())));
    }
    Ok(&report.d + &(&projection_quad(a, tol).n_a * w))
}

/// Result of testing `λ·G − CC* ≽ 0` numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MajorizationProbe {
    pub lambda: f64,
    pub min_eigenvalue: f64,
    /// `max(λ‖G‖₂, ‖CC*‖₂)`.
    pub scale: f64,
    /// `min_eigenvalue ≥ −1e-8·scale`.
    pub holds: bool,
}

/// Probes `CC* ≼ λ·G` for a Gram-type `G` (`AA*`, or `AA* + BB*`).
pub fn majorization_probe(gram: &ComplexMatrix, c: &ComplexMatrix, lambda: f64) -> MajorizationProbe {
    let cc = c * &c.adjoint();
    let m = &gram.scale(lambda) - &cc;
    let min_eig = min_eigenvalue(&m);
    let scale = (lambda * spectral_norm(gram)).max(spectral_norm(&cc));
    MajorizationProbe { lambda, min_eigenvalue: min_eig, scale, holds: min_eig >= -MAJORIZATION_SLACK * scale }
}

/// The Douglas factor `λ = ‖A†C‖₂²` of a solvable `AX = C`, verified by
/// `CC* ≼ λ(1 + 1e-8)·AA*`. `None` when `R(C) ⊄ R(A)` or verification fails.
pub fn douglas_factor(a: &ComplexMatrix, c: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Option<f64>> {
    let report = match reduced_solution(a, c, tol) {
        Ok(r) => r,
        Err(Error::RangeNotContained { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let lambda = report.lambda_factor;
    let probe = majorization_probe(&(a * &a.adjoint()), c, lambda * (1.0 + MAJORIZATION_SLACK));
    Ok(probe.holds.then_some(lambda))
}

/// Solves `AX = C` under the hypothesis `CC* = λ·AA*` with `λ > 0`.
pub fn solve_scaled_equality(
    a: &ComplexMatrix,
    c: &ComplexMatrix,
    lambda: f64,
    tol: &ToleranceConfig,
) -> Result<ReducedSolutionReport> {
    check_rows("solve_scaled_equality", a, c)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::HypothesisViolated { hypothesis: "λ > 0".into(), residual: lambda });
    }
    let aa = a * &a.adjoint();
    let gap = (&(c * &c.adjoint()) - &aa.scale(lambda)).frobenius_norm();
    let bound = tol.residual_rel * aa.frobenius_norm() * lambda;
    if gap > bound {
        return Err(Error::HypothesisViolated {
            hypothesis: "CC* = λAA*".into(),
            residual: relative(gap, aa.frobenius_norm() * lambda),
        });
    }
    let equal = range_equal(a, c, tol)?;
    if !equal.holds {
        // only reachable when the hypothesis passed within tolerance but the ranges
        // differ by components below it
        return Err(Error::RangeNotContained { residual: equal.residual });
    }
    reduced_solution(a, c, tol)
}

/// Checks `R(T) = R(|T*|)` with `|T*| = (TT*)^{1/2}`. Holds for every `T`.
pub fn polar_range_check(t: &ComplexMatrix, tol: &ToleranceConfig) -> Result<RangeDecision> {
    let abs_tstar = psd_sqrt(&(t * &t.adjoint()).hermitian_part())?;
    range_equal(t, &abs_tstar, tol)
}
