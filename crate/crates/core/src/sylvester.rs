//! The equations `AX + YB = C` and, for `A*B = 0`, `AX + BY = C`.
//!
//! Shapes: `A: m×p`, `B: q×n`, `C: m×n`, so `X: p×n` and `Y: m×q`.

use serde::Serialize;

use crate::douglas::{majorization_probe, relative, MajorizationProbe, MAJORIZATION_SLACK};
use crate::error::{dims, Error, Result};
use crate::harness::rng::InstanceRng;
use crate::matrix::ComplexMatrix;
use crate::projections::{inclusion_with, projection_quad, range_inclusion, ProjectionQuad, RangeDecision};
use crate::spectral::{pinv, spectral_norm};
use crate::tolerance::ToleranceConfig;

/// Tolerance on `‖A*B‖_F / (‖A‖_F‖B‖_F)` for the orthogonal-pair hypothesis.
pub const ORTHOGONALITY_REL: f64 = 1e-10;

/// Off-diagonal blocks of `P_{T*}` above this are reported as anomalous.
pub const OFF_BLOCK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct SylvesterDiagnosis {
    /// `R(C·N_B) ⊆ R(A)`.
    pub cond_range_cnb: RangeDecision,
    /// `R(P_{B*}·C*) ⊆ R(B*)`.
    pub cond_range_pbc: RangeDecision,
    /// `‖N_{A*}·C·N_B‖_F`.
    pub classical_residual: f64,
    /// `classical_residual / ‖C‖_F` (the absolute value when `C = 0`).
    pub classical_relative: f64,
    pub solvable: bool,
    /// The range conditions and the classical residual disagree at the configured tolerance.
    pub anomaly: bool,
}

fn check_shapes(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<()> {
    if c.rows() != a.rows() || c.cols() != b.cols() {
        return Err(dims(
            "AX + YB = C",
            format!("A {}x{}, B {}x{}, C {}x{}", a.rows(), a.cols(), b.rows(), b.cols(), c.rows(), c.cols()),
        ));
    }
    Ok(())
}

struct Parts {
    qa: ProjectionQuad,
    qb: ProjectionQuad,
}

impl Parts {
    fn new(a: &ComplexMatrix, b: &ComplexMatrix, tol: &ToleranceConfig) -> Self {
        Self { qa: projection_quad(a, tol), qb: projection_quad(b, tol) }
    }
}

fn diagnose_with(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, parts: &Parts, tol: &ToleranceConfig) -> SylvesterDiagnosis {
    let cnb = c * &parts.qb.n_a;
    let cond_range_cnb = inclusion_with(&cnb, a, &parts.qa.p_a, parts.qa.rank, tol);
    let bstar = b.adjoint();
    let pbc = &parts.qb.p_astar * &c.adjoint();
    let cond_range_pbc = inclusion_with(&pbc, &bstar, &parts.qb.p_astar, parts.qb.rank, tol);
    let classical_residual = (&parts.qa.n_astar * &cnb).frobenius_norm();
    let classical_relative = relative(classical_residual, c.frobenius_norm());
    let solvable = cond_range_cnb.holds && cond_range_pbc.holds;
    let anomaly = solvable != (classical_relative <= tol.residual_rel);
    SylvesterDiagnosis { cond_range_cnb, cond_range_pbc, classical_residual, classical_relative, solvable, anomaly }
}

pub fn diagnose_ax_yb(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, tol: &ToleranceConfig) -> Result<SylvesterDiagnosis> {
    check_shapes(a, b, c)?;
    Ok(diagnose_with(a, b, c, &Parts::new(a, b, tol), tol))
}

fn not_solvable(d: &SylvesterDiagnosis) -> Error {
    Error::NotSolvable { condition: "R(C·N_B) ⊆ R(A)".into(), residual: d.cond_range_cnb.residual }
}

/// `(A†·C·N_B, C·B†)`, the reduced particular pair.
pub fn particular_ax_yb(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_shapes(a, b, c)?;
    let parts = Parts::new(a, b, tol);
    let d = diagnose_with(a, b, c, &parts, tol);
    if !d.solvable {
        return Err(not_solvable(&d));
    }
    Ok(particular_with(a, b, c, &parts, tol))
}

fn particular_with(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, parts: &Parts, tol: &ToleranceConfig) -> (ComplexMatrix, ComplexMatrix) {
    (&(&pinv(a, tol) * c) * &parts.qb.n_a, c * &pinv(b, tol))
}

/// Free parameters of the homogeneous solution: `W1: p×n`, `W′: p×q`, `W4: m×q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterParams {
    pub w1: ComplexMatrix,
    pub w_prime: ComplexMatrix,
    pub w4: ComplexMatrix,
}

impl SylvesterParams {
    pub fn zeros(a: &ComplexMatrix, b: &ComplexMatrix) -> Self {
        let (m, p) = a.shape();
        let (q, n) = b.shape();
        Self { w1: ComplexMatrix::zeros(p, n), w_prime: ComplexMatrix::zeros(p, q), w4: ComplexMatrix::zeros(m, q) }
    }

    /// Gaussian complex parameters drawn in the order `W1`, `W′`, `W4`.
    pub fn seeded(a: &ComplexMatrix, b: &ComplexMatrix, seed: u64) -> Self {
        let (m, p) = a.shape();
        let (q, n) = b.shape();
        let mut rng = InstanceRng::new(seed);
        let w1 = rng.gaussian_matrix(p, n);
        let w_prime = rng.gaussian_matrix(p, q);
        let w4 = rng.gaussian_matrix(m, q);
        Self { w1, w_prime, w4 }
    }

    fn check(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
        let z = Self::zeros(a, b);
        if self.w1.shape() != z.w1.shape() || self.w_prime.shape() != z.w_prime.shape() || self.w4.shape() != z.w4.shape() {
            return Err(dims(
                "homogeneous parameters",
                format!("expected W1 {:?}, W' {:?}, W4 {:?}", z.w1.shape(), z.w_prime.shape(), z.w4.shape()),
            ));
        }
        Ok(())
    }
}

/// `x_h = N_A·W1 − P_{A*}·W′·B·P_{B*}`, `y_h = A·W′·P_B + W4·N_{B*}`; `A·x_h + y_h·B = 0`.
pub fn homogeneous_ax_yb(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    params: &SylvesterParams,
    tol: &ToleranceConfig,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    params.check(a, b)?;
    Ok(homogeneous_with(a, b, params, &Parts::new(a, b, tol)))
}

fn homogeneous_with(a: &ComplexMatrix, b: &ComplexMatrix, w: &SylvesterParams, parts: &Parts) -> (ComplexMatrix, ComplexMatrix) {
    let (qa, qb) = (&parts.qa, &parts.qb);
    let x = &(&qa.n_a * &w.w1) - &(&(&(&qa.p_astar * &w.w_prime) * b) * &qb.p_astar);
    let y = &(&(a * &w.w_prime) * &qb.p_a) + &(&w.w4 * &qb.n_astar);
    (x, y)
}

/// Natural magnitude of `A·X + Y·B` when its terms do not cancel.
pub fn pair_scale(a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    a.frobenius_norm() * x.frobenius_norm() + y.frobenius_norm() * b.frobenius_norm()
}

#[derive(Debug, Clone)]
pub struct SylvesterSolution {
    pub x_p: ComplexMatrix,
    pub y_p: ComplexMatrix,
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    /// `‖A·x + y·B − C‖_F / ‖C‖_F` (absolute when `C = 0`).
    pub residual: f64,
    pub params_used: SylvesterParams,
    pub diagnosis: SylvesterDiagnosis,
}

/// General solution `x = x_p + x_h`, `y = y_p + y_h`; zero parameters when `params` is `None`.
pub fn solve_ax_yb(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    params: Option<&SylvesterParams>,
    tol: &ToleranceConfig,
) -> Result<SylvesterSolution> {
    check_shapes(a, b, c)?;
    let params_used = params.cloned().unwrap_or_else(|| SylvesterParams::zeros(a, b));
    params_used.check(a, b)?;
    let parts = Parts::new(a, b, tol);
    let diagnosis = diagnose_with(a, b, c, &parts, tol);
    if !diagnosis.solvable {
        return Err(not_solvable(&diagnosis));
    }
    let (x_p, y_p) = particular_with(a, b, c, &parts, tol);
    let (x_h, y_h) = homogeneous_with(a, b, &params_used, &parts);
    let x = &x_p + &x_h;
    let y = &y_p + &y_h;
    let residual = relative((&(&(a * &x) + &(&y * b)) - c).frobenius_norm(), c.frobenius_norm());
    Ok(SylvesterSolution { x_p, y_p, x, y, residual, params_used, diagnosis })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompletenessReport {
    /// `‖P_{A*}·(x0 − x_p)·N_B‖_F`.
    pub x_witness: f64,
    /// `‖N_{A*}·(y0 − y_p)·P_B‖_F`.
    pub y_witness: f64,
    pub scale: f64,
    /// Both witnesses `≤ 1e-8·scale`.
    pub pass: bool,
}

/// Checks that a known solution `(x0, y0)` decomposes as particular plus homogeneous.
pub fn completeness_witness(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    x0: &ComplexMatrix,
    y0: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<CompletenessReport> {
    check_shapes(a, b, c)?;
    if x0.shape() != (a.cols(), b.cols()) || y0.shape() != (a.rows(), b.rows()) {
        return Err(dims("completeness_witness", format!("x0 must be {}x{}, y0 {}x{}", a.cols(), b.cols(), a.rows(), b.rows())));
    }
    let defect = (&(&(a * x0) + &(y0 * b)) - c).frobenius_norm();
    let magnitude = c.frobenius_norm().max(pair_scale(a, b, x0, y0));
    if defect > tol.residual_rel * magnitude {
        return Err(Error::NotASolution { residual: relative(defect, magnitude) });
    }
    let parts = Parts::new(a, b, tol);
    let (x_p, y_p) = particular_with(a, b, c, &parts, tol);
    let x_witness = (&(&parts.qa.p_astar * &(x0 - &x_p)) * &parts.qb.n_a).frobenius_norm();
    let y_witness = (&(&parts.qa.n_astar * &(y0 - &y_p)) * &parts.qb.p_a).frobenius_norm();
    let s = x0.frobenius_norm() + y0.frobenius_norm() + x_p.frobenius_norm() + y_p.frobenius_norm();
    let scale = if s > 0.0 { s } else { 1.0 };
    let pass = x_witness <= 1e-8 * scale && y_witness <= 1e-8 * scale;
    Ok(CompletenessReport { x_witness, y_witness, scale, pass })
}

#[derive(Debug, Clone)]
pub struct OrthogonalSolution {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    /// `‖[x; y]‖₂²`.
    pub lambda: f64,
    /// `‖A·x + B·y − C‖_F / ‖C‖_F`.
    pub residual: f64,
    pub inclusion: RangeDecision,
    /// `CC* ≼ λ(1 + 1e-8)(AA* + BB*)`.
    pub majorization: MajorizationProbe,
    /// `‖A*B‖_F / (‖A‖_F‖B‖_F)`.
    pub orthogonality: f64,
    /// Frobenius norm of the off-diagonal block of `P_{T*}`, `T = [A B]`.
    pub off_block: f64,
    pub off_block_anomaly: bool,
}

/// Solves `AX + BY = C` when `A*B = 0`.
pub fn solve_ax_by_orthogonal(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<OrthogonalSolution> {
    if a.rows() != b.rows() || a.rows() != c.rows() {
        return Err(dims("AX + BY = C", format!("A, B and C need equal row counts, got {}, {}, {}", a.rows(), b.rows(), c.rows())));
    }
    let orthogonality = relative((&a.adjoint() * b).frobenius_norm(), a.frobenius_norm() * b.frobenius_norm());
    if orthogonality > ORTHOGONALITY_REL {
        return Err(Error::HypothesisViolated { hypothesis: "A*B = 0".into(), residual: orthogonality });
    }
    let t = a.hstack(b);
    let inclusion = range_inclusion(c, &t, tol)?;
    if !inclusion.holds {
        return Err(Error::NotSolvable { condition: "R(C) ⊆ R(A) + R(B)".into(), residual: inclusion.residual });
    }
    let tp = pinv(&t, tol);
    let xy = &tp * c;
    let p = a.cols();
    let x = xy.row_range(0, p);
    let y = xy.row_range(p, b.cols());
    let lambda = spectral_norm(&xy).powi(2);
    let residual = relative((&(&(a * &x) + &(b * &y)) - c).frobenius_norm(), c.frobenius_norm());
    let gram = &(a * &a.adjoint()) + &(b * &b.adjoint());
    let majorization = majorization_probe(&gram, c, lambda * (1.0 + MAJORIZATION_SLACK));
    let pt = &tp * &t;
    let off_block = pt.block(0, p, p, b.cols()).frobenius_norm();
    Ok(OrthogonalSolution {
        x,
        y,
        lambda,
        residual,
        inclusion,
        majorization,
        orthogonality,
        off_block,
        off_block_anomaly: off_block > OFF_BLOCK_TOL,
    })
}
