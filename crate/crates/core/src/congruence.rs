//! Congruence equations `AXA* + BYB* = C`, `= 0` and `= CZ`, and the range
//! intersection `R(A) ∩ R(B)` read off the kernel projection of `[A −B]`.
//!
//! Shapes: `A: m×p`, `B: m×q`, so `X: p×p`, `Y: q×q`.

use serde::Serialize;

use crate::douglas::relative;
use crate::error::{dims, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::projections::{inclusion_with, numerical_rank, projection_quad, range_inclusion, RangeDecision};
use crate::spectral::{complement, min_eigenvalue, outer_projection, pinv, psd_sqrt, svd};
use crate::tolerance::ToleranceConfig;

/// Absolute tolerance of the kernel-projection identities (`P` has norm ≤ 1).
pub const BLOCK_IDENTITY_TOL: f64 = 1e-10;

fn check_pair(context: &'static str, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.rows() != b.rows() {
        return Err(dims(context, format!("A has {} rows, B has {}", a.rows(), b.rows())));
    }
    Ok(())
}

fn check_c(context: &'static str, a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<()> {
    check_pair(context, a, b)?;
    if c.shape() != (a.rows(), a.rows()) {
        return Err(dims(context, format!("C must be {0}x{0}, got {1}x{2}", a.rows(), c.rows(), c.cols())));
    }
    Ok(())
}

/// `‖A‖²‖X‖ + ‖B‖²‖Y‖` in Frobenius norms.
pub fn congruence_scale(a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    a.frobenius_norm().powi(2) * x.frobenius_norm() + b.frobenius_norm().powi(2) * y.frobenius_norm()
}

/// `A·X·A* + B·Y·B*`.
pub fn congruence_apply(a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    &(&(a * x) * &a.adjoint()) + &(&(b * y) * &b.adjoint())
}

/// `x = A†·(B·V1·P_{A*} + V2·N_A)`, `y = (N_B·V3 − P_{B*}·V1·A*)·(B*)†`,
/// a solution of `AXA* + BYB* = 0` whenever the two range hypotheses hold.
/// Shapes: `V1: q×p`, `V2: m×p`, `V3: q×m`.
pub fn homogeneous_congruence(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    v1: &ComplexMatrix,
    v2: &ComplexMatrix,
    v3: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_pair("homogeneous_congruence", a, b)?;
    let (m, p) = a.shape();
    let q = b.cols();
    if v1.shape() != (q, p) || v2.shape() != (m, p) || v3.shape() != (q, m) {
        return Err(dims("homogeneous_congruence", format!("expected V1 {q}x{p}, V2 {m}x{p}, V3 {q}x{m}")));
    }
    let qa = projection_quad(a, tol);
    let qb = projection_quad(b, tol);
    let left = &(&(b * v1) * &qa.p_astar) + &(v2 * &qa.n_a);
    let d = inclusion_with(&left, a, &qa.p_a, qa.rank, tol);
    if !d.holds {
        return Err(Error::HypothesisViolated { hypothesis: "R(B·V1·P_{A*} + V2·N_A) ⊆ R(A)".into(), residual: d.residual });
    }
    let k = &(&qb.n_a * v3) - &(&(&qb.p_astar * v1) * &a.adjoint());
    let d = inclusion_with(&k.adjoint(), b, &qb.p_a, qb.rank, tol);
    if !d.holds {
        return Err(Error::HypothesisViolated { hypothesis: "R(V3*·N_B − A·V1*·P_{B*}) ⊆ R(B)".into(), residual: d.residual });
    }
    let x = &pinv(a, tol) * &left;
    let y = &k * &pinv(&b.adjoint(), tol);
    Ok((x, y))
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceDiagnosis {
    /// `R(C) ⊆ R(B)`.
    pub hyp_c_in_b: RangeDecision,
    /// `R(C*) ⊆ R(A)`.
    pub hyp_cstar_in_a: RangeDecision,
    /// `‖B*·C*·P_A‖_F`, zero when `R(C*·P_A) ⊆ N(B*)`.
    pub hyp_cstar_pa_in_nbstar: f64,
    /// The same relative to `‖B‖_F‖C‖_F`.
    pub hyp_cstar_pa_relative: f64,
    /// `R(C·N_{B*}) ⊆ R(A)`.
    pub cond_cnbstar_in_a: RangeDecision,
    /// `R(C*·N_{A*}) ⊆ R(B)`.
    pub cond_cstar_nastar_in_b: RangeDecision,
    pub hypotheses_hold: bool,
    pub solvable: bool,
}

pub fn diagnose_congruence(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, tol: &ToleranceConfig) -> Result<CongruenceDiagnosis> {
    check_c("diagnose_congruence", a, b, c)?;
    let qa = projection_quad(a, tol);
    let qb = projection_quad(b, tol);
    let cs = c.adjoint();
    let hyp_c_in_b = inclusion_with(c, b, &qb.p_a, qb.rank, tol);
    let hyp_cstar_in_a = inclusion_with(&cs, a, &qa.p_a, qa.rank, tol);
    let hyp_cstar_pa_in_nbstar = (&(&b.adjoint() * &cs) * &qa.p_a).frobenius_norm();
    let hyp_cstar_pa_relative = relative(hyp_cstar_pa_in_nbstar, b.frobenius_norm() * c.frobenius_norm());
    let cond_cnbstar_in_a = inclusion_with(&(c * &qb.n_astar), a, &qa.p_a, qa.rank, tol);
    let cond_cstar_nastar_in_b = inclusion_with(&(&cs * &qa.n_astar), b, &qb.p_a, qb.rank, tol);
    let hypotheses_hold = hyp_c_in_b.holds && hyp_cstar_in_a.holds && hyp_cstar_pa_relative <= tol.residual_rel;
    let solvable = cond_cnbstar_in_a.holds && cond_cstar_nastar_in_b.holds;
    Ok(CongruenceDiagnosis {
        hyp_c_in_b,
        hyp_cstar_in_a,
        hyp_cstar_pa_in_nbstar,
        hyp_cstar_pa_relative,
        cond_cnbstar_in_a,
        cond_cstar_nastar_in_b,
        hypotheses_hold,
        solvable,
    })
}

#[derive(Debug, Clone)]
pub struct CongruenceSolution {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    /// `A†·C·N_{B*}`, the reduced solution of `A·(XA*) = P_A·C·N_{B*}`.
    pub x_hat: ComplexMatrix,
    /// `B†·C*`, the reduced solution of `B·(Y*B*) = P_B·C*`.
    pub y_hat_star: ComplexMatrix,
    /// `‖AxA* + ByB* − C‖_F / ‖C‖_F`.
    pub residual: f64,
    pub diagnosis: CongruenceDiagnosis,
}

/// Solves `AXA* + BYB* = C` under the three range hypotheses.
pub fn solve_congruence(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, tol: &ToleranceConfig) -> Result<CongruenceSolution> {
    let diagnosis = diagnose_congruence(a, b, c, tol)?;
    for (name, d) in [("R(C) ⊆ R(B)", &diagnosis.hyp_c_in_b), ("R(C*) ⊆ R(A)", &diagnosis.hyp_cstar_in_a)] {
        if !d.holds {
            return Err(Error::HypothesisViolated { hypothesis: name.into(), residual: d.residual });
        }
    }
    if diagnosis.hyp_cstar_pa_relative > tol.residual_rel {
        return Err(Error::HypothesisViolated {
            hypothesis: "R(C*·P_A) ⊆ N(B*)".into(),
            residual: diagnosis.hyp_cstar_pa_relative,
        });
    }
    for (name, d) in [
        ("R(C·N_{B*}) ⊆ R(A)", &diagnosis.cond_cnbstar_in_a),
        ("R(C*·N_{A*}) ⊆ R(B)", &diagnosis.cond_cstar_nastar_in_b),
    ] {
        if !d.holds {
            return Err(Error::NotSolvable { condition: name.into(), residual: d.residual });
        }
    }
    let ap = pinv(a, tol);
    let bp = pinv(b, tol);
    let n_bstar = complement(&(b * &bp).hermitian_part());
    let x_hat = &(&ap * c) * &n_bstar;
    let x = &x_hat * &ap.adjoint();
    let y_hat_star = &bp * &c.adjoint();
    let y = (&y_hat_star * &bp.adjoint()).adjoint();
    let residual = relative((&congruence_apply(a, b, &x, &y) - c).frobenius_norm(), c.frobenius_norm());
    Ok(CongruenceSolution { x, y, x_hat, y_hat_star, residual, diagnosis })
}

#[derive(Debug, Clone, Serialize)]
pub struct NecessityReport {
    /// `‖AxA* + ByB* − C‖_F` relative to `max(‖C‖_F, congruence_scale)`.
    pub residual: f64,
    pub cond_cnbstar_in_a: RangeDecision,
    pub cond_cstar_nastar_in_b: RangeDecision,
    pub pass: bool,
}

/// Given a solution, confirms both range criteria hold (necessity direction).
pub fn solvability_necessity_check(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<NecessityReport> {
    check_c("solvability_necessity_check", a, b, c)?;
    if x.shape() != (a.cols(), a.cols()) || y.shape() != (b.cols(), b.cols()) {
        return Err(dims("solvability_necessity_check", format!("x must be {0}x{0}, y {1}x{1}", a.cols(), b.cols())));
    }
    let magnitude = c.frobenius_norm().max(congruence_scale(a, b, x, y));
    let residual = relative((&congruence_apply(a, b, x, y) - c).frobenius_norm(), magnitude);
    if residual > tol.residual_rel {
        return Err(Error::NotASolution { residual });
    }
    let d = diagnose_congruence(a, b, c, tol)?;
    Ok(NecessityReport {
        residual,
        pass: d.cond_cnbstar_in_a.holds && d.cond_cstar_nastar_in_b.holds,
        cond_cnbstar_in_a: d.cond_cnbstar_in_a,
        cond_cstar_nastar_in_b: d.cond_cstar_nastar_in_b,
    })
}

#[derive(Debug, Clone)]
pub struct KernelBlocks {
    /// `p×p`.
    pub x: ComplexMatrix,
    /// `q×p`.
    pub z: ComplexMatrix,
    /// `q×q`.
    pub y: ComplexMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    #[serde(skip)]
    pub p: ComplexMatrix,
    #[serde(skip)]
    pub p_blocks: KernelBlocks,
    #[serde(skip)]
    pub intersection_basis: ComplexMatrix,
    pub dim: usize,
    /// `rank A + rank B − rank [A B]`.
    pub dim_by_rank: usize,
    /// `‖(I − P_{N(S)})·P·P_{N(S)}‖_F` with `S = [A B]`.
    pub pn_s_invariant_residual: f64,
    /// `max(‖P² − P‖_F, ‖P − P*‖_F)`.
    pub projection_defect: f64,
    /// `‖[A −B]·P‖_F`.
    pub kernel_residual: f64,
    /// `max(‖X² + Z*Z − X‖_F, ‖ZZ* + Y² − Y‖_F)`.
    pub block_identity_residual: f64,
    /// `max(‖AX − BZ‖_F, ‖AZ* − BY‖_F)`.
    pub cross_residual: f64,
    /// `‖A‖_F + ‖B‖_F`.
    pub scale: f64,
    /// `R((AXA*)^{1/2}) ⊆ span(intersection_basis)`.
    pub sqrt_inclusion: RangeDecision,
}

impl IntersectionReport {
    pub fn dims_agree(&self) -> bool {
        self.dim == self.dim_by_rank
    }
}

/// `R(A) ∩ R(B)` via the projection `P` onto `N([A −B])` and its blocks.
pub fn range_intersection(a: &ComplexMatrix, b: &ComplexMatrix, tol: &ToleranceConfig) -> Result<IntersectionReport> {
    check_pair("range_intersection", a, b)?;
    let (p_dim, q_dim) = (a.cols(), b.cols());
    let t = a.hstack(&b.scale(-1.0));
    let t_svd = svd(&t)?;
    let p = complement(&outer_projection(&t_svd.v_r(t_svd.rank(tol))));
    let x = p.block(0, 0, p_dim, p_dim);
    let z = p.block(p_dim, 0, q_dim, p_dim);
    let y = p.block(p_dim, p_dim, q_dim, q_dim);

    let ax = a * &x;
    let azs = a * &z.adjoint();
    // [AX AZ*] is rounding noise when the intersection is trivial, so its
    // rank cutoff is anchored to the scale of T
    let w = svd(&ax.hstack(&azs))?;
    let intersection_basis = w.u_r(w.rank_against(tol, t_svd.sigma_max()));
    let dim = intersection_basis.cols();
    let s = a.hstack(b);
    let rank_s = numerical_rank(&s, tol);
    let dim_by_rank = (numerical_rank(a, tol) + numerical_rank(b, tol)).saturating_sub(rank_s);

    let n_s = complement(&projection_quad(&s, tol).p_astar);
    let pn_s_invariant_residual = (&(&complement(&n_s) * &p) * &n_s).frobenius_norm();
    let projection_defect = (&(&p * &p) - &p).frobenius_norm().max(p.hermitian_defect());
    let kernel_residual = (&t * &p).frobenius_norm();
    let xx = &(&(&x * &x) + &(&z.adjoint() * &z)) - &x;
    let yy = &(&(&z * &z.adjoint()) + &(&y * &y)) - &y;
    let block_identity_residual = xx.frobenius_norm().max(yy.frobenius_norm());
    let cross_residual = (&ax - &(b * &z)).frobenius_norm().max((&azs - &(b * &y)).frobenius_norm());

    let axa = (&ax * &a.adjoint()).hermitian_part();
    let t_norm = t_svd.sigma_max();
    let root = if axa.frobenius_norm() <= tol.rank_rel * t_norm * t_norm {
        ComplexMatrix::zeros(axa.rows(), axa.cols())
    } else {
        psd_sqrt(&axa)?
    };
    let basis_proj = &intersection_basis * &intersection_basis.adjoint();
    let sqrt_inclusion = inclusion_with(&root, &intersection_basis, &basis_proj, dim, tol);

    Ok(IntersectionReport {
        p,
        p_blocks: KernelBlocks { x, z, y },
        intersection_basis,
        dim,
        dim_by_rank,
        pn_s_invariant_residual,
        projection_defect,
        kernel_residual,
        block_identity_residual,
        cross_residual,
        scale: a.frobenius_norm() + b.frobenius_norm(),
        sqrt_inclusion,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CzReport {
    pub intersection: IntersectionReport,
    /// `R(A) ∩ R(B) ⊆ R(C)`.
    pub intersection_in_c: RangeDecision,
    /// `‖C·z − m‖_F / ‖m‖_F` with `m = AxA* + ByB*`.
    pub residual: f64,
    pub min_eig_x: f64,
    pub min_eig_y: f64,
    pub norm_x: f64,
    pub norm_y: f64,
    pub norm_z: f64,
}

#[derive(Debug, Clone)]
pub struct CzSolution {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    pub m: ComplexMatrix,
    pub report: CzReport,
}

/// Nonzero `X, Y ≽ 0` and `Z` with `AXA* + BYB* = CZ`, taken from the kernel
/// projection blocks; `C: m×r`, `Z: r×m`.
pub fn solve_congruence_cz(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, tol: &ToleranceConfig) -> Result<CzSolution> {
    check_pair("solve_congruence_cz", a, b)?;
    if c.rows() != a.rows() {
        return Err(dims("solve_congruence_cz", format!("C must have {} rows, got {}", a.rows(), c.rows())));
    }
    let intersection = range_intersection(a, b, tol)?;
    if intersection.dim == 0 {
        return Err(Error::EmptyIntersection);
    }
    let intersection_in_c = range_inclusion(&intersection.intersection_basis, c, tol)?;
    if !intersection_in_c.holds {
        return Err(Error::IntersectionNotInRangeC { residual: intersection_in_c.residual });
    }
    if intersection.pn_s_invariant_residual > tol.residual_rel {
        return Err(Error::HypothesisViolated {
            hypothesis: "P·N(S) ⊆ N(S)".into(),
            residual: intersection.pn_s_invariant_residual,
        });
    }
    let x = intersection.p_blocks.x.clone();
    let y = intersection.p_blocks.y.clone();
    let m = congruence_apply(a, b, &x, &y);
    let z = &pinv(c, tol) * &m;
    let residual = relative((&(c * &z) - &m).frobenius_norm(), m.frobenius_norm());
    let report = CzReport {
        min_eig_x: min_eigenvalue(&x),
        min_eig_y: min_eigenvalue(&y),
        norm_x: x.frobenius_norm(),
        norm_y: y.frobenius_norm(),
        norm_z: z.frobenius_norm(),
        intersection,
        intersection_in_c,
        residual,
    };
    Ok(CzSolution { x, y, z, m, report })
}
