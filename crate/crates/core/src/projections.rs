//! Range projections and the tolerance-based range decisions built on them.
//!
//! For `A: ℂⁿ → ℂᵐ` of numerical rank `r` with thin SVD `U Σ V*`:
//! `P_A = U_r U_r*` projects onto `R(A)`, `P_{A*} = V_r V_r*` onto `R(A*)`,
//! `N_A = I − P_{A*}` onto `N(A)` and `N_{A*} = I − P_A` onto `N(A*)`.

use serde::{Deserialize, Serialize};

use crate::error::{dims, Result};
use crate::matrix::ComplexMatrix;
use crate::spectral::{complement, outer_projection, svd};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone)]
pub struct ProjectionQuad {
    /// Onto `R(A)`, `m × m`.
    pub p_a: ComplexMatrix,
    /// Onto `R(A*)`, `n × n`.
    pub p_astar: ComplexMatrix,
    /// `I − P_{A*}`, onto `N(A)`.
    pub n_a: ComplexMatrix,
    /// `I − P_A`, onto `N(A*)`.
    pub n_astar: ComplexMatrix,
    pub rank: usize,
}

pub fn projection_quad(a: &ComplexMatrix, tol: &ToleranceConfig) -> ProjectionQuad {
    let (m, n) = a.shape();
    let (p_a, p_astar, rank) = match svd(a) {
        Ok(dec) => {
            let r = dec.rank(tol);
            (outer_projection(&dec.u_r(r)), outer_projection(&dec.v_r(r)), r)
        }
        Err(_) => (ComplexMatrix::zeros(m, m), ComplexMatrix::zeros(n, n), 0),
    };
    ProjectionQuad { n_a: complement(&p_astar), n_astar: complement(&p_a), p_a, p_astar, rank }
}

/// Projection onto `R(A)` alone.
pub fn range_projection(a: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    projection_quad(a, tol).p_a
}

/// Projection onto `N(A)`.
pub fn kernel_projection(a: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    projection_quad(a, tol).n_a
}

pub fn numerical_rank(a: &ComplexMatrix, tol: &ToleranceConfig) -> usize {
    svd(a).map_or(0, |d| d.rank(tol))
}

/// Ranks reported next to a residual-based range decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankData {
    /// Rank of the operator whose range is the container.
    pub rank_target: usize,
    /// Rank of the operator whose range is tested.
    pub rank_subject: usize,
    /// Rank of the two placed side by side.
    pub rank_joint: usize,
}

impl RankData {
    /// Whether the rank comparison agrees with an inclusion claim.
    pub fn inclusion_by_rank(&self) -> bool {
        self.rank_joint == self.rank_target
    }
}

/// Outcome of a claim such as `R(C) ⊆ R(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeDecision {
    pub holds: bool,
    /// Relative residual; zero when the subject is zero.
    pub residual: f64,
    pub rank_data: RankData,
}

impl RangeDecision {
    /// `holds` and the rank comparison disagree.
    pub fn is_anomalous(&self) -> bool {
        self.holds != self.rank_data.inclusion_by_rank()
    }
}

/// Decides `R(C) ⊆ R(A)` from `‖(I − P_A)·C‖_F ≤ residual_rel·‖C‖_F`.
pub fn range_inclusion(c: &ComplexMatrix, a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<RangeDecision> {
    if c.rows() != a.rows() {
        return Err(dims("range_inclusion", format!("C has {} rows, A has {}", c.rows(), a.rows())));
    }
    let quad = projection_quad(a, tol);
    Ok(inclusion_with(c, a, &quad.p_a, quad.rank, tol))
}

/// [`range_inclusion`] with a precomputed `P_A`.
pub(crate) fn inclusion_with(
    c: &ComplexMatrix,
    a: &ComplexMatrix,
    p_a: &ComplexMatrix,
    rank_a: usize,
    tol: &ToleranceConfig,
) -> RangeDecision {
    let cn = c.frobenius_norm();
    let residual = if cn == 0.0 { 0.0 } else { (c - &(p_a * c)).frobenius_norm() / cn };
    let rank_data = RankData {
        rank_target: rank_a,
        rank_subject: numerical_rank(c, tol),
        rank_joint: numerical_rank(&a.hstack(c), tol),
    };
    RangeDecision { holds: residual <= tol.residual_rel, residual, rank_data }
}

/// Decides `R(A) = R(B)` as inclusion both ways; the residual is the larger of the two.
pub fn range_equal(a: &ComplexMatrix, b: &ComplexMatrix, tol: &ToleranceConfig) -> Result<RangeDecision> {
    let ab = range_inclusion(a, b, tol)?;
    let ba = range_inclusion(b, a, tol)?;
    Ok(RangeDecision {
        holds: ab.holds && ba.holds,
        residual: ab.residual.max(ba.residual),
        rank_data: RankData {
            rank_target: ab.rank_data.rank_target,
            rank_subject: ab.rank_data.rank_subject,
            rank_joint: ab.rank_data.rank_joint,
        },
    })
}

/// Orthonormal basis of `R(M)` at the configured rank cutoff.
pub fn range_basis(m: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    match svd(m) {
        Ok(dec) => dec.u_r(dec.rank(tol)),
        Err(_) => ComplexMatrix::zeros(m.rows(), 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::pinv;
    use crate::testutil::{close, random_matrix, random_rank, real};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn check_quad(a: &ComplexMatrix, q: &ProjectionQuad) {
        for p in [&q.p_a, &q.p_astar, &q.n_a, &q.n_astar] {
            assert!((&(p * p) - p).frobenius_norm() <= 1e-10);
            assert!(p.hermitian_defect() <= 1e-12);
        }
        let s = a.frobenius_norm();
        assert!((&(&q.p_a * a) - a).frobenius_norm() <= 1e-10 * s);
        assert!((&q.n_a * &a.adjoint()).frobenius_norm() <= 1e-10 * s);
    }

    #[test]
    fn quad_examples() {
        let i = ComplexMatrix::identity(3);
        let q = projection_quad(&i, &tol());
        assert!(close(&q.p_a, &i, 1e-14) && close(&q.p_astar, &i, 1e-14));
        assert!(q.n_a.frobenius_norm() < 1e-14 && q.n_astar.frobenius_norm() < 1e-14);

        let d = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let q = projection_quad(&d, &tol());
        assert!(close(&q.p_a, &d, 1e-14) && close(&q.p_astar, &d, 1e-14));
        let e2 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert!(close(&q.n_a, &e2, 1e-14) && close(&q.n_astar, &e2, 1e-14));

        // a single column (1,1): Gram–Schmidt gives u = (1,1)/√2
        let col = real(&[&[1.0], &[1.0]]);
        let q = projection_quad(&col, &tol());
        assert!(close(&q.p_a, &real(&[&[0.5, 0.5], &[0.5, 0.5]]), 1e-14));
        assert!(close(&q.p_astar, &ComplexMatrix::identity(1), 1e-14));
    }

    #[test]
    fn quad_invariants_and_pinv_route() {
        for seed in 0..15 {
            let a = random_rank(seed, 6, 4, 2 + (seed as usize % 3));
            let q = projection_quad(&a, &tol());
            check_quad(&a, &q);
            let ap = pinv(&a, &tol());
            assert!(close(&q.p_a, &(&a * &ap), 1e-10));
            assert!(close(&q.p_astar, &(&ap * &a), 1e-10));
            let defect = (&q.n_a * &q.p_astar).frobenius_norm();
            assert!(defect <= 1e-14, "{defect}");
        }
    }

    #[test]
    fn inclusion_examples() {
        let a = random_matrix(1, 3, 2);
        let d = range_inclusion(&a, &a, &tol()).unwrap();
        assert!(d.holds && d.residual < 1e-14);

        let a = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let c = real(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let d = range_inclusion(&c, &a, &tol()).unwrap();
        assert!(!d.holds && (d.residual - 1.0).abs() < 1e-14);
        assert_eq!(d.rank_data, RankData { rank_target: 1, rank_subject: 1, rank_joint: 2 });

        let c = ComplexMatrix::from_diagonal(&[0.3, 0.0]);
        let d = range_inclusion(&c, &a, &tol()).unwrap();
        assert!(d.holds && !d.is_anomalous());

        let d = range_inclusion(&ComplexMatrix::zeros(2, 5), &a, &tol()).unwrap();
        assert!(d.holds && d.residual == 0.0);
        assert!(range_inclusion(&ComplexMatrix::zeros(3, 1), &a, &tol()).is_err());
    }

    #[test]
    fn equality_examples() {
        let a = random_matrix(2, 4, 2);
        assert!(range_equal(&a, &a, &tol()).unwrap().holds);
        let d1 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let d2 = ComplexMatrix::from_diagonal(&[2.0, 0.0]);
        assert!(range_equal(&d1, &d2, &tol()).unwrap().holds);
        let e2 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert!(!range_equal(&d1, &e2, &tol()).unwrap().holds);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&ComplexMatrix::identity(3), &tol()), 3);
        assert_eq!(numerical_rank(&ComplexMatrix::zeros(3, 2), &tol()), 0);
        assert_eq!(numerical_rank(&real(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol()), 1);
    }

    #[test]
    fn rank_symmetry_and_column_invariance() {
        for seed in 0..10 {
            let a = random_rank(seed, 5, 7, 3);
            assert_eq!(numerical_rank(&a, &tol()), numerical_rank(&a.adjoint(), &tol()));
            let m = random_matrix(seed + 100, 7, 7);
            assert!(range_equal(&a, &(&a * &m), &tol()).unwrap().holds);
        }
    }

    #[test]
    fn basis_spans_range() {
        let a = random_rank(4, 6, 5, 2);
        let q = range_basis(&a, &tol());
        assert_eq!(q.cols(), 2);
        assert!(range_equal(&q, &a, &tol()).unwrap().holds);
        assert_eq!(range_basis(&ComplexMatrix::zeros(3, 3), &tol()).cols(), 0);
    }
}
