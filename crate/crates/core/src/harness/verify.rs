//! Independent certificates for claimed solutions.
//!
//! Every check is recomputed from the operators and the solution alone; nothing
//! produced by a solver is trusted.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::congruence::{congruence_apply, diagnose_congruence, range_intersection};
use crate::douglas::{majorization_probe, relative, MAJORIZATION_SLACK};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::projections::{projection_quad, range_inclusion, RangeDecision};
use crate::spectral::{min_eigenvalue, spectral_norm};
use crate::sylvester::{diagnose_ax_yb, ORTHOGONALITY_REL};
use crate::tolerance::ToleranceConfig;

pub type Operators = BTreeMap<String, ComplexMatrix>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationTag {
    Douglas,
    Sylvester,
    Orthogonal,
    Congruence,
    CongruenceCz,
}

impl EquationTag {
    pub const ALL: [EquationTag; 5] =
        [EquationTag::Douglas, EquationTag::Sylvester, EquationTag::Orthogonal, EquationTag::Congruence, EquationTag::CongruenceCz];

    pub fn name(self) -> &'static str {
        match self {
            EquationTag::Douglas => "douglas",
            EquationTag::Sylvester => "sylvester",
            EquationTag::Orthogonal => "orthogonal",
            EquationTag::Congruence => "congruence",
            EquationTag::CongruenceCz => "congruence-cz",
        }
    }
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquationTag::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| Error::UnknownEquationTag(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// Passes when `value ≤ threshold`.
    AtMost,
    /// Passes when `value > threshold`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedDecision {
    pub name: String,
    pub decision: RangeDecision,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub equation: EquationTag,
    pub residuals: Vec<ResidualCheck>,
    pub decisions: Vec<NamedDecision>,
    pub pass: bool,
}

impl Certificate {
    fn new(equation: EquationTag) -> Self {
        Self { equation, residuals: Vec::new(), decisions: Vec::new(), pass: false }
    }

    fn at_most(&mut self, name: &str, value: f64, threshold: f64) {
        self.residuals.push(ResidualCheck { name: name.into(), value, threshold, bound: Bound::AtMost, pass: value <= threshold });
    }

    fn above(&mut self, name: &str, value: f64, threshold: f64) {
        self.residuals.push(ResidualCheck { name: name.into(), value, threshold, bound: Bound::Above, pass: value > threshold });
    }

    fn decide(&mut self, name: &str, decision: RangeDecision) {
        self.decisions.push(NamedDecision { name: name.into(), decision });
    }

    fn finish(mut self) -> Self {
        self.pass = self.residuals.iter().all(|r| r.pass) && self.decisions.iter().all(|d| d.decision.holds);
        self
    }

    pub fn residual(&self, name: &str) -> Option<&ResidualCheck> {
        self.residuals.iter().find(|r| r.name == name)
    }

    pub fn decision(&self, name: &str) -> Option<&RangeDecision> {
        self.decisions.iter().find(|d| d.name == name).map(|d| &d.decision)
    }
}

fn get<'a>(set: &'a Operators, name: &str, role: &str) -> Result<&'a ComplexMatrix> {
    set.get(name).ok_or_else(|| Error::Shape(format!("missing {role} `{name}`")))
}

fn expect_shape(name: &str, m: &ComplexMatrix, shape: (usize, usize)) -> Result<()> {
    if m.shape() != shape {
        return Err(Error::Shape(format!("`{name}` is {}x{}, expected {}x{}", m.rows(), m.cols(), shape.0, shape.1)));
    }
    Ok(())
}

/// `max(0, −λ_min(M)) / ‖M‖₂`, zero for `M = 0`.
fn psd_defect(m: &ComplexMatrix) -> f64 {
    relative((-min_eigenvalue(m)).max(0.0), spectral_norm(m))
}

/// Recomputes the residual and side conditions of `tag` for a claimed solution.
///
/// Operators are named `A`, `B`, `C`; solutions `X`, `Y` and, for the CZ
/// equation, `Z`. A `douglas` certificate also asks for reducedness
/// `P_{A*}·X = X`, so it certifies the reduced solution specifically.
pub fn verify(tag: &str, operators: &Operators, solution: &Operators, tol: &ToleranceConfig) -> Result<Certificate> {
    let tag: EquationTag = tag.parse()?;
    let mut cert = Certificate::new(tag);
    let a = get(operators, "A", "operator")?;
    let x = get(solution, "X", "solution")?;
    match tag {
        EquationTag::Douglas => {
            let c = get(operators, "C", "operator")?;
            expect_shape("X", x, (a.cols(), c.cols()))?;
            cert.at_most("residual", relative((&(a * x) - c).frobenius_norm(), c.frobenius_norm()), tol.residual_rel);
            let p = projection_quad(a, tol).p_astar;
            cert.at_most("reducedness", relative((x - &(&p * x)).frobenius_norm(), x.frobenius_norm()), 1e-10);
            let lambda = spectral_norm(x).powi(2);
            let probe = majorization_probe(&(a * &a.adjoint()), c, lambda * (1.0 + MAJORIZATION_SLACK));
            cert.at_most("majorization", relative((-probe.min_eigenvalue).max(0.0), probe.scale), MAJORIZATION_SLACK);
            cert.decide("R(C) ⊆ R(A)", range_inclusion(c, a, tol)?);
        }
        EquationTag::Sylvester => {
            let b = get(operators, "B", "operator")?;
            let c = get(operators, "C", "operator")?;
            let y = get(solution, "Y", "solution")?;
            expect_shape("X", x, (a.cols(), b.cols()))?;
            expect_shape("Y", y, (a.rows(), b.rows()))?;
            let r = (&(&(a * x) + &(y * b)) - c).frobenius_norm();
            cert.at_most("residual", relative(r, c.frobenius_norm()), tol.residual_rel);
            let d = diagnose_ax_yb(a, b, c, tol)?;
            cert.at_most("classical_residual", d.classical_relative, tol.residual_rel);
            cert.decide("R(C·N_B) ⊆ R(A)", d.cond_range_cnb);
            cert.decide("R(P_{B*}·C*) ⊆ R(B*)", d.cond_range_pbc);
        }
        EquationTag::Orthogonal => {
            let b = get(operators, "B", "operator")?;
            let c = get(operators, "C", "operator")?;
            let y = get(solution, "Y", "solution")?;
            expect_shape("X", x, (a.cols(), c.cols()))?;
            expect_shape("Y", y, (b.cols(), c.cols()))?;
            let r = (&(&(a * x) + &(b * y)) - c).frobenius_norm();
            cert.at_most("residual", relative(r, c.frobenius_norm()), tol.residual_rel);
            let orth = relative((&a.adjoint() * b).frobenius_norm(), a.frobenius_norm() * b.frobenius_norm());
            cert.at_most("orthogonality", orth, ORTHOGONALITY_REL);
            let lambda = spectral_norm(&x.vstack(y)).powi(2);
            let gram = &(a * &a.adjoint()) + &(b * &b.adjoint());
            let probe = majorization_probe(&gram, c, lambda * (1.0 + MAJORIZATION_SLACK));
            cert.at_most("majorization", relative((-probe.min_eigenvalue).max(0.0), probe.scale), MAJORIZATION_SLACK);
            cert.decide("R(C) ⊆ R(A) + R(B)", range_inclusion(c, &a.hstack(b), tol)?);
        }
        EquationTag::Congruence => {
            let b = get(operators, "B", "operator")?;
            let c = get(operators, "C", "operator")?;
            let y = get(solution, "Y", "solution")?;
            expect_shape("X", x, (a.cols(), a.cols()))?;
            expect_shape("Y", y, (b.cols(), b.cols()))?;
            let r = (&congruence_apply(a, b, x, y) - c).frobenius_norm();
            cert.at_most("residual", relative(r, c.frobenius_norm()), tol.residual_rel);
            let d = diagnose_congruence(a, b, c, tol)?;
            cert.at_most("B*·C*·P_A", d.hyp_cstar_pa_relative, tol.residual_rel);
            cert.decide("R(C) ⊆ R(B)", d.hyp_c_in_b);
            cert.decide("R(C*) ⊆ R(A)", d.hyp_cstar_in_a);
            cert.decide("R(C·N_{B*}) ⊆ R(A)", d.cond_cnbstar_in_a);
            cert.decide("R(C*·N_{A*}) ⊆ R(B)", d.cond_cstar_nastar_in_b);
        }
        EquationTag::CongruenceCz => {
            let b = get(operators, "B", "operator")?;
            let c = get(operators, "C", "operator")?;
            let y = get(solution, "Y", "solution")?;
            let z = get(solution, "Z", "solution")?;
            expect_shape("X", x, (a.cols(), a.cols()))?;
            expect_shape("Y", y, (b.cols(), b.cols()))?;
            expect_shape("Z", z, (c.cols(), a.rows()))?;
            let m = congruence_apply(a, b, x, y);
            cert.at_most("residual", relative((&m - &(c * z)).frobenius_norm(), m.frobenius_norm()), tol.residual_rel);
            cert.at_most("hermitian_x", relative(x.hermitian_defect(), x.frobenius_norm()), 1e-10);
            cert.at_most("hermitian_y", relative(y.hermitian_defect(), y.frobenius_norm()), 1e-10);
            cert.at_most("psd_x", psd_defect(&x.hermitian_part()), 1e-10);
            cert.at_most("psd_y", psd_defect(&y.hermitian_part()), 1e-10);
            let scale = a.frobenius_norm() + b.frobenius_norm() + c.frobenius_norm();
            cert.above("norm_x", x.frobenius_norm(), 1e-10 * scale);
            cert.above("norm_y", y.frobenius_norm(), 1e-10 * scale);
            cert.above("norm_z", z.frobenius_norm(), 1e-10 * scale);
            let inter = range_intersection(a, b, tol)?;
            cert.decide("R(A) ∩ R(B) ⊆ R(C)", range_inclusion(&inter.intersection_basis, c, tol)?);
        }
    }
    Ok(cert.finish())
}
