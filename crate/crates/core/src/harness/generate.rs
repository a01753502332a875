//! Seeded instances with prescribed range relationships.
//!
//! Dimensions in [`Shape`] are in module units: every one is multiplied by the
//! block size `k` before matrices are built, so `Shape { m: 2, k: 3, .. }`
//! gives operators with 6 rows. Rank targets refer to the flattened matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rng::InstanceRng;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::projections::projection_quad;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SylvesterSolvable,
    SylvesterUnsolvable,
    OrthogonalPair,
    CongruenceSolvable,
    CongruenceCriterionViolating,
    EqualRangePair,
    ScaledEqualityPair,
    /// `A, B` sharing a left singular basis, with `R(A) ∩ R(B) ⊆ R(C)`.
    IntersectingPair,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::SylvesterSolvable,
        Family::SylvesterUnsolvable,
        Family::OrthogonalPair,
        Family::CongruenceSolvable,
        Family::CongruenceCriterionViolating,
        Family::EqualRangePair,
        Family::ScaledEqualityPair,
        Family::IntersectingPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SylvesterSolvable => "sylvester-solvable",
            Family::SylvesterUnsolvable => "sylvester-unsolvable",
            Family::OrthogonalPair => "orthogonal-pair",
            Family::CongruenceSolvable => "congruence-solvable",
            Family::CongruenceCriterionViolating => "congruence-criterion-violating",
            Family::EqualRangePair => "equal-range-pair",
            Family::ScaledEqualityPair => "scaled-equality-pair",
            Family::IntersectingPair => "intersecting-pair",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InfeasibleSpec(format!("unknown family `{s}`")))
    }
}

/// `A: m×p`, `B: q×n` (Sylvester) or `m×q` (pairs), `C: m×n`, in units of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub k: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize, p: usize, q: usize, k: usize) -> Self {
        Self { m, n, p, q, k }
    }

    /// Flattened `(m, n, p, q)`.
    pub fn flat(&self) -> (usize, usize, usize, usize) {
        (self.m * self.k, self.n * self.k, self.p * self.k, self.q * self.k)
    }
}

impl Default for Shape {
    fn default() -> Self {
        Self::new(6, 5, 4, 4, 1)
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// `m,n,p,q` or `m,n,p,q,k`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InfeasibleSpec(format!("shape `{s}`: {e}")))?;
        match parts[..] {
            [m, n, p, q] => Ok(Self::new(m, n, p, q, 1)),
            [m, n, p, q, k] => Ok(Self::new(m, n, p, q, k)),
            _ => Err(Error::InfeasibleSpec(format!("shape `{s}` needs 4 or 5 comma-separated counts"))),
        }
    }
}

/// Target ranks; `None` picks a family default from the shape.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTargets {
    pub a: Option<usize>,
    pub b: Option<usize>,
    /// Hidden solutions or right-hand side, where the family has one.
    pub hidden: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub shape: Shape,
    pub ranks: RankTargets,
    pub family: Family,
    /// Scale of `scaled-equality-pair`; drawn log-uniform in `[1/4, 4]` when absent.
    pub lambda: Option<f64>,
}

impl InstanceSpec {
    pub fn new(family: Family, seed: u64, shape: Shape) -> Self {
        Self { seed, shape, ranks: RankTargets::default(), family, lambda: None }
    }
}

/// A generated operator set plus the hidden data it was built from.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    /// Public operators, named `A`, `B`, `C`.
    pub operators: BTreeMap<String, ComplexMatrix>,
    /// Construction data such as `X0`, `Y0`, `M`, `U`.
    pub hidden: BTreeMap<String, ComplexMatrix>,
    pub scalars: BTreeMap<String, f64>,
}

impl Instance {
    pub fn op(&self, name: &str) -> &ComplexMatrix {
        &self.operators[name]
    }

    pub fn hidden(&self, name: &str) -> &ComplexMatrix {
        &self.hidden[name]
    }
}

fn infeasible(msg: impl Into<String>) -> Error {
    Error::InfeasibleSpec(msg.into())
}

fn rank_or(target: Option<usize>, default: usize, rows: usize, cols: usize, what: &str) -> Result<usize> {
    let r = target.unwrap_or(default);
    if r > rows.min(cols) {
        return Err(infeasible(format!("rank {r} for {what} exceeds min({rows}, {cols})")));
    }
    Ok(r)
}

/// One less than full, but at least one.
fn deficient(rows: usize, cols: usize) -> usize {
    rows.min(cols).saturating_sub(1).max(1)
}

struct Builder {
    rng: InstanceRng,
    operators: BTreeMap<String, ComplexMatrix>,
    hidden: BTreeMap<String, ComplexMatrix>,
    scalars: BTreeMap<String, f64>,
}

impl Builder {
    fn op(&mut self, name: &str, m: ComplexMatrix) {
        self.operators.insert(name.into(), m);
    }

    fn hide(&mut self, name: &str, m: ComplexMatrix) {
        self.hidden.insert(name.into(), m);
    }
}

pub fn generate(spec: &InstanceSpec) -> Result<Instance> {
    let s = spec.shape;
    if [s.m, s.n, s.p, s.q, s.k].contains(&0) {
        return Err(infeasible("every shape entry must be at least 1"));
    }
    let mut b = Builder {
        rng: InstanceRng::new(spec.seed),
        operators: BTreeMap::new(),
        hidden: BTreeMap::new(),
        scalars: BTreeMap::new(),
    };
    match spec.family {
        Family::SylvesterSolvable => sylvester(spec, &mut b, false)?,
        Family::SylvesterUnsolvable => sylvester(spec, &mut b, true)?,
        Family::OrthogonalPair => orthogonal(spec, &mut b)?,
        Family::CongruenceSolvable => congruence(spec, &mut b, false)?,
        Family::CongruenceCriterionViolating => congruence(spec, &mut b, true)?,
        Family::EqualRangePair => equal_range(spec, &mut b)?,
        Family::ScaledEqualityPair => scaled_equality(spec, &mut b)?,
        Family::IntersectingPair => intersecting(spec, &mut b)?,
    }
    Ok(Instance { spec: spec.clone(), operators: b.operators, hidden: b.hidden, scalars: b.scalars })
}

/// `C = A·X0 + Y0·B` scaled to unit Frobenius norm; the unsolvable variant adds
/// `u·v*` with unit `u ∈ N(A*)`, `v ∈ N(B)`, orthogonal to the solvable part.
fn sylvester(spec: &InstanceSpec, b: &mut Builder, unsolvable: bool) -> Result<()> {
    let (m, n, p, q) = spec.shape.flat();
    let ra = rank_or(spec.ranks.a, deficient(m, p), m, p, "A")?;
    let rb = rank_or(spec.ranks.b, deficient(q, n), q, n, "B")?;
    if unsolvable && (ra >= m || rb >= n) {
        return Err(infeasible("an unsolvable instance needs rank A < m and rank B < n"));
    }
    let rx = rank_or(spec.ranks.hidden, p.min(n), p, n, "X0")?;
    let ry = rank_or(spec.ranks.hidden, m.min(q), m, q, "Y0")?;
    let a = b.rng.rank_matrix(m, p, ra);
    let bm = b.rng.rank_matrix(q, n, rb);
    let x0 = b.rng.rank_matrix(p, n, rx);
    let y0 = b.rng.rank_matrix(m, q, ry);
    let c0 = &(&a * &x0) + &(&y0 * &bm);
    let norm = c0.frobenius_norm();
    if norm == 0.0 {
        return Err(infeasible("hidden solutions produce C = 0"));
    }
    let inv = 1.0 / norm;
    let mut c = c0.scale(inv);
    if unsolvable {
        let tol = ToleranceConfig::default();
        let u = unit_in(&projection_quad(&a, &tol).n_astar, &mut b.rng)?;
        let v = unit_in(&projection_quad(&bm, &tol).n_a, &mut b.rng)?;
        let e = &u * &v.adjoint();
        c = &c + &e;
        b.hide("E", e);
    }
    b.op("A", a);
    b.op("B", bm);
    b.op("C", c);
    b.hide("X0", x0.scale(inv));
    b.hide("Y0", y0.scale(inv));
    Ok(())
}

/// Unit vector in the range of the projection `p`.
fn unit_in(p: &ComplexMatrix, rng: &mut InstanceRng) -> Result<ComplexMatrix> {
    let v = p * &rng.gaussian_matrix(p.cols(), 1);
    let n = v.frobenius_norm();
    if n == 0.0 {
        return Err(infeasible("projection is zero"));
    }
    Ok(v.scale(1.0 / n))
}

/// `A = U1·Σ·V1*`, `B = U2·Σ·V2*` with `[U1 U2]` an isometry; `C = A·X0 + B·Y0`.
fn orthogonal(spec: &InstanceSpec, b: &mut Builder) -> Result<()> {
    let (m, n, p, q) = spec.shape.flat();
    let ra = rank_or(spec.ranks.a, (m / 2).min(p).max(1), m, p, "A")?;
    let rb = rank_or(spec.ranks.b, (m - ra).min(q), m, q, "B")?;
    if ra + rb > m {
        return Err(infeasible(format!("orthogonal ranges need rank A + rank B ≤ {m}")));
    }
    let u = b.rng.isometry(m, ra + rb);
    let a = with_range(&mut b.rng, &u.columns(0, ra), p);
    let bm = with_range(&mut b.rng, &u.columns(ra, rb), q);
    let x0 = b.rng.gaussian_matrix(p, n);
    let y0 = b.rng.gaussian_matrix(q, n);
    let c = &(&a * &x0) + &(&bm * &y0);
    let inv = 1.0 / c.frobenius_norm();
    b.op("A", a);
    b.op("B", bm);
    b.op("C", c.scale(inv));
    b.hide("X0", x0.scale(inv));
    b.hide("Y0", y0.scale(inv));
    Ok(())
}

/// `U·diag(σ)·V*` for a given orthonormal `U` (`rows × r`), `V` Haar `cols × r`.
fn with_range(rng: &mut InstanceRng, u: &ComplexMatrix, cols: usize) -> ComplexMatrix {
    let r = u.cols();
    let v = rng.isometry(cols, r);
    let sigma: Vec<f64> = (0..r).map(|_| rng.log_uniform(1e-2, 1.0)).collect();
    &(u * &ComplexMatrix::from_diagonal(&sigma)) * &v.adjoint()
}

fn with_sigma(rng: &mut InstanceRng, u: &ComplexMatrix, sigma: &[f64], cols: usize) -> ComplexMatrix {
    let v = rng.isometry(cols, sigma.len());
    &(u * &ComplexMatrix::from_diagonal(sigma)) * &v.adjoint()
}

/// In a random orthonormal basis `Q` split as `S_AB | S_A | S_B | S_0`,
/// `R(A) = Q[S_AB ∪ S_A]` and `R(B) = Q[S_AB ∪ S_B]`. `C = Q·K·Q*` where `K`
/// lives on the blocks `(S_AB, S_A)` and `(S_B, S_AB)`, which is exactly the
/// solvable set under the three hypotheses. The violating variant adds a block
/// on `(S_B, S_A)`, which keeps the hypotheses and breaks both criteria.
fn congruence(spec: &InstanceSpec, b: &mut Builder, violating: bool) -> Result<()> {
    let (m, _, p, q) = spec.shape.flat();
    let ra = rank_or(spec.ranks.a, (2 * m / 3).max(1).min(p), m, p, "A")?;
    let rb = rank_or(spec.ranks.b, (2 * m / 3).max(1).min(q), m, q, "B")?;
    let s_ab = (ra + rb).saturating_sub(m).max(1);
    if s_ab > ra.min(rb) {
        return Err(infeasible("ranks leave no room for a shared range"));
    }
    let (s_a, s_b) = (ra - s_ab, rb - s_ab);
    if s_a + s_b == 0 || (violating && (s_a == 0 || s_b == 0)) {
        return Err(infeasible(format!("ranks ({ra}, {rb}) in dimension {m} admit no such congruence instance")));
    }
    let qm = b.rng.unitary(m);
    let range_a: Vec<usize> = (0..s_ab + s_a).collect();
    let range_b: Vec<usize> = (0..s_ab).chain(s_ab + s_a..s_ab + s_a + s_b).collect();
    let a = with_range(&mut b.rng, &pick_columns(&qm, &range_a), p);
    let bm = with_range(&mut b.rng, &pick_columns(&qm, &range_b), q);

    let mut k = ComplexMatrix::zeros(m, m);
    let (ab, sa, sb) = (0..s_ab, s_ab..s_ab + s_a, s_ab + s_a..s_ab + s_a + s_b);
    fill(&mut k, ab.clone(), sa.clone(), &mut b.rng);
    fill(&mut k, sb.clone(), ab, &mut b.rng);
    if violating {
        fill(&mut k, sb, sa, &mut b.rng);
    }
    let c = &(&qm * &k) * &qm.adjoint();
    b.op("A", a);
    b.op("B", bm);
    b.op("C", c.scale(1.0 / c.frobenius_norm()));
    b.hide("Q", qm);
    Ok(())
}

fn pick_columns(m: &ComplexMatrix, cols: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), cols.len(), |i, j| m.get(i, cols[j]))
}

fn fill(k: &mut ComplexMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>, rng: &mut InstanceRng) {
    for i in rows {
        for j in cols.clone() {
            k.set(i, j, rng.complex_normal());
        }
    }
}

/// `B = A·M` with `M` square Gaussian (invertible almost surely); `B` is `m×p`.
fn equal_range(spec: &InstanceSpec, b: &mut Builder) -> Result<()> {
    let (m, _, p, _) = spec.shape.flat();
    let ra = rank_or(spec.ranks.a, deficient(m, p), m, p, "A")?;
    let a = b.rng.rank_matrix(m, p, ra);
    let mm = b.rng.gaussian_matrix(p, p);
    b.op("B", &a * &mm);
    b.op("A", a);
    b.hide("M", mm);
    Ok(())
}

/// `C = √λ·A·U` with `U` Haar unitary, so `CC* = λ·AA*`.
fn scaled_equality(spec: &InstanceSpec, b: &mut Builder) -> Result<()> {
    let (m, _, p, _) = spec.shape.flat();
    let ra = rank_or(spec.ranks.a, deficient(m, p), m, p, "A")?;
    let lambda = match spec.lambda {
        Some(l) if l > 0.0 && l.is_finite() => l,
        Some(l) => return Err(infeasible(format!("λ = {l} must be positive"))),
        None => b.rng.log_uniform(0.25, 4.0),
    };
    let a = b.rng.rank_matrix(m, p, ra);
    let u = b.rng.unitary(p);
    b.op("C", (&a * &u).scale(lambda.sqrt()));
    b.op("A", a);
    b.hide("U", u);
    b.scalars.insert("lambda".into(), lambda);
    Ok(())
}

/// `A = Q[0..ra]·Σa·V1*`, `B = Q[ra−s..ra−s+rb]·Σb·V2*` with overlap `s ≥ 1`
/// on which `Σa` and `Σb` agree; `C: m×n` with range `Q[overlap ∪ extra]`.
fn intersecting(spec: &InstanceSpec, b: &mut Builder) -> Result<()> {
    let (m, n, p, q) = spec.shape.flat();
    let ra = rank_or(spec.ranks.a, (2 * m / 3).max(1).min(p), m, p, "A")?;
    let rb = rank_or(spec.ranks.b, (2 * m / 3).max(1).min(q), m, q, "B")?;
    let overlap = (ra + rb).saturating_sub(m).max(1);
    if overlap > ra.min(rb) {
        return Err(infeasible("ranks leave no room for an intersection"));
    }
    let rc = rank_or(spec.ranks.hidden, n.min(m), m, n, "C")?;
    if rc < overlap {
        return Err(infeasible(format!("rank C = {rc} cannot hold an intersection of dimension {overlap}")));
    }
    let qm = b.rng.unitary(m);
    let start_b = ra - overlap;
    // P·N(S) ⊆ N(S) needs equal singular values on the shared directions
    let sigma_a: Vec<f64> = (0..ra).map(|_| b.rng.log_uniform(1e-2, 1.0)).collect();
    let sigma_b: Vec<f64> = (0..rb)
        .map(|i| if i < overlap { sigma_a[start_b + i] } else { b.rng.log_uniform(1e-2, 1.0) })
        .collect();
    let a = with_sigma(&mut b.rng, &qm.columns(0, ra), &sigma_a, p);
    let bm = with_sigma(&mut b.rng, &qm.columns(start_b, rb), &sigma_b, q);
    // the overlap first, then the remaining basis vectors in order
    let order: Vec<usize> = (start_b..ra).chain((0..m).filter(|i| !(start_b..ra).contains(i))).collect();
    let c = with_range(&mut b.rng, &pick_columns(&qm, &order[..rc]), n);
    b.op("A", a);
    b.op("B", bm);
    b.op("C", c);
    b.hide("Q", qm);
    b.scalars.insert("intersection_dim".into(), overlap as f64);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{diagnose_congruence, range_intersection, solve_congruence_cz};
    use crate::sylvester::diagnose_ax_yb;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
        assert!("nope".parse::<Family>().is_err());
        assert_eq!("3,4,2,2".parse::<Shape>().unwrap(), Shape::new(3, 4, 2, 2, 1));
        assert_eq!("3,4,2,2,2".parse::<Shape>().unwrap().flat(), (6, 8, 4, 4));
        assert!("3,4".parse::<Shape>().is_err());
    }

    #[test]
    fn deterministic_in_seed() {
        for f in Family::ALL {
            let spec = InstanceSpec::new(f, 42, Shape::default());
            let (a, b) = (generate(&spec).unwrap(), generate(&spec).unwrap());
            assert_eq!(a.operators, b.operators, "{f}");
            let other = generate(&InstanceSpec::new(f, 43, Shape::default())).unwrap();
            assert_ne!(a.operators, other.operators, "{f}");
        }
    }

    #[test]
    fn sylvester_contracts() {
        let spec = InstanceSpec::new(Family::SylvesterSolvable, 7, Shape::default());
        let inst = generate(&spec).unwrap();
        let d = diagnose_ax_yb(inst.op("A"), inst.op("B"), inst.op("C"), &tol()).unwrap();
        assert!(d.solvable && (inst.op("C").frobenius_norm() - 1.0).abs() < 1e-14);

        let spec = InstanceSpec::new(Family::SylvesterUnsolvable, 7, Shape::default());
        let inst = generate(&spec).unwrap();
        let d = diagnose_ax_yb(inst.op("A"), inst.op("B"), inst.op("C"), &tol()).unwrap();
        assert!(!d.solvable && d.classical_residual >= 0.5 * inst.op("C").frobenius_norm());

        let mut full = InstanceSpec::new(Family::SylvesterUnsolvable, 7, Shape::new(3, 3, 3, 3, 1));
        full.ranks.a = Some(3);
        assert!(matches!(generate(&full), Err(Error::InfeasibleSpec(_))));
        let mut big = InstanceSpec::new(Family::SylvesterSolvable, 7, Shape::default());
        big.ranks.b = Some(9);
        assert!(matches!(generate(&big), Err(Error::InfeasibleSpec(_))));
    }

    #[test]
    fn pair_contracts() {
        let inst = generate(&InstanceSpec::new(Family::OrthogonalPair, 1, Shape::default())).unwrap();
        let (a, b) = (inst.op("A"), inst.op("B"));
        assert!((&a.adjoint() * b).frobenius_norm() <= 1e-12);

        let mut spec = InstanceSpec::new(Family::ScaledEqualityPair, 1, Shape::default());
        spec.lambda = Some(4.0);
        let inst = generate(&spec).unwrap();
        let (a, c) = (inst.op("A"), inst.op("C"));
        let aa = a * &a.adjoint();
        assert!((&(c * &c.adjoint()) - &aa.scale(4.0)).frobenius_norm() <= 1e-12 * aa.frobenius_norm().max(1.0));

        let inst = generate(&InstanceSpec::new(Family::EqualRangePair, 1, Shape::default())).unwrap();
        assert!(crate::projections::range_equal(inst.op("A"), inst.op("B"), &tol()).unwrap().holds);
    }

    #[test]
    fn congruence_contracts() {
        for seed in 0..10 {
            let inst = generate(&InstanceSpec::new(Family::CongruenceSolvable, seed, Shape::default())).unwrap();
            let d = diagnose_congruence(inst.op("A"), inst.op("B"), inst.op("C"), &tol()).unwrap();
            assert!(d.hypotheses_hold && d.solvable);
            let inst = generate(&InstanceSpec::new(Family::CongruenceCriterionViolating, seed, Shape::default())).unwrap();
            let d = diagnose_congruence(inst.op("A"), inst.op("B"), inst.op("C"), &tol()).unwrap();
            assert!(d.hypotheses_hold && !d.solvable);
        }
        let tiny = InstanceSpec::new(Family::CongruenceCriterionViolating, 0, Shape::new(2, 2, 2, 2, 1));
        assert!(matches!(generate(&tiny), Err(Error::InfeasibleSpec(_))));
    }

    #[test]
    fn intersecting_pair_contracts() {
        for seed in 0..10 {
            let inst = generate(&InstanceSpec::new(Family::IntersectingPair, seed, Shape::default())).unwrap();
            let r = range_intersection(inst.op("A"), inst.op("B"), &tol()).unwrap();
            assert_eq!(r.dim, inst.scalars["intersection_dim"] as usize);
            assert!(r.pn_s_invariant_residual <= 1e-10, "{}", r.pn_s_invariant_residual);
            assert!(solve_congruence_cz(inst.op("A"), inst.op("B"), inst.op("C"), &tol()).is_ok());
        }
    }

    #[test]
    fn block_size_scales_dimensions() {
        let inst = generate(&InstanceSpec::new(Family::SylvesterSolvable, 3, Shape::new(2, 2, 2, 2, 3))).unwrap();
        assert_eq!(inst.op("A").shape(), (6, 6));
        assert!(matches!(generate(&InstanceSpec::new(Family::SylvesterSolvable, 3, Shape::new(0, 2, 2, 2, 1))), Err(Error::InfeasibleSpec(_))));
    }
}
