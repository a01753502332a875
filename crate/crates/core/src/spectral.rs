//! Spectral primitives: SVD, Moore–Penrose pseudoinverse, Hermitian
//! eigendecomposition and the principal square root of a PSD matrix.

use nalgebra::linalg::SymmetricEigen;

use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tolerance::ToleranceConfig;

/// Relative size below which eigenvalues of a PSD input are treated as rounding dust.
const PSD_DUST_REL: f64 = 1e-12;

/// Relative negativity tolerated by [`psd_sqrt`] before it refuses the input.
pub const PSD_NEGATIVE_REL: f64 = 1e-10;

/// Thin SVD `M = U · diag(σ) · V*` with `σ` in descending order.
///
/// `u` is `rows × r`, `v` is `cols × r`, with `r = min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
    rows: usize,
    cols: usize,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// `σ_max · rank_rel · max(rows, cols)`.
    pub fn threshold(&self, tol: &ToleranceConfig) -> f64 {
        self.sigma_max() * tol.rank_rel * self.rows.max(self.cols) as f64
    }

    pub fn rank(&self, tol: &ToleranceConfig) -> usize {
        self.rank_against(tol, 0.0)
    }

    /// Rank with the cutoff measured against `max(σ_max, reference)`, for
    /// products whose own σ_max may be pure rounding noise.
    pub fn rank_against(&self, tol: &ToleranceConfig, reference: f64) -> usize {
        let t = self.sigma_max().max(reference) * tol.rank_rel * self.rows.max(self.cols) as f64;
        self.singular_values.iter().take_while(|&&s| s > t).count()
    }

    /// Leading `r` left singular vectors.
    pub fn u_r(&self, r: usize) -> ComplexMatrix {
        self.u.columns(0, r)
    }

    /// Leading `r` right singular vectors.
    pub fn v_r(&self, r: usize) -> ComplexMatrix {
        self.v.columns(0, r)
    }

    /// `U · diag(σ) · V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut us = self.u.clone();
        for (j, &s) in self.singular_values.iter().enumerate() {
            for i in 0..us.rows() {
                us.set(i, j, us.get(i, j) * s);
            }
        }
        &us * &self.v.adjoint()
    }
}

/// Thin SVD by one-sided (Hestenes) Jacobi rotations.
///
/// Columns of a working copy are rotated pairwise until all pairs are
/// orthogonal to working precision; the column norms are then the singular
/// values. Wide inputs are handled through their adjoint.
pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    if m.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let (rows, cols) = m.shape();
    if rows < cols {
        let t = svd(&m.adjoint())?;
        return Ok(SvdResult { u: t.v, singular_values: t.singular_values, v: t.u, rows, cols });
    }
    let a = m.as_nalgebra();
    let mut work: Vec<Vec<Complex64>> = (0..cols).map(|j| a.column(j).iter().copied().collect()).collect();
    let mut right: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect())
        .collect();
    let eps = f64::EPSILON * rows as f64;
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = work[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = work[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = work[p].iter().zip(&work[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // [u_p, u_q] <- [c u_p - s e^{-iφ} u_q, s u_p + c e^{-iφ} u_q]
                let sp = phase.conj() * s;
                let cp = phase.conj() * c;
                for cols_of in [&mut work, &mut right] {
                    let (lo, hi) = cols_of.split_at_mut(q);
                    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let (xp, yq) = (*x, *y);
                        *x = xp * c - yq * sp;
                        *y = xp * s + yq * cp;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = work.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singular_values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let mut u_cols: Vec<Vec<Complex64>> = order
        .iter()
        .take_while(|&&k| norms[k] > 0.0)
        .map(|&k| work[k].iter().map(|z| z / norms[k]).collect())
        .collect();
    complete_basis(&mut u_cols, cols, rows);
    let u = ComplexMatrix::from_fn(rows, cols, |i, j| u_cols[j][i]);
    let v = ComplexMatrix::from_fn(cols, cols, |i, j| right[order[j]][i]);
    Ok(SvdResult { u, singular_values, v, rows, cols })
}

const MAX_JACOBI_SWEEPS: usize = 80;

/// Extends orthonormal `basis` to `target` vectors of length `dim` using
/// coordinate vectors, preferring ones far from the current span.
fn complete_basis(basis: &mut Vec<Vec<Complex64>>, target: usize, dim: usize) {
    for floor in [0.5, 1e-8] {
        for e in 0..dim {
            if basis.len() >= target {
                return;
            }
            let mut v: Vec<Complex64> = (0..dim).map(|i| Complex64::new(if i == e { 1.0 } else { 0.0 }, 0.0)).collect();
            // two passes of Gram–Schmidt
            for _ in 0..2 {
                for b in basis.iter() {
                    let coef: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= coef * bi;
                    }
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n > floor {
                basis.push(v.into_iter().map(|z| z / n).collect());
            }
        }
    }
}

/// Moore–Penrose pseudoinverse with the rank cutoff of [`SvdResult::threshold`].
/// Empty and zero matrices map to the transpose-shaped zero matrix.
pub fn pinv(m: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    let Ok(dec) = svd(m) else {
        return ComplexMatrix::zeros(m.cols(), m.rows());
    };
    pinv_from_svd(&dec, tol)
}

pub fn pinv_from_svd(dec: &SvdResult, tol: &ToleranceConfig) -> ComplexMatrix {
    let r = dec.rank(tol);
    let mut v = dec.v_r(r);
    for (j, &s) in dec.singular_values.iter().take(r).enumerate() {
        for i in 0..v.rows() {
            v.set(i, j, v.get(i, j) / s);
        }
    }
    &v * &dec.u_r(r).adjoint()
}

pub fn numerical_rank_of(m: &ComplexMatrix, tol: &ToleranceConfig) -> usize {
    svd(m).map_or(0, |d| d.rank(tol))
}

/// Largest singular value; zero for empty input.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    svd(m).map_or(0.0, |d| d.sigma_max())
}

/// Eigendecomposition of the Hermitian part of a square matrix.
/// Eigenvalues ascend; eigenvector `i` is column `i`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if m.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    if !m.is_square() {
        return Err(crate::error::dims("hermitian_eigen", format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let h = m.hermitian_part();
    let dec = SymmetricEigen::new(h.into_nalgebra());
    let mut order: Vec<usize> = (0..dec.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| dec.eigenvalues[a].total_cmp(&dec.eigenvalues[b]));
    let n = order.len();
    let eigenvalues = order.iter().map(|&k| dec.eigenvalues[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| dec.eigenvectors[(i, order[j])]);
    Ok(HermitianEigen { eigenvalues, eigenvectors })
}

/// Smallest eigenvalue of the Hermitian part; `0` for empty input.
pub fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eigen(m).map_or(0.0, |e| e.eigenvalues[0])
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues within `1e-12·‖M‖₂` of zero, and negative ones down to
/// `−1e-10·‖M‖₂`, are treated as zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.is_empty() {
        return Ok(m.clone());
    }
    let scale = m.frobenius_norm();
    if m.is_square() && m.hermitian_defect() > 1e-10 * scale {
        return Err(Error::NotHermitian { asymmetry: m.hermitian_defect() / scale });
    }
    let eig = hermitian_eigen(m)?;
    let norm = eig.eigenvalues.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
    let lo = eig.eigenvalues[0];
    if lo < -PSD_NEGATIVE_REL * norm {
        return Err(Error::NotPsd { min_eigenvalue: lo });
    }
    let dust = PSD_DUST_REL * norm;
    let n = m.rows();
    let q = &eig.eigenvectors;
    let mut qs = q.clone();
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        let s = if l > dust { l.sqrt() } else { 0.0 };
        for i in 0..n {
            qs.set(i, j, qs.get(i, j) * s);
        }
    }
    Ok((&qs * &q.adjoint()).hermitian_part())
}

/// `I_n` as a complex matrix minus `p`.
pub(crate) fn complement(p: &ComplexMatrix) -> ComplexMatrix {
    &ComplexMatrix::identity(p.rows()) - p
}

/// Orthogonal projection `Q·Q*` for orthonormal columns `Q`.
pub(crate) fn outer_projection(q: &ComplexMatrix) -> ComplexMatrix {
    (q * &q.adjoint()).hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;
    use crate::testutil::{random_matrix, random_rank};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn svd_examples() {
        assert_eq!(svd(&ComplexMatrix::identity(2)).unwrap().singular_values, vec![1.0, 1.0]);
        let d = svd(&ComplexMatrix::from_diagonal(&[3.0, 0.0])).unwrap();
        assert_eq!(d.singular_values, vec![3.0, 0.0]);
        // [[0,1],[0,0]]: M*M = diag(0, 1), so σ² ∈ {1, 0}.
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let s = svd(&n).unwrap().singular_values;
        assert!((s[0] - 1.0).abs() < 1e-15 && s[1].abs() < 1e-15);
        assert_eq!(svd(&ComplexMatrix::zeros(0, 3)).unwrap_err(), Error::EmptyMatrix);
    }

    #[test]
    fn svd_factor_invariants() {
        for (seed, (r, c)) in [(3, 4), (6, 2), (5, 5), (1, 7), (9, 1)].into_iter().enumerate() {
            let m = random_matrix(seed as u64, r, c);
            let d = svd(&m).unwrap();
            let k = r.min(c);
            let dim = k as f64;
            let ueye = &d.u.adjoint() * &d.u - ComplexMatrix::identity(k);
            let veye = &d.v.adjoint() * &d.v - ComplexMatrix::identity(k);
            assert!(ueye.frobenius_norm() <= 1e-12 * dim);
            assert!(veye.frobenius_norm() <= 1e-12 * dim);
            assert!((&d.reconstruct() - &m).frobenius_norm() <= 1e-12 * m.frobenius_norm());
            assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn pinv_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert!((&pinv(&i2, &tol()) - &i2).frobenius_norm() < 1e-15);
        let two = ComplexMatrix::from_real_rows(&[&[2.0]]).unwrap();
        assert!((pinv(&two, &tol()).get(0, 0) - c64(0.5, 0.0)).norm() < 1e-15);
        let p = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let pp = pinv(&p, &tol());
        assert!((&pp - &p).frobenius_norm() < 1e-15);
        // all four Penrose identities by direct multiplication
        assert!((&(&p * &pp) * &p - &p).frobenius_norm() < 1e-15);
        assert!((&(&pp * &p) * &pp - &pp).frobenius_norm() < 1e-15);
        assert!((&p * &pp).hermitian_defect() < 1e-15);
        assert!((&pp * &p).hermitian_defect() < 1e-15);
    }

    #[test]
    fn pinv_of_zero_and_empty() {
        let z = pinv(&ComplexMatrix::zeros(2, 3), &tol());
        assert_eq!(z.shape(), (3, 2));
        assert!(z.is_zero());
        assert_eq!(pinv(&ComplexMatrix::zeros(0, 3), &tol()).shape(), (3, 0));
    }

    #[test]
    fn pinv_penrose_on_rank_deficient() {
        for seed in 0..20 {
            let m = random_rank(seed, 7, 5, 3);
            let p = pinv(&m, &tol());
            let s = m.frobenius_norm();
            assert!((&(&m * &p) * &m - &m).frobenius_norm() <= 1e-10 * s);
            assert!((&(&p * &m) * &p - &p).frobenius_norm() <= 1e-10 * p.frobenius_norm());
            assert!((&m * &p).hermitian_defect() <= 1e-10);
            assert!((&p * &m).hermitian_defect() <= 1e-10);
            assert_eq!(numerical_rank_of(&m, &tol()), 3);
        }
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        for seed in 0..10 {
            let g = random_matrix(seed, 7, 7);
            let h = g.hermitian_part();
            let e = hermitian_eigen(&h).unwrap();
            let q = &e.eigenvectors;
            let lam = ComplexMatrix::from_diagonal(&e.eigenvalues);
            assert!((&(&(q * &lam) * &q.adjoint()) - &h).frobenius_norm() <= 1e-12 * h.frobenius_norm());
            assert!((&(&q.adjoint() * q) - &ComplexMatrix::identity(7)).frobenius_norm() <= 1e-12 * 7.0);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn svd_handles_wide_zero_and_clustered() {
        let z = svd(&ComplexMatrix::zeros(3, 2)).unwrap();
        assert_eq!(z.singular_values, vec![0.0, 0.0]);
        let ueye = &z.u.adjoint() * &z.u - ComplexMatrix::identity(2);
        assert!(ueye.frobenius_norm() < 1e-15);
        for seed in 0..30 {
            let m = random_rank(seed, 4, 9, 2 + seed as usize % 3);
            let d = svd(&m).unwrap();
            assert_eq!(d.u.shape(), (4, 4));
            assert_eq!(d.v.shape(), (9, 4));
            assert!((&d.reconstruct() - &m).frobenius_norm() <= 1e-12 * m.frobenius_norm());
            let veye = &d.v.adjoint() * &d.v - ComplexMatrix::identity(4);
            assert!(veye.frobenius_norm() <= 1e-12 * 4.0);
        }
    }

    #[test]
    fn psd_sqrt_examples() {
        let i3 = ComplexMatrix::identity(3);
        assert!((&psd_sqrt(&i3).unwrap() - &i3).frobenius_norm() < 1e-14);
        let s = psd_sqrt(&ComplexMatrix::from_diagonal(&[4.0, 0.0])).unwrap();
        assert!((&s - &ComplexMatrix::from_diagonal(&[2.0, 0.0])).frobenius_norm() < 1e-14);
        // 0.5·[[1,1],[1,1]] = 1·vv* with v = (1,1)/√2, so its root is itself.
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let s = psd_sqrt(&m).unwrap();
        assert!((&s - &m).frobenius_norm() < 1e-14);
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let m = ComplexMatrix::from_diagonal(&[1.0, -0.1]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NotPsd { .. })));
        let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(psd_sqrt(&n), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn psd_sqrt_squares_back_and_commutes() {
        for seed in 0..10 {
            let g = random_rank(seed, 6, 6, 4);
            let m = &g * &g.adjoint();
            let s = psd_sqrt(&m).unwrap();
            let nm = m.frobenius_norm();
            assert!(s.hermitian_defect() <= 1e-14 * nm);
            assert!(min_eigenvalue(&s) >= -1e-12 * nm);
            assert!((&(&s * &s) - &m).frobenius_norm() <= 1e-10 * nm);
            assert!((&(&s * &m) - &(&m * &s)).frobenius_norm() <= 1e-10 * nm * nm);
        }
    }
}
