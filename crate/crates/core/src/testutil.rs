use crate::harness::rng::InstanceRng;
use crate::matrix::ComplexMatrix;

pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> ComplexMatrix {
    InstanceRng::new(seed).gaussian_matrix(rows, cols)
}

pub fn random_rank(seed: u64, rows: usize, cols: usize, rank: usize) -> ComplexMatrix {
    InstanceRng::new(seed).rank_matrix(rows, cols, rank)
}

pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).unwrap()
}

pub fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && (a - b).frobenius_norm() <= tol
}
