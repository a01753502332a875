//! The JSON matrix exchange format.
//!
//! ```json
//! {"rows": 2, "cols": 2, "data": [[1.0, 0.0], [1.5, -2.0], [0.0, 0.0], [1.0, 0.0]]}
//! ```
//!
//! `data` holds `[re, im]` pairs in row-major order. The optional `block_k`
//! records the module block size and must divide both dimensions. Floats are
//! written in shortest round-trip form, so `load(save(M)) == M` bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_k: Option<usize>,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, block_k: Option<usize>) -> Self {
        let data = m.to_row_major().into_iter().map(|z| [z.re, z.im]).collect();
        Self { rows: m.rows(), cols: m.cols(), block_k, data }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Shape(format!("dimensions must be positive, got {}x{}", self.rows, self.cols)));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, data has {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.data.len()
            )));
        }
        if let Some(k) = self.block_k {
            if k == 0 || !self.rows.is_multiple_of(k) || !self.cols.is_multiple_of(k) {
                return Err(Error::Shape(format!("block_k = {k} does not divide {}x{}", self.rows, self.cols)));
            }
        }
        let entries = self.data.iter().map(|&[re, im]| c64(re, im)).collect();
        ComplexMatrix::from_row_major(self.rows, self.cols, entries)
    }
}

/// Parses a matrix file's text; also returns `block_k`.
pub fn parse_matrix(text: &str) -> Result<(ComplexMatrix, Option<usize>)> {
    let file: MatrixFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    Ok((file.to_matrix()?, file.block_k))
}

pub fn render_matrix(m: &ComplexMatrix, block_k: Option<usize>) -> String {
    let mut s = serde_json::to_string(&MatrixFile::from_matrix(m, block_k)).expect("plain data serializes");
    s.push('\n');
    s
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_matrix(&text).map(|(m, _)| m)
}

pub fn save_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    save_matrix_with_block(path, m, None)
}

pub fn save_matrix_with_block(path: impl AsRef<Path>, m: &ComplexMatrix, block_k: Option<usize>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_matrix(m, block_k)).map_err(|e| io_error(path, e))
}
