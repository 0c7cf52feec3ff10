use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense integer matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(rows: usize, columns: &[Vec<usize>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::InternalCheckFailed(format!("column of length {} in a matrix with {rows} rows", col.len())));
            }
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x as i64;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    /// `self · other`
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InternalCheckFailed(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Adds `scale · block` with its top-left corner at `(row, col)`.
    pub fn add_block(&mut self, row: usize, col: usize, block: &Matrix, scale: i64) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(row + i) * self.cols + col + j] += scale * block.get(i, j);
            }
        }
    }

    /// The matrix with rows and columns reindexed: entry `(r, c)` moves to `(row_map[r], col_map[c])`.
    pub fn permuted(&self, row_map: &[usize], col_map: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(row_map[r], col_map[c], self.get(r, c));
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }
}

impl From<Matrix> for Vec<Vec<i64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<i64>>> for Matrix {
    type Error = Error;

    /// An empty list is the `0×0` matrix; rows must have equal length.
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDocument("matrix rows have different lengths".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_round_trip() {
        let a = Matrix::try_from(vec![vec![1, 2], vec![0, 1]]).unwrap();
        let b = a.mul(&a).unwrap();
        assert_eq!(b.to_rows(), vec![vec![1, 4], vec![0, 1]]);
        assert_eq!(a.mul(&Matrix::identity(2)).unwrap(), a);
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(json, "[[1,4],[0,1]]");
        assert_eq!(serde_json::from_str::<Matrix>(&json).unwrap(), b);
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
    }
}
