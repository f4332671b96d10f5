//! Sparse matrices over the rationals with exact elimination.
//!
//! Matrices here are small (dimensions bounded by algebra dimensions or
//! partition counts), so elimination works on a dense copy internally while
//! the stored form stays sparse: no zero entry is ever kept in the map, and
//! iteration order is row-major because the key is `(row, col)` in a
//! `BTreeMap`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DenseMatrix", try_from = "DenseMatrix")]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

/// Serialization mirror: JSON carries matrices as dense row lists, which
/// stays readable and round-trips exactly through the string encoding of
/// each entry.
#[derive(Serialize, Deserialize)]
struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl From<RationalMatrix> for DenseMatrix {
    fn from(m: RationalMatrix) -> Self {
        let data = (0..m.rows).map(|i| m.row(i)).collect();
        DenseMatrix { rows: m.rows, cols: m.cols, data }
    }
}

impl TryFrom<DenseMatrix> for RationalMatrix {
    type Error = String;

    fn try_from(d: DenseMatrix) -> Result<Self, Self::Error> {
        if d.data.len() != d.rows {
            return Err(format!("expected {} rows, found {}", d.rows, d.data.len()));
        }
        if d.data.iter().any(|r| r.len() != d.cols) {
            return Err(format!("expected every row to have {} entries", d.cols));
        }
        let mut m = RationalMatrix::zero(d.rows, d.cols);
        for (i, row) in d.data.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut dense = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            dense[r][c] = v.clone();
        }
        dense
    }

    fn from_dense(dense: Vec<Vec<Rational>>, cols: usize) -> Self {
        let rows = dense.len();
        let mut m = Self::zero(rows, cols);
        for (i, row) in dense.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.set(c, r, v.clone());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for j in 0..other.cols {
                let b = other.get(k, j);
                if !b.is_zero() {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * &b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            out[r] += &(a * &v[c]);
        }
        Ok(out)
    }

    /// Reduced row echelon form: pivots are 1, pivot columns are otherwise
    /// zero, pivot columns strictly increase down the rows, zero rows last.
    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut dense = self.to_dense();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !dense[r][col].is_zero()) else {
                continue;
            };
            dense.swap(pivot_row, src);
            let inv = dense[pivot_row][col].recip();
            for v in dense[pivot_row][col..].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_vals = dense[pivot_row][col..].to_vec();
            for (r, row) in dense.iter_mut().enumerate() {
                if r != pivot_row && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (v, p) in row[col..].iter_mut().zip(&pivot_vals) {
                        let delta = &factor * p;
                        *v -= &delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (Self::from_dense(dense, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis of the right kernel `{v : Mv = 0}`, one vector per free column
    /// in ascending column order. The free coordinate of each vector is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -rref.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> Result<Rational, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut dense = self.to_dense();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !dense[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if src != col {
                dense.swap(col, src);
                det = -det;
            }
            det = det * dense[col][col].clone();
            let inv = dense[col][col].recip();
            let pivot_vals = dense[col][col..].to_vec();
            for row in dense[col + 1..].iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &inv;
                for (v, p) in row[col..].iter_mut().zip(&pivot_vals) {
                    let delta = &factor * p;
                    *v -= &delta;
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix via elimination on `[M | I]`.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for (&(r, c), v) in &self.entries {
            aug.set(r, c, v.clone());
        }
        for i in 0..n {
            aug.set(i, n + i, Rational::one());
        }
        let (rref, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(MatrixError::Singular);
        }
        let mut inv = Self::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, rref.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Row space membership, used for closure checks: true iff `v` is a
    /// linear combination of the rows.
    pub fn row_space_contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let base_rank = self.rank();
        let mut stacked = self.clone();
        stacked.rows += 1;
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                stacked.entries.insert((self.rows, j), x.clone());
            }
        }
        stacked.rank() == base_rank
    }

    /// Stack rows of `other` below `self`. Column counts must agree.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut out = self.clone();
        out.rows += other.rows;
        for (&(r, c), v) in &other.entries {
            out.entries.insert((self.rows + r, c), v.clone());
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_examples() {
        // Already-reduced single row stays fixed.
        let a = m(&[&[1, 2]]);
        assert_eq!(a.rref(), a);
        // Swap-and-scale case.
        let b = m(&[&[0, 2], &[3, 0]]);
        assert_eq!(b.rref(), RationalMatrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        // [[1,2]] has kernel spanned by (-2, 1).
        let a = m(&[&[1, 2]]);
        assert_eq!(a.kernel_basis(), vec![vec![rat(-2, 1), rat(1, 1)]]);
        // The zero map has the full standard basis as kernel, in order.
        let z = RationalMatrix::zero(2, 2);
        assert_eq!(
            z.kernel_basis(),
            vec![
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1)],
            ]
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant().unwrap(), rat(-2, 1));
        assert_eq!(m(&[&[2]]).determinant().unwrap(), rat(2, 1));
        assert!(matches!(
            m(&[&[1, 2]]).determinant(),
            Err(MatrixError::NonSquare { rows: 1, cols: 2 })
        ));
        // Singular matrix.
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), rat(0, 1));
    }

    #[test]
    fn no_stored_zeros_after_updates() {
        let mut a = m(&[&[1, 2], &[3, 4]]);
        a.set(0, 0, Rational::zero());
        assert_eq!(a.iter().count(), 3);
    }

    #[test]
    fn row_space_membership() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(a.row_space_contains(&[rat(2, 1), rat(3, 1), rat(5, 1)]));
        assert!(!a.row_space_contains(&[rat(0, 1), rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn inverse_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert_eq!(inv.mul(&a).unwrap(), RationalMatrix::identity(2));
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(MatrixError::Singular)));
        assert!(matches!(m(&[&[1, 2]]).inverse(), Err(MatrixError::NonSquare { .. })));
    }

    #[test]
    fn serde_round_trips_as_dense_rows() {
        let mut a = RationalMatrix::zero(2, 3);
        a.set(0, 1, rat(-7, 3));
        a.set(1, 2, rat(5, 1));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":3,"data":[["0","-7/3","0"],["0","0","5"]]}"#
        );
        let back: RationalMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<RationalMatrix>(
            r#"{"rows":2,"cols":3,"data":[["0","0","0"]]}"#
        )
        .is_err());
    }
}
