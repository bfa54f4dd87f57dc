//! Dense exact linear algebra over a valued field.
//!
//! Plain Gaussian elimination with exact scalars; no pivot-size heuristics
//! are needed since arithmetic is exact. Operations that can fail (singular
//! matrix, shape mismatch) return `Result`.

use crate::error::{Error, Result};
use crate::scalars::{ValuedField, ValuedScalar};

/// Column-major dense matrix over one valued field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: ValuedField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<ValuedScalar>, // column-major
}

impl Matrix {
    pub fn from_columns(field: ValuedField, rows: usize, columns: Vec<Vec<ValuedScalar>>) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for col in columns {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for x in col {
                if x.field != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn identity(field: ValuedField, n: usize) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                data.push(if i == j { field.one() } else { field.zero() });
            }
        }
        Matrix {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &ValuedScalar {
        &self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, x: ValuedScalar) {
        self.data[j * self.rows + i] = x;
    }

    pub fn column(&self, j: usize) -> Vec<ValuedScalar> {
        self.data[j * self.rows..(j + 1) * self.rows].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<ValuedScalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for j in 0..self.cols {
            for i in 0..self.rows {
                let x = self.at(i, j);
                if i == j {
                    if *x != self.field.one() {
                        return false;
                    }
                } else if !x.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[ValuedScalar]) -> Result<Vec<ValuedScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(x)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let columns: Result<Vec<_>> = (0..other.cols)
            .map(|j| self.mul_vec(&other.column(j)))
            .collect();
        Matrix::from_columns(self.field, self.rows, columns?)
    }

    /// Determinant by fraction-full Gaussian elimination. Triangular inputs
    /// (in particular the identity bases of monomial norms) take a fast path.
    pub fn det(&self) -> Result<ValuedScalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        if let Some(d) = self.triangular_det()? {
            return Ok(d);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| !m.at(i, k).is_zero());
            let Some(p) = pivot_row else {
                return Ok(self.field.zero());
            };
            if p != k {
                m.swap_rows(p, k);
                det = det.neg();
            }
            let pivot = m.at(k, k).clone();
            det = det.mul(&pivot)?;
            let pivot_inv = pivot.inv()?;
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k).mul(&pivot_inv)?;
                for j in k..n {
                    let sub = factor.mul(m.at(k, j))?;
                    let val = m.at(i, j).sub(&sub)?;
                    m.set(i, j, val);
                }
            }
        }
        Ok(det)
    }

    fn triangular_det(&self) -> Result<Option<ValuedScalar>> {
        let n = self.rows;
        let mut lower = true;
        let mut upper = true;
        'scan: for j in 0..n {
            for i in 0..n {
                if i < j && !self.at(i, j).is_zero() {
                    lower = false;
                }
                if i > j && !self.at(i, j).is_zero() {
                    upper = false;
                }
                if !lower && !upper {
                    break 'scan;
                }
            }
        }
        if !lower && !upper {
            return Ok(None);
        }
        let mut det = self.field.one();
        for k in 0..n {
            det = det.mul(self.at(k, k))?;
        }
        Ok(Some(det))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(j * self.rows + a, j * self.rows + b);
        }
    }

    /// Gauss-Jordan inverse. Errors on singular input.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if self.is_identity() {
            return Ok(self.clone());
        }
        let mut m = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| !m.at(i, k).is_zero());
            let Some(p) = pivot_row else {
                return Err(Error::SingularMatrix);
            };
            if p != k {
                m.swap_rows(p, k);
                inv.swap_rows(p, k);
            }
            let pivot_inv = m.at(k, k).inv()?;
            for j in 0..n {
                let v = m.at(k, j).mul(&pivot_inv)?;
                m.set(k, j, v);
                let w = inv.at(k, j).mul(&pivot_inv)?;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k || m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k).clone();
                for j in 0..n {
                    let sub = factor.mul(m.at(k, j))?;
                    let val = m.at(i, j).sub(&sub)?;
                    m.set(i, j, val);
                    let sub = factor.mul(inv.at(k, j))?;
                    let val = inv.at(i, j).sub(&sub)?;
                    inv.set(i, j, val);
                }
            }
        }
        Ok(inv)
    }

    /// Rank via row echelon form.
    pub fn rank(&self) -> Result<usize> {
        let (_, rank, _) = self.row_echelon()?;
        Ok(rank)
    }

    /// Basis of the kernel {v : Mv = 0}, as columns of an n x (n - rank) matrix.
    pub fn nullspace(&self) -> Result<Matrix> {
        let (ech, rank, pivots) = self.row_echelon()?;
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut columns = Vec::with_capacity(n - rank);
        for &f in &free {
            let mut v = vec![self.field.zero(); n];
            v[f] = self.field.one();
            // back-substitute pivot coordinates
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = ech.at(r, f).clone();
                for (r2, &pc2) in pivots.iter().enumerate() {
                    if r2 > r {
                        let term = ech.at(r, pc2).mul(&v[pc2])?;
                        acc = acc.add(&term)?;
                    }
                }
                v[pc] = acc.neg();
            }
            columns.push(v);
        }
        Matrix::from_columns(self.field, n, columns)
    }

    /// Reduced row echelon form; returns (matrix, rank, pivot columns).
    fn row_echelon(&self) -> Result<(Matrix, usize, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&i| !m.at(i, col).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != row {
                m.swap_rows(p, row);
            }
            let pivot_inv = m.at(row, col).inv()?;
            for j in col..m.cols {
                let v = m.at(row, j).mul(&pivot_inv)?;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).clone();
                for j in col..m.cols {
                    let sub = factor.mul(m.at(row, j))?;
                    let val = m.at(i, j).sub(&sub)?;
                    m.set(i, j, val);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots.len(), pivots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn q2() -> ValuedField {
        ValuedField::padic(2).unwrap()
    }

    fn mat(field: ValuedField, rows: usize, cols: &[&[i64]]) -> Matrix {
        let columns = cols
            .iter()
            .map(|c| c.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_columns(field, rows, columns).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let f = q2();
        let m = mat(f, 2, &[&[1, 0], &[1, 2]]);
        assert_eq!(m.det().unwrap(), f.from_int(2));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = q2();
        let m = mat(f, 2, &[&[1, 2], &[2, 4]]);
        assert!(m.det().unwrap().is_zero());
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = ValuedField::trivial();
        // rank-1 map (x, y, z) -> x + y + z
        let m = mat(f, 1, &[&[1], &[1], &[1]]);
        let ker = m.nullspace().unwrap();
        assert_eq!(ker.cols, 2);
        for j in 0..ker.cols {
            let img = m.mul_vec(&ker.column(j)).unwrap();
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_detects_deficiency() {
        let f = q2();
        assert_eq!(mat(f, 2, &[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
        assert_eq!(mat(f, 2, &[&[1, 0], &[0, 1]]).rank().unwrap(), 2);
    }

    #[test]
    fn laurent_matrix_inverse() {
        let f = ValuedField::laurent();
        let t = f.uniformizer().unwrap();
        let cols = vec![
            vec![f.one(), f.zero()],
            vec![t.clone(), t.mul(&t).unwrap()],
        ];
        let m = Matrix::from_columns(f, 2, cols).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
    }
}
