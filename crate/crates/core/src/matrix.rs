//! Dense matrices over [`Scalar`].

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use crate::field::CycloField;
use crate::scalar::Scalar;

/// Row-major dense matrix with entries in one cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CycloField>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero_in(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycloField>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::from_int_in(field, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Field of the entries (rational field for an empty matrix).
    pub fn field(&self) -> Arc<CycloField> {
        self.data
            .first()
            .map_or_else(CycloField::rational, |x| x.field().clone())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let rows = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact determinant.
    ///
    /// Small matrices use a division-free Laplace expansion over column
    /// subsets, which also skips zero entries cheaply; larger ones use
    /// Gaussian elimination.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let field = self.field();
        if n == 0 {
            return Scalar::from_int_in(&field, 1);
        }
        if n <= 14 {
            return self.det_laplace();
        }
        self.det_elimination()
    }

    fn det_laplace(&self) -> Scalar {
        let n = self.rows;
        let field = self.field();
        // minors[mask] = det of rows 0..popcount(mask) restricted to columns in mask
        let mut minors: Vec<Option<Scalar>> = vec![None; 1 << n];
        minors[0] = Some(Scalar::from_int_in(&field, 1));
        let mut masks: Vec<usize> = (1..1usize << n).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let k = mask.count_ones() as usize;
            let row = k - 1;
            let mut acc: Option<Scalar> = None;
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let a = self.get(row, j);
                if !a.is_zero() {
                    if let Some(sub) = &minors[mask & !(1 << j)] {
                        let term = a * sub;
                        let term = if (row + pos) % 2 == 1 { -term } else { term };
                        acc = Some(match acc {
                            Some(x) => x + term,
                            None => term,
                        });
                    }
                }
                pos += 1;
            }
            minors[mask] = acc.filter(|x| !x.is_zero());
        }
        minors[(1 << n) - 1]
            .take()
            .unwrap_or_else(|| Scalar::zero_in(&field))
    }

    fn det_elimination(&self) -> Scalar {
        let n = self.rows;
        let field = self.field();
        let mut a = self.to_rows();
        let mut det = Scalar::from_int_in(&field, 1);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Scalar::zero_in(&field);
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let inv = a[k][k].inverse().expect("nonzero pivot");
            det = det * &a[k][k];
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] * &inv;
                for c in k + 1..n {
                    let v = &a[r][c] - &(&f * &a[k][c]);
                    a[r][c] = v;
                }
            }
        }
        det
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].inverse().expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..self.cols {
                        let v = &a[i][j] - &(&f * &a[r][j]);
                        a[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = if a.is_empty() {
            Matrix::zeros(&self.field(), self.rows, self.cols)
        } else {
            Matrix::from_rows(a)
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Mx = 0}`; each vector has a 1 in its free coordinate.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let field = self.field();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero_in(&field); self.cols];
                v[f] = Scalar::from_int_in(&field, 1);
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Solves `Mx = b` for square non-singular `M`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert!(self.is_square() && b.len() == self.rows);
        let n = self.rows;
        let rows = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let (r, pivots) = Matrix::from_rows(rows).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    /// Inverse of a square non-singular matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let field = self.field();
        let id = Matrix::identity(&field, n);
        let rows = (0..n)
            .map(|i| self.row(i).iter().chain(id.row(i)).cloned().collect())
            .collect();
        let (r, pivots) = Matrix::from_rows(rows).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let inv = (0..n).map(|i| r.row(i)[n..].to_vec()).collect();
        Some(Matrix::from_rows(inv))
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc: Option<Scalar> = None;
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let p = x * y;
        acc = Some(match acc {
            Some(s) => s + p,
            None => p,
        });
    }
    acc.unwrap_or_else(|| {
        a.first()
            .map_or_else(Scalar::zero, |x| Scalar::zero_in(x.field()))
    })
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let field = self.field();
        let mut out = Matrix::zeros(&field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    fn m(rows: &[&[(i64, i64)]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| q(n, d)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinants_agree_between_methods() {
        let a = m(&[
            &[(2, 1), (1, 1), (0, 1), (3, 1)],
            &[(1, 2), (0, 1), (4, 1), (1, 1)],
            &[(0, 1), (5, 1), (1, 3), (0, 1)],
            &[(7, 1), (0, 1), (1, 1), (-2, 1)],
        ]);
        assert_eq!(a.det_laplace(), a.det_elimination());
        let singular = m(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[(1, 1), (-1, 1)], &[(-1, 1), (1, 1)]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k, vec![vec![q(1, 1), q(1, 1)]]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[(2, 1), (1, 1)], &[(1, 1), (3, 1)]]);
        let x = a.solve(&[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(3, 1), q(5, 1)]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let singular = m(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn powers() {
        let rot = m(&[&[(0, 1), (-1, 1)], &[(1, 1), (0, 1)]]);
        assert!(rot.pow(4).is_identity());
        assert!(!rot.pow(2).is_identity());
    }
}
