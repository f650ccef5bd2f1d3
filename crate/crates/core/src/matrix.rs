//! Dense exact matrices: echelon forms, kernels, solves, Kronecker products.
//!
//! Vectorisation is column-stacking throughout: `vec(A·X·B) = kron(Bᵀ, A)·vec(X)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{NilError, Result};
use crate::scalar::{Field, Scalar};

/// A column vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    // row-major, len == rows * cols
    data: Vec<Scalar>,
}

/// Output of [`Mat::solve`]: one particular solution and a basis of the
/// homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        Mat::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Builds a matrix from row-major scalars, checking length and field.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(NilError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(NilError::FieldMismatch(field, s.field()));
        }
        Ok(Mat { field, rows, cols, data })
    }

    /// Integer entries, row-major. Panics on a length mismatch.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        let data = entries.iter().map(|&v| Scalar::from_i64(field, v)).collect();
        Mat { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Mat {
        for c in columns {
            assert_eq!(c.len(), rows, "column length");
        }
        Mat::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(v: &[Scalar], field: Field) -> Mat {
        Mat::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field of stored scalar");
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            Err(NilError::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn checked_mul(&self, rhs: &Mat) -> Result<Mat> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(NilError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
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
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Mat, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(NilError::DimensionMismatch(format!(
                "shapes {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self^k` by repeated squaring. Panics if not square.
    pub fn pow(&self, mut k: u32) -> Mat {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Kronecker product: block `(i, j)` is `self[i, j] · rhs`.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.field, rhs.field, "kron field");
        let (r2, c2) = rhs.shape();
        Mat::from_fn(self.field, self.rows * r2, self.cols * c2, |i, j| {
            let a = self.get(i / r2, j / c2);
            if a.is_zero() {
                self.field.zero()
            } else {
                a * rhs.get(i % r2, j % c2)
            }
        })
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        Mat::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        Mat::from_fn(self.field, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                rhs.get(i - self.rows, j).clone()
            }
        })
    }

    /// `[[self, 0], [0, rhs]]`.
    pub fn block_diag(&self, rhs: &Mat) -> Mat {
        let (r1, c1) = self.shape();
        Mat::from_fn(self.field, r1 + rhs.rows, c1 + rhs.cols, |i, j| {
            if i < r1 && j < c1 {
                self.get(i, j).clone()
            } else if i >= r1 && j >= c1 {
                rhs.get(i - r1, j - c1).clone()
            } else {
                self.field.zero()
            }
        })
    }

    /// Block matrix from a grid of equally-shaped rows of blocks.
    pub fn from_blocks(field: Field, blocks: &[Vec<&Mat>]) -> Mat {
        let mut out: Option<Mat> = None;
        for row in blocks {
            let mut r: Option<Mat> = None;
            for b in row {
                r = Some(match r {
                    None => (*b).clone(),
                    Some(acc) => acc.hstack(b),
                });
            }
            let r = r.unwrap_or_else(|| Mat::zeros(field, 0, 0));
            out = Some(match out {
                None => r,
                Some(acc) => acc.vstack(&r),
            });
        }
        out.unwrap_or_else(|| Mat::zeros(field, 0, 0))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let (r0, c0) = (rows.start, cols.start);
        Mat::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Column-stacking vectorisation.
    pub fn vectorize(&self) -> Vector {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    /// Inverse of [`Mat::vectorize`].
    pub fn unvectorize(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Mat {
        assert_eq!(v.len(), rows * cols, "vectorised length");
        Mat::from_fn(field, rows, cols, |i, j| v[j * rows + i].clone())
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for v in rows[r][c..].iter_mut() {
                    if !v.is_zero() {
                        *v = &*v * &inv;
                    }
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                    if !pv.is_zero() {
                        row[j] = &row[j] - &(&factor * pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = rows.into_iter().flatten().collect();
        (Mat { field: self.field, rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`: one vector per free column of the RREF,
    /// free columns ascending, free coordinate 1 and the other free
    /// coordinates 0.
    pub fn nullspace_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&r, &pivots)
    }

    /// Solves `self·x = b`. `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Solution>> {
        if b.len() != self.rows {
            return Err(NilError::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        if let Some(s) = b.iter().find(|s| s.field() != self.field) {
            return Err(NilError::FieldMismatch(self.field, s.field()));
        }
        let aug = self.hstack(&Mat::column_vector(b, self.field));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = r.get(i, self.cols).clone();
        }
        let coeff = r.submatrix(0..r.rows, 0..self.cols);
        Ok(Some(Solution { particular, kernel: nullspace_from_rref(&coeff, &pivots) }))
    }

    /// A particular solution `X` of `self·X = rhs`, column by column.
    pub fn solve_matrix(&self, rhs: &Mat) -> Result<Option<Mat>> {
        self.check_field(rhs)?;
        if rhs.rows != self.rows {
            return Err(NilError::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            match self.solve(&rhs.column(j))? {
                Some(s) => cols.push(s.particular),
                None => return Ok(None),
            }
        }
        Ok(Some(Mat::from_columns(self.field, self.cols, &cols)))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Mat::identity(self.field, n)).rref();
        if !pivots.iter().copied().take(n).eq(0..n) {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Whether the column spaces of `self` and `other` coincide.
    pub fn same_column_space(&self, other: &Mat) -> bool {
        assert_eq!(self.rows, other.rows, "ambient dimension");
        let r = self.rank();
        r == other.rank() && r == self.hstack(other).rank()
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }
}

fn nullspace_from_rref(r: &Mat, pivots: &[usize]) -> Vec<Vector> {
    let field = r.field;
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..r.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); r.cols];
            v[free] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            v
        })
        .collect()
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    /// Panics on shape or field mismatch; use [`Mat::checked_mul`] for input data.
    fn mul(self, rhs: &'a Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &'a Mat) -> Mat {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &'a Mat) -> Mat {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-self.field.one())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
