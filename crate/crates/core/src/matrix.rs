//! Dense exact matrices with labeled columns.
//!
//! `MatrixE` is the workhorse: representations, Laplacians and transforms all
//! live there. `MatrixQw` carries fraction-field results such as inverses and
//! projectors, `MatrixZ` the integer side used for abelian-group invariants.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::eisenstein::{Eisenstein, EisensteinRational};
use crate::error::{Error, Result};
use crate::ring::{EuclideanDomain, Ring};

/// Ground-set element identifier carried by each column.
pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    labels: Vec<Label>,
}

pub type MatrixE = Matrix<Eisenstein>;
pub type MatrixQw = Matrix<EisensteinRational>;
pub type MatrixZ = Matrix<BigInt>;

pub fn default_labels(n: usize) -> Vec<Label> {
    (1..=n as Label).collect()
}

impl<R: Clone> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            labels: default_labels(cols),
        })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{} labels for {} columns",
                labels.len(),
                self.cols
            )));
        }
        let mut seen = HashSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l));
            }
        }
        self.labels = labels;
        Ok(self)
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

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels == default_labels(self.cols)
    }

    pub fn label_index(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            labels: default_labels(self.rows),
        }
    }

    pub fn map<S: Clone>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    /// Swaps two columns together with their labels.
    pub fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + j, i * self.cols + l);
        }
        self.labels.swap(j, l);
    }

    pub fn select_column_indices(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
            labels: idx.iter().map(|&j| self.labels[j]).collect(),
        }
    }

    /// Columns with the given labels, in the listed order.
    pub fn select_columns(&self, labels: &[Label]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|&l| self.label_index(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.select_column_indices(&idx))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.cols * idx.len());
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        self.select_rows(rows).select_column_indices(cols)
    }

    pub fn delete_column(&self, j: usize) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_column_indices(&keep)
    }

    /// Stacks `other` below `self`; labels come from `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        })
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
            labels: default_labels(cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn diagonal(entries: &[R]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], R::zero());
                        out[(i, j)] = cur + a.clone() * b;
                    }
                }
            }
        }
        out.labels = other.labels.clone();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
            labels: self.labels.clone(),
        })
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|x| x.clone() * k)
    }

    /// Row vector times matrix, `v M`.
    pub fn left_mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![R::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let x = &self[(i, j)];
                if !x.is_zero() {
                    *o = o.clone() + vi.clone() * x;
                }
            }
        }
        Ok(out)
    }

    pub fn row_op_add(&mut self, target: usize, source: usize, factor: &R) {
        for j in 0..self.cols {
            let s = self[(source, j)].clone();
            if !s.is_zero() {
                let t = self[(target, j)].clone();
                self[(target, j)] = t + factor.clone() * &s;
            }
        }
    }

    pub fn col_op_add(&mut self, target: usize, source: usize, factor: &R) {
        for i in 0..self.rows {
            let s = self[(i, source)].clone();
            if !s.is_zero() {
                let t = self[(i, target)].clone();
                self[(i, target)] = t + s * factor;
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, k: &R) {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].clone() * k;
        }
    }

    pub fn scale_col(&mut self, j: usize, k: &R) {
        for i in 0..self.rows {
            self[(i, j)] = self[(i, j)].clone() * k;
        }
    }
}

impl<R: EuclideanDomain> Matrix<R> {
    /// Fraction-free (Bareiss) determinant; every division is exact.
    pub fn det_bareiss(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut a = self.clone();
        let mut prev = R::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return Ok(R::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * &a[(k, k)] - a[(i, k)].clone() * &a[(k, j)];
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = R::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank by fraction-free row echelon form.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = R::one();
        let mut k = 0;
        for c in 0..a.cols {
            if k == a.rows {
                break;
            }
            let Some(p) = (k..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, k);
            for i in k + 1..a.rows {
                for j in c + 1..a.cols {
                    let num = a[(i, j)].clone() * &a[(k, c)] - a[(i, c)].clone() * &a[(k, j)];
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, c)] = R::zero();
            }
            prev = a[(k, c)].clone();
            k += 1;
        }
        k
    }

    /// Greedy maximal independent set of rows, in input order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut kept: Vec<usize> = Vec::new();
        for i in 0..self.rows {
            let mut trial = kept.clone();
            trial.push(i);
            if self.select_rows(&trial).rank() == trial.len() {
                kept = trial;
            }
        }
        kept
    }

    /// Submatrix on a maximal independent set of rows; labels preserved.
    pub fn full_row_rank_restriction(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        Ok(self.select_rows(&self.independent_rows()))
    }
}

impl MatrixE {
    pub fn conj(&self) -> Self {
        self.map(Eisenstein::conj)
    }

    /// `M^H`; the result carries default labels.
    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.conj_transpose().data == self.data
    }

    /// Exact determinant. Tries a checked machine-word Bareiss first and
    /// falls back to arbitrary precision on overflow.
    pub fn det(&self) -> Result<Eisenstein> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some(small) = CompactMatrix::from_matrix(self) {
            let all: Vec<usize> = (0..self.rows).collect();
            if let Some((a, b)) = small.minor_det(&all, &all) {
                return Ok(Eisenstein::new(a, b));
            }
        }
        self.det_bareiss()
    }

    pub fn to_qw(&self) -> MatrixQw {
        self.map(|x| EisensteinRational::from(x))
    }

    /// Inverse over the fraction field.
    pub fn inverse(&self) -> Result<MatrixQw> {
        self.to_qw().inverse()
    }

    /// Inverse with Eisenstein entries; fails with `NotIntegral` when the
    /// inverse exists only over the fraction field.
    pub fn inverse_over_e(&self) -> Result<MatrixE> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some(inv) = self.unit_pivot_inverse() {
            return Ok(inv);
        }
        self.inverse()?
            .to_e()
            .ok_or_else(|| Error::NotIntegral("inverse has non-integral entries".into()))
    }

    // Gauss-Jordan restricted to unit pivots; succeeds for H-matrices.
    fn unit_pivot_inverse(&self) -> Option<MatrixE> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatrixE::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| a[(i, c)].is_unit())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let u = a[(c, c)].unit_inverse()?;
            a.scale_row(c, &u);
            inv.scale_row(c, &u);
            for i in 0..n {
                if i != c && !a[(i, c)].is_zero() {
                    let f = -a[(i, c)].clone();
                    a.row_op_add(i, c, &f);
                    inv.row_op_add(i, c, &f);
                }
            }
        }
        Some(inv)
    }
}

impl MatrixQw {
    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(EisensteinRational::conj)
    }

    pub fn to_e(&self) -> Option<MatrixE> {
        let data = self
            .data
            .iter()
            .map(EisensteinRational::to_eisenstein)
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        })
    }

    pub fn inverse(&self) -> Result<MatrixQw> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatrixQw::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].inverse()?;
            a.scale_row(c, &piv);
            inv.scale_row(c, &piv);
            for i in 0..n {
                if i != c && !a[(i, c)].is_zero() {
                    let f = -a[(i, c)].clone();
                    a.row_op_add(i, c, &f);
                    inv.row_op_add(i, c, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut k = 0;
        for c in 0..a.cols {
            if k == a.rows {
                break;
            }
            let Some(p) = (k..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, k);
            let piv = a[(k, c)].inverse().expect("nonzero pivot");
            for i in k + 1..a.rows {
                if !a[(i, c)].is_zero() {
                    let f = -(a[(i, c)].clone() * &piv);
                    a.row_op_add(i, k, &f);
                }
            }
            k += 1;
        }
        k
    }

    /// Solves `x A = b` for a square invertible `A`.
    pub fn solve_left(&self, b: &[EisensteinRational]) -> Result<Vec<EisensteinRational>> {
        self.inverse()?.left_mul_vec(b)
    }
}

impl MatrixZ {
    pub fn to_e(&self) -> MatrixE {
        self.map(|x| Eisenstein::from_int(x.clone()))
    }
}

impl MatrixE {
    /// Real part of an integer-valued matrix.
    pub fn to_z(&self) -> Result<MatrixZ> {
        if let Some(x) = self.data.iter().find(|x| !x.is_real()) {
            return Err(Error::NotIntegral(format!("entry {x} is not a rational integer")));
        }
        Ok(self.map(|x| x.a.clone()))
    }
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// An Eisenstein matrix with machine-word coefficients, used for the
/// many small determinants in basis enumeration and H-validation.
#[derive(Clone, Debug)]
pub(crate) struct CompactMatrix {
    cols: usize,
    data: Vec<(i64, i64)>,
}

impl CompactMatrix {
    pub(crate) fn from_matrix(m: &MatrixE) -> Option<Self> {
        let data = m
            .data
            .iter()
            .map(|x| Some((x.a.to_i64()?, x.b.to_i64()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(CompactMatrix {
            cols: m.cols,
            data,
        })
    }

    /// Determinant of the square submatrix on `rows x cols`, or `None` on
    /// overflow.
    pub(crate) fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Option<(i64, i64)> {
        debug_assert_eq!(rows.len(), cols.len());
        let n = rows.len();
        if n == 0 {
            return Some((1, 0));
        }
        let mut a: Vec<(i64, i64)> = Vec::with_capacity(n * n);
        for &i in rows {
            for &j in cols {
                a.push(self.data[i * self.cols + j]);
            }
        }
        small_bareiss(&mut a, n)
    }
}

fn cmul(x: (i64, i64), y: (i64, i64)) -> Option<(i64, i64)> {
    let ac = x.0.checked_mul(y.0)?;
    let bd = x.1.checked_mul(y.1)?;
    let ad = x.0.checked_mul(y.1)?;
    let bc = x.1.checked_mul(y.0)?;
    Some((ac.checked_sub(bd)?, ad.checked_add(bc)?.checked_add(bd)?))
}

fn csub(x: (i64, i64), y: (i64, i64)) -> Option<(i64, i64)> {
    Some((x.0.checked_sub(y.0)?, x.1.checked_sub(y.1)?))
}

fn cdiv_exact(x: (i64, i64), y: (i64, i64)) -> Option<(i64, i64)> {
    let conj = (y.0.checked_add(y.1)?, y.1.checked_neg()?);
    let num = cmul(x, conj)?;
    let norm = cmul(y, conj)?.0;
    debug_assert!(num.0 % norm == 0 && num.1 % norm == 0);
    Some((num.0 / norm, num.1 / norm))
}

fn small_bareiss(a: &mut [(i64, i64)], n: usize) -> Option<(i64, i64)> {
    let zero = (0, 0);
    let mut prev = (1i64, 0i64);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k * n + k] == zero {
            let i = (k + 1..n).find(|&i| a[i * n + k] != zero);
            match i {
                Some(i) => {
                    for j in 0..n {
                        a.swap(i * n + j, k * n + j);
                    }
                    negate = !negate;
                }
                None => return Some(zero),
            }
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let num = csub(cmul(a[i * n + j], pivot)?, cmul(lead, a[k * n + j])?)?;
                a[i * n + j] = if prev == (1, 0) {
                    num
                } else {
                    cdiv_exact(num, prev)?
                };
            }
            a[i * n + k] = zero;
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { (d.0.checked_neg()?, d.1.checked_neg()?) } else { d })
}
