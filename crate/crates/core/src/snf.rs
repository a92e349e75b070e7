//! Smith normal form over a Euclidean domain.
//!
//! `snf` diagonalizes by elementary row and column operations, recording the
//! transforms so that `S * A * T = diag(divisors)`. `minor_gcd_divisors` is an
//! independent route through the gcds of all `i x i` minors.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;

/// Default dimension guard for [`minor_gcd_divisors`].
pub const MINOR_GCD_GUARD: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult<R> {
    /// Canonical elementary divisors, zero-padded to `min(rows, cols)`.
    pub divisors: Vec<R>,
    /// Left transform `S` (rows x rows).
    pub left: Matrix<R>,
    /// Right transform `T` (cols x cols).
    pub right: Matrix<R>,
    pub rank: usize,
}

impl<R: EuclideanDomain> SnfResult<R> {
    /// The `rows x cols` matrix with the divisors on its diagonal.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> Matrix<R> {
        let mut d = Matrix::zeros(rows, cols);
        for (i, x) in self.divisors.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Checks `S A T = D`, the divisibility chain, canonical form and
    /// unimodularity of both transforms.
    pub fn verify(&self, a: &Matrix<R>) -> Result<()> {
        let sat = self.left.mul(a)?.mul(&self.right)?;
        if sat.entries() != self.diagonal_matrix(a.rows(), a.cols()).entries() {
            return Err(Error::Verification("S*A*T is not the divisor diagonal".into()));
        }
        for pair in self.divisors[..self.rank].windows(2) {
            if !pair[0].divides(&pair[1]) {
                return Err(Error::Verification(format!(
                    "{} does not divide {}",
                    pair[0], pair[1]
                )));
            }
        }
        if let Some(d) = self.divisors.iter().find(|d| d.normalize().0 != **d) {
            return Err(Error::Verification(format!("{d} is not canonical")));
        }
        for t in [&self.left, &self.right] {
            if !t.det_bareiss()?.is_unit() {
                return Err(Error::Verification("transform is not unimodular".into()));
            }
        }
        Ok(())
    }
}

fn smallest_nonzero<R: EuclideanDomain>(
    a: &Matrix<R>,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    // min_by_key keeps the first minimum, i.e. row-major tie breaking
    cells
        .filter(|&c| !a[c].is_zero())
        .min_by_key(|&c| a[c].euclid_size())
}

/// Smith normal form with transforms. A zero matrix yields zero divisors and
/// identity transforms.
pub fn snf<R: EuclideanDomain>(input: &Matrix<R>) -> SnfResult<R> {
    let (m, n) = input.shape();
    let mut a = input.clone();
    let mut s = Matrix::<R>::identity(m);
    let mut t = Matrix::<R>::identity(n);
    let steps = m.min(n);
    let mut rank = 0;

    for k in 0..steps {
        let cells = (k..m).cartesian_product(k..n);
        let Some((pi, pj)) = smallest_nonzero(&a, cells) else {
            break;
        };
        a.swap_rows(k, pi);
        s.swap_rows(k, pi);
        a.swap_cols(k, pj);
        t.swap_cols(k, pj);

        loop {
            let mut clean = true;
            for i in k + 1..m {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, k)].euclid_div(&a[(k, k)]).expect("pivot is nonzero");
                let f = -q;
                a.row_op_add(i, k, &f);
                s.row_op_add(i, k, &f);
                clean &= r.is_zero();
            }
            if !clean {
                let (pi, _) = smallest_nonzero(&a, (k..m).map(|i| (i, k))).expect("pivot column");
                a.swap_rows(k, pi);
                s.swap_rows(k, pi);
                continue;
            }

            for j in k + 1..n {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(k, j)].euclid_div(&a[(k, k)]).expect("pivot is nonzero");
                let f = -q;
                a.col_op_add(j, k, &f);
                t.col_op_add(j, k, &f);
                clean &= r.is_zero();
            }
            if !clean {
                let (_, pj) = smallest_nonzero(&a, (k..n).map(|j| (k, j))).expect("pivot row");
                a.swap_cols(k, pj);
                t.swap_cols(k, pj);
                continue;
            }

            let pivot = a[(k, k)].clone();
            let offender = (k + 1..m).find(|&i| (k + 1..n).any(|j| !pivot.divides(&a[(i, j)])));
            match offender {
                Some(i) => {
                    let one = R::one();
                    a.row_op_add(k, i, &one);
                    s.row_op_add(k, i, &one);
                }
                None => break,
            }
        }
        rank += 1;
    }

    for k in 0..rank {
        let (_, u) = a[(k, k)].normalize();
        if !u.is_one() {
            a.scale_row(k, &u);
            s.scale_row(k, &u);
        }
    }

    let divisors = (0..steps).map(|k| a[(k, k)].clone()).collect();
    SnfResult {
        divisors,
        left: s,
        right: t,
        rank,
    }
}

/// Elementary divisors as `d_i / d_{i-1}` where `d_i` is the gcd of all
/// `i x i` minors and `d_0 = 1`.
pub fn minor_gcd_divisors<R: EuclideanDomain>(a: &Matrix<R>, guard: usize) -> Result<Vec<R>> {
    let (m, n) = a.shape();
    let steps = m.min(n);
    if steps > guard {
        return Err(Error::SizeGuard {
            what: "minor-gcd divisors",
            guard,
            actual: steps,
        });
    }
    let mut prev = R::one();
    let mut out = Vec::with_capacity(steps);
    for i in 1..=steps {
        let mut g = R::zero();
        for rows in (0..m).combinations(i) {
            let sub_rows = a.select_rows(&rows);
            for cols in (0..n).combinations(i) {
                let minor = sub_rows.select_column_indices(&cols).det_bareiss()?;
                if !minor.is_zero() {
                    g = g.gcd_canonical(&minor)?;
                }
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat(R::zero()).take(steps - out.len()));
            break;
        }
        let alpha = g
            .div_exact(&prev)
            .ok_or_else(|| Error::Verification("d_{i-1} does not divide d_i".into()))?;
        out.push(alpha.normalize().0);
        prev = g;
    }
    Ok(out)
}

/// One cyclic summand `R/(a)` of a cokernel.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicFactor<R> {
    pub divisor: R,
    /// `a` is a unit, so the summand is zero.
    pub trivial: bool,
    /// `a = 0`, so the summand is a free copy of `R`.
    pub free: bool,
}

/// `R^n / row_R(A) = sum R/(a_i)` for square `A`.
pub fn cokernel_decomposition<R: EuclideanDomain>(a: &Matrix<R>) -> Result<Vec<CyclicFactor<R>>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(snf(a)
        .divisors
        .into_iter()
        .map(|d| CyclicFactor {
            trivial: d.is_unit(),
            free: d.is_zero(),
            divisor: d,
        })
        .collect())
}
