//! Orthogonal projection onto the row space and its basis-average formula.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::eisenstein::{Eisenstein, EisensteinRational};
use crate::error::{Error, Result};
use crate::jacobian::laplacian;
use crate::matrix::{MatrixE, MatrixQw};
use crate::matroid::{enumerate_bases, laplacian_determinant, n_b_matrix};

/// Largest basis count [`averaging_matrix`] will sum over.
pub const AVERAGING_GUARD: usize = 5000;

/// `P = M^H (M M^H)^{-1} M`, acting on row vectors from the right.
#[derive(Clone, Debug)]
pub struct Projector {
    pub p: MatrixQw,
    pub representation: MatrixE,
    /// `(M M^H)^{-1}`, kept for coordinate computations.
    pub laplacian_inverse: MatrixQw,
}

pub fn projector(m: &MatrixE) -> Result<Projector> {
    let lap = laplacian(m)?;
    let linv = lap.inverse()?;
    let mq = m.to_qw();
    let p = mq.conj_transpose().mul(&linv)?.mul(&mq)?;
    Ok(Projector {
        p,
        representation: m.clone(),
        laplacian_inverse: linv,
    })
}

impl Projector {
    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    /// `v P`.
    pub fn apply(&self, v: &[EisensteinRational]) -> Result<Vec<EisensteinRational>> {
        self.p.left_mul_vec(v)
    }

    pub fn apply_e(&self, v: &[Eisenstein]) -> Result<Vec<EisensteinRational>> {
        self.apply(&to_qw_vec(v))
    }

    /// Coordinates `y` with `v P = y M`, namely `y = v M^H (M M^H)^{-1}`.
    pub fn row_coordinates(&self, v: &[EisensteinRational]) -> Result<Vec<EisensteinRational>> {
        let w = self.representation.conj_transpose().to_qw().left_mul_vec(v)?;
        self.laplacian_inverse.left_mul_vec(&w)
    }

    /// `I - P`, the projection onto the orthogonal complement.
    pub fn complement(&self) -> MatrixQw {
        MatrixQw::identity(self.dim())
            .with_labels(self.p.labels().to_vec())
            .expect("same labels")
            .sub(&self.p)
            .expect("same shape")
    }

    pub fn is_idempotent(&self) -> bool {
        self.p.mul(&self.p).map(|q| q.entries() == self.p.entries()).unwrap_or(false)
    }

    pub fn is_hermitian(&self) -> bool {
        self.p.conj_transpose().entries() == self.p.entries()
    }

    /// Least common denominator of the entries of `P`.
    pub fn denominator(&self) -> BigInt {
        self.p
            .entries()
            .iter()
            .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denominator()))
    }
}

fn to_qw_vec(v: &[Eisenstein]) -> Vec<EisensteinRational> {
    v.iter().map(EisensteinRational::from).collect()
}

/// `N = Σ_B N_B` and the number of bases `κ`, with `N = κ P` checked.
#[derive(Clone, Debug)]
pub struct Averaging {
    pub n: MatrixE,
    pub kappa: BigInt,
}

pub fn averaging_matrix(m: &MatrixE) -> Result<Averaging> {
    let det = laplacian_determinant(m)?;
    if det > BigInt::from(AVERAGING_GUARD) {
        return Err(Error::SizeGuard {
            what: "basis averaging",
            guard: AVERAGING_GUARD,
            actual: det.to_usize().unwrap_or(usize::MAX),
        });
    }
    let bases = enumerate_bases(m)?;
    let zero = MatrixE::zeros(m.cols(), m.cols())
        .with_labels(m.labels().to_vec())
        .expect("labels already validated");
    let n = bases
        .par_iter()
        .map(|b| n_b_matrix(m, b))
        .try_reduce(|| zero.clone(), |x, y| x.add(&y))?;
    let kappa = BigInt::from(bases.len());
    let proj = projector(m)?;
    let scaled = proj.p.scale(&EisensteinRational::from(Eisenstein::from_int(kappa.clone())));
    if n.to_qw().entries() != scaled.entries() {
        return Err(Error::Verification("N differs from kappa * P".into()));
    }
    Ok(Averaging { n, kappa })
}

/// Membership in the dual lattice of `Λ*`: `v` lies in the row space and
/// `v M^H` is integral.
pub fn dual_membership(m: &MatrixE, v: &[EisensteinRational]) -> Result<bool> {
    if v.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.cols()
        )));
    }
    let mq = m.to_qw();
    let stacked = mq.vstack(&MatrixQw::new(1, v.len(), v.to_vec())?.with_labels(m.labels().to_vec())?)?;
    if stacked.rank() != mq.rank() {
        return Ok(false);
    }
    let w = mq.conj_transpose().left_mul_vec(v)?;
    Ok(w.iter().all(EisensteinRational::is_integral))
}

/// `|P(E^n) / Λ*|`, by closing the images of `e_i` and `ω e_i` under
/// addition modulo `Λ*`. Fails once more than `limit` classes are seen.
pub fn dual_quotient_order(m: &MatrixE, limit: usize) -> Result<usize> {
    let proj = projector(m)?;
    let n = m.cols();
    let mut gens = Vec::with_capacity(2 * n);
    for i in 0..n {
        for unit in [Eisenstein::from_int(1), Eisenstein::omega()] {
            let mut v = vec![EisensteinRational::zero(); n];
            v[i] = EisensteinRational::from(unit);
            let y = proj.row_coordinates(&v)?;
            gens.push(frac(&y));
        }
    }
    gens.sort_by_key(|g| format!("{g:?}"));
    gens.dedup();

    let start = vec![EisensteinRational::zero(); m.rows()];
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(key(&start));
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let next: Vec<EisensteinRational> = x.iter().zip(g).map(|(a, b)| (a + b).fractional_part()).collect();
            if seen.insert(key(&next)) {
                if seen.len() > limit {
                    return Err(Error::SizeGuard {
                        what: "dual quotient closure",
                        guard: limit,
                        actual: seen.len(),
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

fn frac(y: &[EisensteinRational]) -> Vec<EisensteinRational> {
    y.iter().map(EisensteinRational::fractional_part).collect()
}

fn key(y: &[EisensteinRational]) -> String {
    y.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
