//! Matroid structure read off a representation.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::matrix::{CompactMatrix, Label, MatrixE};

/// Largest ground set [`verify_three_connected`] will scan.
pub const THREE_CONNECTED_GUARD: usize = 14;

/// A basis, as labels in column order of the matrix it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub elements: Vec<Label>,
}

impl Basis {
    pub fn new(elements: Vec<Label>) -> Self {
        Basis { elements }
    }

    pub fn contains(&self, e: Label) -> bool {
        self.elements.contains(&e)
    }

    pub fn label_set(&self) -> BTreeSet<Label> {
        self.elements.iter().copied().collect()
    }

    /// `B - i + j`, kept in the column order of `m`.
    pub fn exchange(&self, m: &MatrixE, i: Label, j: Label) -> Result<Basis> {
        let mut set = self.label_set();
        set.remove(&i);
        set.insert(j);
        let mut idx = set
            .into_iter()
            .map(|l| m.label_index(l))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        Ok(Basis::new(idx.into_iter().map(|k| m.labels()[k]).collect()))
    }
}

fn require_full_row_rank(m: &MatrixE) -> Result<()> {
    let rank = m.rank();
    if rank != m.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: m.rows(),
        });
    }
    Ok(())
}

fn columns_nonsingular(m: &MatrixE, compact: Option<&CompactMatrix>, cols: &[usize]) -> bool {
    let rows: Vec<usize> = (0..m.rows()).collect();
    if let Some(c) = compact {
        if let Some(d) = c.minor_det(&rows, cols) {
            return d != (0, 0);
        }
    }
    !m.select_column_indices(cols).det_bareiss().expect("square").is_zero()
}

/// Column-index sets of all bases in lexicographic order, without the
/// basis-count check.
pub fn basis_column_sets(m: &MatrixE) -> Result<Vec<Vec<usize>>> {
    require_full_row_rank(m)?;
    let compact = CompactMatrix::from_matrix(m);
    let candidates: Vec<Vec<usize>> = (0..m.cols()).combinations(m.rows()).collect();
    Ok(candidates
        .into_par_iter()
        .filter(|cols| columns_nonsingular(m, compact.as_ref(), cols))
        .collect())
}

/// `det(M M^H)` as a rational integer.
pub fn laplacian_determinant(m: &MatrixE) -> Result<BigInt> {
    let d = m.mul(&m.conj_transpose())?.det()?;
    if !d.is_real() {
        return Err(Error::Verification(format!("det(MM^H) = {d} is not real")));
    }
    Ok(d.a)
}

/// All bases in lexicographic order of column positions. Fails unless the
/// count equals `det(M M^H)`, which holds for every H-matrix.
pub fn enumerate_bases(m: &MatrixE) -> Result<Vec<Basis>> {
    let sets = basis_column_sets(m)?;
    let det = laplacian_determinant(m)?;
    if BigInt::from(sets.len()) != det {
        return Err(Error::BasisCountMismatch {
            count: sets.len(),
            det: det.to_string(),
        });
    }
    Ok(sets
        .into_iter()
        .map(|cols| Basis::new(cols.iter().map(|&j| m.labels()[j]).collect()))
        .collect())
}

fn basis_indices(m: &MatrixE, b: &Basis) -> Result<Vec<usize>> {
    b.elements.iter().map(|&l| m.label_index(l)).collect()
}

pub fn is_basis(m: &MatrixE, labels: &[Label]) -> Result<bool> {
    if labels.len() != m.rows() || labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        return Ok(false);
    }
    Ok(!m.select_columns(labels)?.det()?.is_zero())
}

/// `M_B = (M[B])^{-1} M`, with `M_B[B] = I` and the original column labels.
pub fn standard_rep(m: &MatrixE, b: &Basis) -> Result<MatrixE> {
    let idx = basis_indices(m, b)?;
    let sub = m.select_column_indices(&idx);
    if !sub.is_square() || sub.det()?.is_zero() {
        return Err(Error::NotABasis(b.elements.clone()));
    }
    let inv = sub.inverse_over_e()?;
    inv.mul(m)
}

/// Signed fundamental cocircuit `f_B(e)`: the row of `M_B` belonging to `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocircuitVector {
    pub basis: Basis,
    pub element: Label,
    /// Indexed like the columns of the representation.
    pub entries: Vec<Eisenstein>,
    pub support: BTreeSet<Label>,
}

fn cocircuit_from_rep(m: &MatrixE, mb: &MatrixE, b: &Basis, e: Label) -> Result<CocircuitVector> {
    let row = b
        .elements
        .iter()
        .position(|&l| l == e)
        .ok_or(Error::NotInBasis(e))?;
    let entries = mb.row(row).to_vec();
    let support = entries
        .iter()
        .zip(m.labels())
        .filter(|(x, _)| !x.is_zero())
        .map(|(_, &l)| l)
        .collect();
    Ok(CocircuitVector {
        basis: b.clone(),
        element: e,
        entries,
        support,
    })
}

pub fn fundamental_cocircuit(m: &MatrixE, b: &Basis, e: Label) -> Result<CocircuitVector> {
    if !b.contains(e) {
        return Err(Error::NotInBasis(e));
    }
    let mb = standard_rep(m, b)?;
    cocircuit_from_rep(m, &mb, b, e)
}

/// All cocircuit vectors of `B` at once, in basis order.
pub fn fundamental_cocircuits(m: &MatrixE, b: &Basis) -> Result<Vec<CocircuitVector>> {
    let mb = standard_rep(m, b)?;
    b.elements
        .iter()
        .map(|&e| cocircuit_from_rep(m, &mb, b, e))
        .collect()
}

/// `{j : B - e + j is a basis}` by direct determinant checks.
pub fn exchange_set(m: &MatrixE, b: &Basis, e: Label) -> Result<BTreeSet<Label>> {
    if !b.contains(e) {
        return Err(Error::NotInBasis(e));
    }
    let mut out = BTreeSet::new();
    for &j in m.labels() {
        if j == e {
            out.insert(j);
            continue;
        }
        if b.contains(j) {
            continue;
        }
        let cand = b.exchange(m, e, j)?;
        if is_basis(m, &cand.elements)? {
            out.insert(j);
        }
    }
    Ok(out)
}

/// The `n x n` matrix whose rows at `B` are those of `M_B` and whose other
/// rows are zero.
pub fn n_b_matrix(m: &MatrixE, b: &Basis) -> Result<MatrixE> {
    let mb = standard_rep(m, b)?;
    let idx = basis_indices(m, b)?;
    Ok(spread_rows(&mb, &idx, m))
}

pub(crate) fn spread_rows(mb: &MatrixE, idx: &[usize], m: &MatrixE) -> MatrixE {
    let n = m.cols();
    let mut out = MatrixE::zeros(n, n)
        .with_labels(m.labels().to_vec())
        .expect("labels already validated");
    for (k, &pos) in idx.iter().enumerate() {
        for j in 0..n {
            out[(pos, j)] = mb[(k, j)].clone();
        }
    }
    out
}

/// Removes the column labelled `e`.
pub fn delete(m: &MatrixE, e: Label) -> Result<MatrixE> {
    let j = m.label_index(e)?;
    let out = m.delete_column(j);
    if out.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    Ok(out)
}

/// Rank of the column set `labels`.
pub fn rank_of(m: &MatrixE, labels: &[Label]) -> Result<usize> {
    Ok(m.select_columns(labels)?.rank())
}

/// Brute-force check for the absence of 1- and 2-separations.
pub fn verify_three_connected(m: &MatrixE) -> Result<bool> {
    let n = m.cols();
    if n > THREE_CONNECTED_GUARD {
        return Err(Error::SizeGuard {
            what: "3-connectivity check",
            guard: THREE_CONNECTED_GUARD,
            actual: n,
        });
    }
    let full = (1usize << n) - 1;
    let ranks: Vec<usize> = (0..=full)
        .into_par_iter()
        .map(|mask| {
            let cols: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            m.select_column_indices(&cols).rank()
        })
        .collect();
    let r = ranks[full];
    for mask in 1..full {
        let x = mask.count_ones() as usize;
        let y = n - x;
        let lambda = ranks[mask] + ranks[full ^ mask];
        for k in 1..=2 {
            if x >= k && y >= k && lambda < r + k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Connected components of the matroid, via fundamental circuits of the
/// first basis.
pub fn is_connected(m: &MatrixE) -> Result<bool> {
    let n = m.cols();
    if n > THREE_CONNECTED_GUARD {
        return Err(Error::SizeGuard {
            what: "connectivity check",
            guard: THREE_CONNECTED_GUARD,
            actual: n,
        });
    }
    let r = m.rank();
    for mask in 1..(1usize << n) - 1 {
        let xs: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let ys: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 0).collect();
        if m.select_column_indices(&xs).rank() + m.select_column_indices(&ys).rank() == r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy first basis in column order.
pub fn first_basis(m: &MatrixE) -> Result<Basis> {
    require_full_row_rank(m)?;
    let cols = m.transpose().independent_rows();
    Ok(Basis::new(cols.iter().map(|&j| m.labels()[j]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn is_identity_on(m: &MatrixE, idx: &[usize]) -> bool {
        idx.iter().enumerate().all(|(k, &j)| {
            (0..m.rows()).all(|i| {
                let want = if i == k { Eisenstein::one() } else { Eisenstein::zero() };
                m[(i, j)] == want
            })
        })
    }

    fn e(a: i64, b: i64) -> Eisenstein {
        Eisenstein::new(a, b)
    }

    fn u24() -> MatrixE {
        MatrixE::from_rows(vec![
            vec![e(1, 0), e(0, 0), e(1, 0), e(1, 0)],
            vec![e(0, 0), e(1, 0), e(1, 0), e(0, 1)],
        ])
        .unwrap()
    }

    // reduced incidence matrix of the triangle, vertex 3 deleted
    fn triangle() -> MatrixE {
        MatrixE::from_rows(vec![
            vec![e(1, 0), e(1, 0), e(0, 0)],
            vec![e(-1, 0), e(0, 0), e(1, 0)],
        ])
        .unwrap()
    }

    #[test]
    fn u24_bases() {
        let bases = enumerate_bases(&u24()).unwrap();
        assert_eq!(bases.len(), 6);
        assert_eq!(bases[0].elements, vec![1, 2]);
        assert_eq!(bases[5].elements, vec![3, 4]);
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let m = u24().vstack(&u24().select_rows(&[0])).unwrap();
        assert!(matches!(
            enumerate_bases(&m),
            Err(Error::RankDeficient { rank: 2, rows: 3 })
        ));
    }

    #[test]
    fn basis_count_mismatch_for_non_h() {
        let m = MatrixE::from_rows(vec![vec![e(1, 0), e(2, 0)]]).unwrap();
        assert!(matches!(
            enumerate_bases(&m),
            Err(Error::BasisCountMismatch { count: 2, .. })
        ));
    }

    #[test]
    fn standard_rep_u24() {
        let m = u24();
        for b in enumerate_bases(&m).unwrap() {
            let mb = standard_rep(&m, &b).unwrap();
            let idx = basis_indices(&m, &b).unwrap();
            assert!(is_identity_on(&mb, &idx));
            assert!(mb.entries().iter().all(|x| x.is_zero() || x.is_unit()));
            // same row space: stacking does not raise the rank
            assert_eq!(m.vstack(&mb).unwrap().rank(), 2);
        }
        let b34 = Basis::new(vec![3, 4]);
        let mb = standard_rep(&m, &b34).unwrap();
        let sub = m.select_columns(&[3, 4]).unwrap();
        assert_eq!(sub.mul(&mb).unwrap(), m);
        assert!(matches!(
            standard_rep(&m, &Basis::new(vec![1, 1])),
            Err(Error::NotABasis(_))
        ));
    }

    #[test]
    fn cocircuits_match_exchange_oracle() {
        let m = u24();
        for b in enumerate_bases(&m).unwrap() {
            for &i in &b.elements {
                let f = fundamental_cocircuit(&m, &b, i).unwrap();
                assert_eq!(f.support, exchange_set(&m, &b, i).unwrap());
                assert_eq!(f.support.len(), 3);
                let pos = m.label_index(i).unwrap();
                assert_eq!(f.entries[pos], Eisenstein::one());
            }
        }
        let t = triangle();
        let b = Basis::new(vec![1, 2]);
        let f = fundamental_cocircuit(&t, &b, 1).unwrap();
        assert_eq!(f.support, BTreeSet::from([1, 3]));
        assert_eq!(
            fundamental_cocircuit(&t, &b, 3),
            Err(Error::NotInBasis(3))
        );
    }

    #[test]
    fn n_b_examples() {
        let m = u24();
        let b = Basis::new(vec![2, 4]);
        let nb = n_b_matrix(&m, &b).unwrap();
        for row in m.row_vectors() {
            assert_eq!(nb.left_mul_vec(&row).unwrap(), row);
        }
        // (-1, -1, 1, 0) is orthogonal to the row space, so N_B kills it
        let v = vec![e(-1, 0), e(-1, 0), e(1, 0), e(0, 0)];
        let vh: Vec<Eisenstein> = v.iter().map(Eisenstein::conj).collect();
        for i in 0..4 {
            let s: Eisenstein = (0..4).map(|j| &nb[(i, j)] * &vh[j]).sum();
            assert!(s.is_zero());
        }
        let id = MatrixE::identity(3);
        let all = Basis::new(vec![1, 2, 3]);
        assert_eq!(n_b_matrix(&id, &all).unwrap(), id);
    }

    #[test]
    fn delete_and_ranks() {
        let m = u24();
        let d = delete(&m, 2).unwrap();
        assert_eq!(d.labels(), &[1, 3, 4]);
        assert_eq!(enumerate_bases(&d).unwrap().len(), 3);
        assert_eq!(rank_of(&m, &[1, 3]).unwrap(), 2);
        let single = MatrixE::from_rows(vec![vec![e(1, 0)]]).unwrap();
        assert_eq!(delete(&single, 1), Err(Error::ZeroMatrix));
    }

    #[test]
    fn three_connectivity() {
        assert!(verify_three_connected(&u24()).unwrap());
        let t = triangle();
        let z = MatrixE::zeros(2, 3);
        let top = t.vstack(&z).unwrap();
        let bottom = z.vstack(&t).unwrap();
        let mut rows = vec![];
        for i in 0..4 {
            let mut r = top.row(i).to_vec();
            r.extend_from_slice(bottom.row(i));
            rows.push(r);
        }
        let two_triangles = MatrixE::from_rows(rows).unwrap();
        assert!(!verify_three_connected(&two_triangles).unwrap());
        assert!(!is_connected(&two_triangles).unwrap());
        assert!(is_connected(&u24()).unwrap());
        assert!(matches!(
            verify_three_connected(&MatrixE::identity(15)),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn first_basis_is_greedy() {
        let m = u24();
        assert_eq!(first_basis(&m).unwrap().elements, vec![1, 2]);
        let swapped = crate::hmatrix::apply_op(&m, &crate::hmatrix::EquivalenceOp::SwapCols(0, 3)).unwrap();
        assert_eq!(first_basis(&swapped).unwrap().elements, vec![4, 2]);
    }
}
