//! Builders: direct sums, 2-sums, the built-in families and graphic
//! representations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::Zero;

use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::hmatrix::{apply_op, minor_count, EquivalenceOp, HRepresentation, ValidationMode, MINOR_GUARD};
use crate::matrix::{default_labels, Label, MatrixE};

pub use crate::io::{read_matrix, write_matrix};

fn check_disjoint(a: &[Label], b: &[Label]) -> Result<()> {
    let left: BTreeSet<Label> = a.iter().copied().collect();
    match b.iter().find(|l| left.contains(l)) {
        Some(&l) => Err(Error::DuplicateLabel(l)),
        None => Ok(()),
    }
}

/// Block-diagonal sum; the column labels must be disjoint.
pub fn direct_sum(m1: &MatrixE, m2: &MatrixE) -> Result<MatrixE> {
    check_disjoint(m1.labels(), m2.labels())?;
    let (r1, n1) = m1.shape();
    let (r2, n2) = m2.shape();
    let mut out = MatrixE::zeros(r1 + r2, n1 + n2);
    for i in 0..r1 {
        for j in 0..n1 {
            out[(i, j)] = m1[(i, j)].clone();
        }
    }
    for i in 0..r2 {
        for j in 0..n2 {
            out[(r1 + i, n1 + j)] = m2[(i, j)].clone();
        }
    }
    let labels = m1.labels().iter().chain(m2.labels()).copied().collect();
    out.with_labels(labels)
}

/// Restricts to independent rows and pivots so that the column `p` becomes
/// the first standard unit vector.
fn normalize_basepoint(m: &MatrixE, p: Label) -> Result<MatrixE> {
    let j = m.label_index(p)?;
    let m = m.full_row_rank_restriction()?;
    if m.column(j).iter().all(Zero::is_zero) {
        return Err(Error::LoopBasepoint(p));
    }
    if m.delete_column(j).rank() < m.rows() {
        return Err(Error::ColoopBasepoint(p));
    }
    let i = (0..m.rows()).find(|&i| !m[(i, j)].is_zero()).expect("column is nonzero");
    let mut out = m;
    if i != 0 {
        out.swap_rows(0, i);
    }
    apply_op(&out, &EquivalenceOp::Pivot { row: 0, col: j })
}

/// 2-sum along the basepoints `p1` and `p2`. After normalizing each input to
/// `[e_1 | x; A]` and `[e_1 | y; B]` (basepoint column first, shown apart),
/// the result is `[A 0; x y; 0 B]` with both basepoints removed.
pub fn two_sum(m1: &MatrixE, p1: Label, m2: &MatrixE, p2: Label) -> Result<HRepresentation> {
    let a = normalize_basepoint(m1, p1)?;
    let b = normalize_basepoint(m2, p2)?;
    let ja = a.label_index(p1)?;
    let jb = b.label_index(p2)?;
    let a = a.delete_column(ja);
    let b = b.delete_column(jb);
    check_disjoint(a.labels(), b.labels())?;

    let (r1, n1) = a.shape();
    let (r2, n2) = b.shape();
    let rows = r1 + r2 - 1;
    let mut out = MatrixE::zeros(rows, n1 + n2);
    for i in 1..r1 {
        for j in 0..n1 {
            out[(i - 1, j)] = a[(i, j)].clone();
        }
    }
    for j in 0..n1 {
        out[(r1 - 1, j)] = a[(0, j)].clone();
    }
    for j in 0..n2 {
        out[(r1 - 1, n1 + j)] = b[(0, j)].clone();
    }
    for i in 1..r2 {
        for j in 0..n2 {
            out[(r1 - 1 + i, n1 + j)] = b[(i, j)].clone();
        }
    }
    let labels = a.labels().iter().chain(b.labels()).copied().collect();
    let out = out.with_labels(labels)?;
    let rank = out.rank();
    if rank != rows {
        return Err(Error::RankDeficient { rank, rows });
    }
    let mode = if minor_count(out.rows(), out.cols()) <= MINOR_GUARD {
        ValidationMode::Full
    } else {
        ValidationMode::Maximal
    };
    HRepresentation::validated(out, mode)
}

/// A built-in family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    U24,
    Ag23,
    Ag23Del(Label),
    T(usize),
    Whirl(usize),
    CounterexampleM,
    CounterexampleMPrime,
    GraphicComplete(usize),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::U24 => write!(f, "u24"),
            FamilySpec::Ag23 => write!(f, "ag23"),
            FamilySpec::Ag23Del(e) => write!(f, "ag23_del:{e}"),
            FamilySpec::T(r) => write!(f, "t_r:{r}"),
            FamilySpec::Whirl(r) => write!(f, "whirl:{r}"),
            FamilySpec::CounterexampleM => write!(f, "counterexample_m"),
            FamilySpec::CounterexampleMPrime => write!(f, "counterexample_mprime"),
            FamilySpec::GraphicComplete(m) => write!(f, "graphic_complete:{m}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let need = |p: Option<&str>| -> Result<usize> {
            let p = p.ok_or_else(|| Error::Family(format!("{name} needs a parameter, e.g. {name}:3")))?;
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Family(format!("bad parameter {p:?} for {name}")))
        };
        let none = |p: Option<&str>| -> Result<()> {
            match p {
                Some(_) => Err(Error::Family(format!("{name} takes no parameter"))),
                None => Ok(()),
            }
        };
        let spec = match name {
            "u24" => none(param).map(|_| FamilySpec::U24)?,
            "ag23" => none(param).map(|_| FamilySpec::Ag23)?,
            "ag23_del" => FamilySpec::Ag23Del(need(param)? as Label),
            "t_r" => FamilySpec::T(need(param)?),
            "whirl" => FamilySpec::Whirl(need(param)?),
            "counterexample_m" => none(param).map(|_| FamilySpec::CounterexampleM)?,
            "counterexample_mprime" => none(param).map(|_| FamilySpec::CounterexampleMPrime)?,
            "graphic_complete" => FamilySpec::GraphicComplete(need(param)?),
            _ => return Err(Error::Family(format!("unknown family {name:?}"))),
        };
        spec.check()?;
        Ok(spec)
    }
}

impl FamilySpec {
    fn check(&self) -> Result<()> {
        match *self {
            FamilySpec::T(r) | FamilySpec::Whirl(r) if r < 2 => {
                Err(Error::Family(format!("{self} needs r >= 2")))
            }
            FamilySpec::GraphicComplete(m) if m < 2 => Err(Error::Family(format!("{self} needs m >= 2"))),
            FamilySpec::Ag23Del(e) if !(1..=9).contains(&e) => {
                Err(Error::Family(format!("{self}: AG(2,3) has elements 1..9")))
            }
            _ => Ok(()),
        }
    }
}

fn e(a: i64, b: i64) -> Eisenstein {
    Eisenstein::new(a, b)
}

fn omega_pow(k: i64) -> Eisenstein {
    crate::eisenstein::SixthRoot::new(k).to_eisenstein()
}

pub fn u24() -> MatrixE {
    MatrixE::from_rows(vec![
        vec![e(1, 0), e(0, 0), e(1, 0), e(1, 0)],
        vec![e(0, 0), e(1, 0), e(1, 0), e(0, 1)],
    ])
    .expect("rectangular")
}

pub fn ag23() -> MatrixE {
    let w = Eisenstein::omega();
    let wb = w.conj();
    let (one, zero) = (e(1, 0), e(0, 0));
    MatrixE::from_rows(vec![
        vec![one.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone(), one.clone(), one.clone(), one.clone(), one.clone()],
        vec![zero.clone(), one.clone(), zero.clone(), one.clone(), one.clone(), zero.clone(), wb.clone(), one.clone(), wb.clone()],
        vec![zero.clone(), zero, one, e(0, 0), e(1, 0), -&w, -&w, wb.clone(), wb],
    ])
    .expect("rectangular")
}

/// `[1 | 0 | 1...1 | ω...ω | 0; 0 | I | I | I | D]` with `D` the columns
/// `e_i - e_j` for `i < j`, lexicographically.
pub fn t_r(r: usize) -> Result<MatrixE> {
    FamilySpec::T(r).check()?;
    let k = r - 1;
    let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
    let n = 1 + 3 * k + pairs.len();
    let mut m = MatrixE::zeros(r, n);
    m[(0, 0)] = e(1, 0);
    for t in 0..k {
        m[(0, 1 + k + t)] = e(1, 0);
        m[(0, 1 + 2 * k + t)] = Eisenstein::omega();
        for block in 0..3 {
            m[(1 + t, 1 + block * k + t)] = e(1, 0);
        }
    }
    for (c, &(i, j)) in pairs.iter().enumerate() {
        m[(1 + i, 1 + 3 * k + c)] = e(1, 0);
        m[(1 + j, 1 + 3 * k + c)] = e(-1, 0);
    }
    Ok(m)
}

/// Corner parameter of the whirl: `ω` for even rank, `ω²` for odd.
pub fn whirl_alpha(r: usize) -> Eisenstein {
    if r % 2 == 0 {
        omega_pow(1)
    } else {
        omega_pow(2)
    }
}

/// `[I_r | W]` where column `j < r` of `W` has ones in rows `j, j+1` and the
/// last column has `α` in the first row and 1 in the last.
pub fn whirl(r: usize) -> Result<MatrixE> {
    FamilySpec::Whirl(r).check()?;
    let mut m = MatrixE::zeros(r, 2 * r);
    for i in 0..r {
        m[(i, i)] = e(1, 0);
    }
    for j in 0..r - 1 {
        m[(j, r + j)] = e(1, 0);
        m[(j + 1, r + j)] = e(1, 0);
    }
    m[(0, 2 * r - 1)] = whirl_alpha(r);
    m[(r - 1, 2 * r - 1)] = m[(r - 1, 2 * r - 1)].clone() + e(1, 0);
    Ok(m)
}

/// The six columns shared by the two counterexample blocks.
fn counterexample_prefix() -> Vec<Vec<Eisenstein>> {
    let w = Eisenstein::omega();
    let w2 = omega_pow(2);
    vec![
        vec![e(1, 0), e(0, 0), e(0, 0), e(0, 0), -&w2, w2.clone()],
        vec![e(0, 0), e(1, 0), e(0, 0), e(0, 0), w2.clone(), -&w2],
        vec![e(0, 0), e(0, 0), e(1, 0), e(0, 0), e(1, 0), e(-1, 0)],
        vec![e(0, 0), e(0, 0), e(0, 0), e(1, 0), -&w2, w],
    ]
}

fn counterexample_block(extra: usize) -> MatrixE {
    let tail = [e(1, 0), e(0, 0), e(1, 0), e(0, 0)];
    let rows = counterexample_prefix()
        .into_iter()
        .zip(tail)
        .map(|(mut row, t)| {
            row.extend(std::iter::repeat(t).take(extra));
            row
        })
        .collect();
    MatrixE::from_rows(rows).expect("rectangular")
}

/// The 4 x 8 block `M_1`.
pub fn counterexample_m1() -> MatrixE {
    counterexample_block(2)
}

/// The 4 x 15 block `M_8`.
pub fn counterexample_m8() -> MatrixE {
    counterexample_block(9)
}

/// `M_1 ⊕_2 M_8` (or with `M_8` conjugated) along the first columns, with
/// the 21 remaining columns relabelled 1..21.
pub fn counterexample(conjugate_second: bool) -> Result<MatrixE> {
    let m1 = counterexample_m1();
    let mut m8 = counterexample_m8();
    if conjugate_second {
        m8 = m8.conj();
    }
    let shift = m1.cols() as Label;
    let shifted = m8.labels().iter().map(|l| l + shift).collect();
    let m8 = m8.with_labels(shifted)?;
    let sum = two_sum(&m1, 1, &m8, 1 + shift)?.into_matrix();
    let n = sum.cols();
    sum.with_labels(default_labels(n))
}

/// Reduced incidence matrix of a graph on `0..vertices`, with the row of the
/// last vertex removed. Edge `(u, v)` gets `+1` at `u` and `-1` at `v`.
pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<MatrixE> {
    if vertices < 2 {
        return Err(Error::Family("a graph needs at least 2 vertices".into()));
    }
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices || u == v) {
        return Err(Error::Family(format!("bad edge ({u}, {v})")));
    }
    let mut m = MatrixE::zeros(vertices - 1, edges.len());
    for (k, &(u, v)) in edges.iter().enumerate() {
        if u < vertices - 1 {
            m[(u, k)] = e(1, 0);
        }
        if v < vertices - 1 {
            m[(v, k)] = e(-1, 0);
        }
    }
    Ok(m)
}

pub fn graphic_complete(m: usize) -> Result<MatrixE> {
    FamilySpec::GraphicComplete(m).check()?;
    let edges: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
    graphic(m, &edges)
}

pub fn cycle(n: usize) -> Result<MatrixE> {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graphic(n, &edges)
}

/// Builds the family's matrix. Only entries are checked here; callers pick a
/// validation mode.
pub fn gen_family(spec: FamilySpec) -> Result<HRepresentation> {
    spec.check()?;
    let m = match spec {
        FamilySpec::U24 => u24(),
        FamilySpec::Ag23 => ag23(),
        FamilySpec::Ag23Del(l) => crate::matroid::delete(&ag23(), l)?,
        FamilySpec::T(r) => t_r(r)?,
        FamilySpec::Whirl(r) => whirl(r)?,
        FamilySpec::CounterexampleM => counterexample(false)?,
        FamilySpec::CounterexampleMPrime => counterexample(true)?,
        FamilySpec::GraphicComplete(m) => graphic_complete(m)?,
    };
    HRepresentation::new(m)
}
