//! H-matrix validation and the equivalence operations on representations.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::eisenstein::{Eisenstein, SixthRoot};
use crate::error::{Error, Result};
use crate::matrix::{CompactMatrix, MatrixE};

/// Upper bound on the number of minors either validation mode will evaluate.
pub const MINOR_GUARD: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValidationMode {
    /// Entries in H only.
    Entries,
    /// Entries in H and every `r x r` minor zero or of unit norm.
    Maximal,
    /// Every square minor in H.
    Full,
}

impl fmt::Display for ValidationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationMode::Entries => "entries",
            ValidationMode::Maximal => "maximal",
            ValidationMode::Full => "full",
        })
    }
}

impl FromStr for ValidationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entries" => Ok(ValidationMode::Entries),
            "maximal" => Ok(ValidationMode::Maximal),
            "full" => Ok(ValidationMode::Full),
            other => Err(Error::Op(format!("unknown validation mode {other:?}"))),
        }
    }
}

/// A minor that fails validation. Indices are 0-based positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Eisenstein,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).join(",");
        write!(
            f,
            "minor rows {{{}}} cols {{{}}} = {}",
            one_based(&self.rows),
            one_based(&self.cols),
            self.value
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub mode: ValidationMode,
    pub minors_checked: u128,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Total number of square minors of an `m x n` matrix.
pub fn minor_count(m: usize, n: usize) -> u128 {
    // sum_k C(m,k) C(n,k) = C(m+n, m), minus the empty minor
    binomial(m + n, m) - 1
}

fn in_h(x: &Eisenstein) -> bool {
    x.is_zero() || x.is_unit()
}

fn small_in_h((a, b): (i64, i64)) -> bool {
    matches!((a, b), (0, 0) | (1, 0) | (0, 1) | (-1, 1) | (-1, 0) | (0, -1) | (1, -1))
}

struct MinorScanner<'a> {
    m: &'a MatrixE,
    compact: Option<CompactMatrix>,
}

impl<'a> MinorScanner<'a> {
    fn new(m: &'a MatrixE) -> Self {
        MinorScanner {
            m,
            compact: CompactMatrix::from_matrix(m),
        }
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Eisenstein {
        if let Some(c) = &self.compact {
            if let Some((a, b)) = c.minor_det(rows, cols) {
                return Eisenstein::new(a, b);
            }
        }
        self.m.submatrix(rows, cols).det_bareiss().expect("square minor")
    }

    fn bad(&self, rows: &[usize], cols: &[usize], ok: fn(&Eisenstein) -> bool) -> Option<Eisenstein> {
        if let Some(c) = &self.compact {
            if let Some(v) = c.minor_det(rows, cols) {
                return (!small_in_h(v)).then(|| Eisenstein::new(v.0, v.1));
            }
        }
        let v = self.minor(rows, cols);
        (!ok(&v)).then_some(v)
    }

    /// First failing `k x k` minor in lexicographic (rows, cols) order.
    fn scan(&self, k: usize) -> Option<Violation> {
        let col_sets: Vec<Vec<usize>> = (0..self.m.cols()).combinations(k).collect();
        for rows in (0..self.m.rows()).combinations(k) {
            let hit = col_sets
                .par_iter()
                .find_map_first(|cols| self.bad(&rows, cols, in_h).map(|v| (cols.clone(), v)));
            if let Some((cols, value)) = hit {
                return Some(Violation { rows, cols, value });
            }
        }
        None
    }
}

/// Checks the H-matrix conditions of the given mode. The first violation in
/// lexicographic (size, rows, cols) order is reported.
pub fn validate(m: &MatrixE, mode: ValidationMode) -> Result<ValidationReport> {
    let (rows, cols) = m.shape();
    let scanner = MinorScanner::new(m);
    let mut checked = (rows * cols) as u128;
    if let Some(v) = scanner.scan(1) {
        return Ok(ValidationReport {
            mode,
            minors_checked: checked,
            violation: Some(v),
        });
    }
    let sizes: Vec<usize> = match mode {
        ValidationMode::Entries => vec![],
        ValidationMode::Full => {
            let count = minor_count(rows, cols);
            if count > MINOR_GUARD {
                return Err(Error::MinorGuard {
                    count,
                    guard: MINOR_GUARD,
                });
            }
            (2..=rows.min(cols)).collect()
        }
        ValidationMode::Maximal => {
            let r = if m.is_zero() { 0 } else { m.rank() };
            let count = binomial(rows, r) * binomial(cols, r);
            if count > MINOR_GUARD {
                return Err(Error::MinorGuard {
                    count,
                    guard: MINOR_GUARD,
                });
            }
            if r >= 2 {
                vec![r]
            } else {
                vec![]
            }
        }
    };
    for k in sizes {
        checked += binomial(rows, k) * binomial(cols, k);
        if let Some(v) = scanner.scan(k) {
            return Ok(ValidationReport {
                mode,
                minors_checked: checked,
                violation: Some(v),
            });
        }
    }
    Ok(ValidationReport {
        mode,
        minors_checked: checked,
        violation: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValidationLevel {
    None,
    Entries,
    Maximal,
    Full,
}

impl From<ValidationMode> for ValidationLevel {
    fn from(m: ValidationMode) -> Self {
        match m {
            ValidationMode::Entries => ValidationLevel::Entries,
            ValidationMode::Maximal => ValidationLevel::Maximal,
            ValidationMode::Full => ValidationLevel::Full,
        }
    }
}

/// A matrix with entries in H, tagged with how far it has been validated.
#[derive(Clone, Debug, PartialEq)]
pub struct HRepresentation {
    matrix: MatrixE,
    level: ValidationLevel,
}

impl HRepresentation {
    /// Wraps `m` after checking that every entry lies in H.
    pub fn new(m: MatrixE) -> Result<Self> {
        if let Some(x) = m.entries().iter().find(|x| !in_h(x)) {
            return Err(Error::NotHMatrix(format!("entry {x} is not in H")));
        }
        Ok(HRepresentation {
            matrix: m,
            level: ValidationLevel::Entries,
        })
    }

    pub fn validated(m: MatrixE, mode: ValidationMode) -> Result<Self> {
        let report = validate(&m, mode)?;
        match report.violation {
            Some(v) => Err(Error::NotHMatrix(v.to_string())),
            None => Ok(HRepresentation {
                matrix: m,
                level: mode.into(),
            }),
        }
    }

    pub fn matrix(&self) -> &MatrixE {
        &self.matrix
    }

    pub fn into_matrix(self) -> MatrixE {
        self.matrix
    }

    pub fn level(&self) -> ValidationLevel {
        self.level
    }

    /// All operations preserve every validation level.
    pub fn apply(&self, op: &EquivalenceOp) -> Result<Self> {
        Ok(HRepresentation {
            matrix: apply_op(&self.matrix, op)?,
            level: self.level,
        })
    }

    pub fn conjugate(&self) -> Self {
        HRepresentation {
            matrix: conjugate_rep(&self.matrix),
            level: self.level,
        }
    }
}

/// One step of representation equivalence. Indices are 0-based; the text
/// form uses 1-based indices, e.g. `scale_row 2 w^3` or `pivot 3 7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceOp {
    ScaleRow { row: usize, unit: SixthRoot },
    ScaleCol { col: usize, unit: SixthRoot },
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    Pivot { row: usize, col: usize },
}

impl EquivalenceOp {
    /// The same operation with its unit conjugated.
    pub fn conjugated(self) -> Self {
        match self {
            EquivalenceOp::ScaleRow { row, unit } => EquivalenceOp::ScaleRow {
                row,
                unit: unit.conj(),
            },
            EquivalenceOp::ScaleCol { col, unit } => EquivalenceOp::ScaleCol {
                col,
                unit: unit.conj(),
            },
            other => other,
        }
    }
}

impl fmt::Display for EquivalenceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceOp::ScaleRow { row, unit } => write!(f, "scale_row {} {}", row + 1, unit),
            EquivalenceOp::ScaleCol { col, unit } => write!(f, "scale_col {} {}", col + 1, unit),
            EquivalenceOp::SwapRows(i, k) => write!(f, "swap_rows {} {}", i + 1, k + 1),
            EquivalenceOp::SwapCols(j, l) => write!(f, "swap_cols {} {}", j + 1, l + 1),
            EquivalenceOp::Pivot { row, col } => write!(f, "pivot {} {}", row + 1, col + 1),
        }
    }
}

impl FromStr for EquivalenceOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Op(s.trim().to_string());
        let index = |t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(bad()),
            }
        };
        let unit = |t: &str| -> Result<SixthRoot> {
            let x: Eisenstein = t.parse()?;
            x.as_unit().ok_or(Error::NotAUnit(x))
        };
        match parts.as_slice() {
            ["scale_row", i, u] => Ok(EquivalenceOp::ScaleRow {
                row: index(i)?,
                unit: unit(u)?,
            }),
            ["scale_col", j, u] => Ok(EquivalenceOp::ScaleCol {
                col: index(j)?,
                unit: unit(u)?,
            }),
            ["swap_rows", i, k] => Ok(EquivalenceOp::SwapRows(index(i)?, index(k)?)),
            ["swap_cols", j, l] => Ok(EquivalenceOp::SwapCols(index(j)?, index(l)?)),
            ["pivot", i, j] => Ok(EquivalenceOp::Pivot {
                row: index(i)?,
                col: index(j)?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Parses an op script: one op per line, blank lines and `#` comments ignored.
pub fn parse_op_script(text: &str) -> Result<Vec<EquivalenceOp>> {
    let mut ops = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let op = t.parse().map_err(|e: Error| Error::Parse {
            line: n + 1,
            column: line.find(t).unwrap_or(0) + 1,
            message: e.to_string(),
        })?;
        ops.push(op);
    }
    Ok(ops)
}

fn check_row(m: &MatrixE, i: usize) -> Result<()> {
    if i >= m.rows() {
        return Err(Error::Index(format!("row {} of {}", i + 1, m.rows())));
    }
    Ok(())
}

fn check_col(m: &MatrixE, j: usize) -> Result<()> {
    if j >= m.cols() {
        return Err(Error::Index(format!("column {} of {}", j + 1, m.cols())));
    }
    Ok(())
}

/// Applies one equivalence operation.
///
/// A pivot on `(i, j)` scales row `i` by the inverse of the (unit) entry and
/// then clears the rest of column `j` with multiples of row `i`.
pub fn apply_op(m: &MatrixE, op: &EquivalenceOp) -> Result<MatrixE> {
    let mut out = m.clone();
    match *op {
        EquivalenceOp::ScaleRow { row, unit } => {
            check_row(m, row)?;
            out.scale_row(row, &unit.to_eisenstein());
        }
        EquivalenceOp::ScaleCol { col, unit } => {
            check_col(m, col)?;
            out.scale_col(col, &unit.to_eisenstein());
        }
        EquivalenceOp::SwapRows(i, k) => {
            check_row(m, i)?;
            check_row(m, k)?;
            out.swap_rows(i, k);
        }
        EquivalenceOp::SwapCols(j, l) => {
            check_col(m, j)?;
            check_col(m, l)?;
            out.swap_cols(j, l);
        }
        EquivalenceOp::Pivot { row, col } => {
            check_row(m, row)?;
            check_col(m, col)?;
            let entry = &m[(row, col)];
            if entry.is_zero() {
                return Err(Error::ZeroPivot { row, col });
            }
            let inv = entry
                .as_unit()
                .ok_or_else(|| Error::NotAUnit(entry.clone()))?
                .inverse()
                .to_eisenstein();
            out.scale_row(row, &inv);
            for i in 0..out.rows() {
                if i != row && !out[(i, col)].is_zero() {
                    let f = -out[(i, col)].clone();
                    out.row_op_add(i, row, &f);
                }
            }
            debug_assert!(out[(row, col)].is_one());
        }
    }
    Ok(out)
}

pub fn apply_ops(m: &MatrixE, ops: &[EquivalenceOp]) -> Result<MatrixE> {
    ops.iter().try_fold(m.clone(), |acc, op| apply_op(&acc, op))
}

/// Entrywise complex conjugate.
pub fn conjugate_rep(m: &MatrixE) -> MatrixE {
    m.conj()
}

/// Whether every entry is a rational integer in `{0, 1, -1}`.
pub fn is_signed_zero_one(m: &MatrixE) -> bool {
    m.entries()
        .iter()
        .all(|x| x.is_real() && x.norm() <= BigInt::one())
}
