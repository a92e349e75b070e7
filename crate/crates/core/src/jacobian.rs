//! The Jacobian `E^n / (Λ ⊕ Λ*)` of a representation, computed through the
//! Smith normal form of the Laplacian `M M^H`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::eisenstein::{Eisenstein, EisensteinRational};
use crate::error::{Error, Result};
use crate::hmatrix::{is_signed_zero_one, validate, ValidationMode};
use crate::matrix::{MatrixE, MatrixZ};
use crate::matroid::first_basis;
use crate::snf::{snf, SnfResult};

/// `M M^H` for a full-row-rank `M`.
pub fn laplacian(m: &MatrixE) -> Result<MatrixE> {
    let rank = m.rank();
    if rank != m.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: m.rows(),
        });
    }
    m.mul(&m.conj_transpose())
}

#[derive(Clone, Debug)]
pub struct JacobianE {
    /// Canonical nonunit divisors, in divisibility order.
    pub divisors: Vec<Eisenstein>,
    /// Size of the Laplacian, i.e. the rank of the matroid.
    pub rank: usize,
    pub order: BigInt,
    pub snf: SnfResult<Eisenstein>,
    pub laplacian: MatrixE,
    /// Full-row-rank representation the Laplacian was built from.
    pub representation: MatrixE,
}

impl JacobianE {
    /// All `r` divisors, units included.
    pub fn full_divisors(&self) -> &[Eisenstein] {
        &self.snf.divisors
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Isomorphism as E-modules.
    pub fn same_module(&self, other: &JacobianE) -> bool {
        self.divisors == other.divisors
    }
}

impl fmt::Display for JacobianE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("E/({d})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Jacobian of `m`; a rank-deficient `m` is first restricted to independent
/// rows.
pub fn jacobian_of(m: &MatrixE) -> Result<JacobianE> {
    let rep = m.full_row_rank_restriction()?;
    let lap = laplacian(&rep)?;
    let res = snf(&lap);
    if res.rank != rep.rows() {
        return Err(Error::Singular);
    }
    let mut order = BigInt::one();
    for d in &res.divisors {
        if !d.sixth_power_is_integer() {
            return Err(Error::Verification(format!(
                "divisor {d} has a non-integral sixth power"
            )));
        }
        order *= d.norm();
    }
    let divisors = res.divisors.iter().filter(|d| !d.is_unit()).cloned().collect();
    Ok(JacobianE {
        divisors,
        rank: rep.rows(),
        order,
        snf: res,
        laplacian: lap,
        representation: rep,
    })
}

pub fn order_of(j: &JacobianE) -> BigInt {
    j.order.clone()
}

/// A finite abelian group by its invariant factors `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let nontrivial: Vec<BigInt> = orders.iter().filter(|d| !d.is_one()).map(|d| d.abs()).collect();
        if nontrivial.is_empty() {
            return AbelianGroup {
                invariant_factors: vec![],
            };
        }
        let diag = MatrixZ::diagonal(&nontrivial);
        let invariant_factors = snf(&diag).divisors.into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { invariant_factors }
    }

    /// `E/(α)` as an abelian group: the cokernel of multiplication by `α` on
    /// the basis `{1, ω}`.
    pub fn of_quotient(alpha: &Eisenstein) -> Self {
        let (a, b) = (&alpha.a, &alpha.b);
        let mult = MatrixZ::from_rows(vec![vec![a.clone(), -b], vec![b.clone(), a + b]]).expect("2x2");
        Self::from_cyclic_orders(&snf(&mult).divisors)
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// `G ⊕ G`.
    pub fn doubled(&self) -> Self {
        let mut f: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .flat_map(|d| [d.clone(), d.clone()])
            .collect();
        f.sort();
        AbelianGroup { invariant_factors: f }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn abelianize(j: &JacobianE) -> AbelianGroup {
    let orders: Vec<BigInt> = j
        .divisors
        .iter()
        .flat_map(|d| AbelianGroup::of_quotient(d).invariant_factors)
        .collect();
    AbelianGroup::from_cyclic_orders(&orders)
}

/// If `v` lies in the Eisenstein row space of `m`, returns `z` with
/// `z M' = v`, where `M'` is the full-row-rank restriction of `m`.
pub fn in_lambda_star(m: &MatrixE, v: &[Eisenstein]) -> Result<Option<Vec<Eisenstein>>> {
    if v.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.cols()
        )));
    }
    let rep = m.full_row_rank_restriction()?;
    let b = first_basis(&rep)?;
    let idx: Vec<usize> = b
        .elements
        .iter()
        .map(|&l| rep.label_index(l))
        .collect::<Result<_>>()?;
    let inv = rep.select_column_indices(&idx).inverse()?;
    let vb: Vec<EisensteinRational> = idx.iter().map(|&j| EisensteinRational::from(&v[j])).collect();
    let z = inv.left_mul_vec(&vb)?;
    let Some(z) = z.iter().map(EisensteinRational::to_eisenstein).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    Ok((rep.left_mul_vec(&z)? == v).then_some(z))
}

/// `v M^H = 0`.
pub fn in_lambda(m: &MatrixE, v: &[Eisenstein]) -> Result<bool> {
    Ok(m.conj_transpose().left_mul_vec(v)?.iter().all(Zero::is_zero))
}

/// Canonical representative of `x` modulo the ideal `(α)`: the lattice
/// `αE` is put in Hermite form on the coordinates `(a, b)` of `a + bω`, and
/// `x` is reduced into the resulting fundamental box.
pub fn reduce_mod(x: &Eisenstein, alpha: &Eisenstein) -> Eisenstein {
    if alpha.is_zero() {
        return x.clone();
    }
    let (a, b) = (&alpha.a, &alpha.b);
    // lattice generated by (a, b) and ωα = (-b, a + b)
    let eg = a.extended_gcd(&-b);
    let (mut g, mut s, mut t) = (eg.gcd, eg.x, eg.y);
    if g.is_negative() {
        g = -g;
        s = -s;
        t = -t;
    }
    let h = alpha.norm() / &g;
    let c = (&s * b + &t * (a + b)).mod_floor(&h);
    let q = x.a.div_floor(&g);
    let first = &x.a - &q * &g;
    let second = (&x.b - &q * &c).mod_floor(&h);
    Eisenstein::new(first, second)
}

/// Residues of `v M^H` in `⊕ E/(α_i)` over the nonunit divisors; equal
/// tuples mean equal Jacobian classes.
pub fn jacobian_class(j: &JacobianE, v: &[Eisenstein]) -> Result<Vec<Eisenstein>> {
    let m = &j.representation;
    if v.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.cols()
        )));
    }
    let w = m.conj_transpose().left_mul_vec(v)?;
    let y = j.snf.right.left_mul_vec(&w)?;
    Ok(y
        .iter()
        .zip(&j.snf.divisors)
        .filter(|(_, d)| !d.is_unit())
        .map(|(yi, d)| reduce_mod(yi, d))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingReport {
    pub jac_z: AbelianGroup,
    pub doubled: AbelianGroup,
    pub jac_e_abelian: AbelianGroup,
    pub holds: bool,
}

/// For a regular matroid given by a signed 0/1 matrix, compares the abelian
/// Jacobian over E against two copies of the integer Jacobian.
pub fn regular_doubling(m: &MatrixE) -> Result<DoublingReport> {
    if !is_signed_zero_one(m) {
        return Err(Error::NotIntegral("entries must lie in {0, 1, -1}".into()));
    }
    let report = validate(m, ValidationMode::Full)?;
    if let Some(v) = report.violation {
        return Err(Error::NotHMatrix(v.to_string()));
    }
    let rep = m.full_row_rank_restriction()?;
    let z = rep.to_z()?;
    let lz = z.mul(&z.transpose())?;
    let jac_z = AbelianGroup::from_cyclic_orders(&snf(&lz).divisors);
    let doubled = jac_z.doubled();
    let jac_e_abelian = abelianize(&jacobian_of(&rep)?);
    Ok(DoublingReport {
        holds: doubled == jac_e_abelian,
        jac_z,
        doubled,
        jac_e_abelian,
    })
}
