//! Eisenstein integers `Z[w]` and their fraction field `Q(w)`.
//!
//! Elements are stored in the basis `{1, w}` where `w = e^{i pi/3}` is a
//! primitive sixth root of unity, so `w^2 = w - 1` and `w^3 = -1`. In this
//! basis complex conjugation is `(a, b) -> (a + b, -b)` and the norm is
//! `a^2 + ab + b^2`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An Eisenstein integer `a + b w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eisenstein {
    pub a: BigInt,
    pub b: BigInt,
}

/// A sixth root of unity `w^k`, `0 <= k < 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixthRoot(u8);

/// An element of `H = {0} U {sixth roots of unity}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HElement {
    Zero,
    Root(SixthRoot),
}

impl SixthRoot {
    pub const ONE: SixthRoot = SixthRoot(0);
    pub const OMEGA: SixthRoot = SixthRoot(1);

    pub fn new(k: i64) -> Self {
        SixthRoot(k.rem_euclid(6) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = SixthRoot> {
        (0..6).map(SixthRoot)
    }

    pub fn to_eisenstein(self) -> Eisenstein {
        // w^0..w^5 = 1, w, w - 1, -1, -w, 1 - w
        const TABLE: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
        let (a, b) = TABLE[self.0 as usize];
        Eisenstein::new(a, b)
    }

    pub fn from_eisenstein(x: &Eisenstein) -> Option<Self> {
        SixthRoot::all().find(|u| &u.to_eisenstein() == x)
    }

    pub fn inverse(self) -> Self {
        SixthRoot((6 - self.0) % 6)
    }

    /// Complex conjugate; equal to the inverse on the unit circle.
    pub fn conj(self) -> Self {
        self.inverse()
    }
}

impl Mul for SixthRoot {
    type Output = SixthRoot;
    fn mul(self, rhs: SixthRoot) -> SixthRoot {
        SixthRoot((self.0 + rhs.0) % 6)
    }
}

impl fmt::Display for SixthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}", self.0)
    }
}

impl HElement {
    pub fn to_eisenstein(self) -> Eisenstein {
        match self {
            HElement::Zero => Eisenstein::zero(),
            HElement::Root(u) => u.to_eisenstein(),
        }
    }
}

impl TryFrom<&Eisenstein> for HElement {
    type Error = Error;

    fn try_from(x: &Eisenstein) -> Result<Self> {
        if x.is_zero() {
            return Ok(HElement::Zero);
        }
        SixthRoot::from_eisenstein(x)
            .map(HElement::Root)
            .ok_or_else(|| Error::NotAUnit(x.clone()))
    }
}

impl Eisenstein {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Eisenstein {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Eisenstein::new(a, 0)
    }

    pub fn omega() -> Self {
        Eisenstein::new(0, 1)
    }

    /// Complex conjugate: `a + b w -> (a + b) - b w`.
    pub fn conj(&self) -> Self {
        Eisenstein {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// Squared complex modulus `a^2 + ab + b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn as_unit(&self) -> Option<SixthRoot> {
        SixthRoot::from_eisenstein(self)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Eisenstein {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn mul_unit(&self, u: SixthRoot) -> Self {
        let mut x = self.clone();
        for _ in 0..u.exponent() {
            x = x.mul_omega();
        }
        x
    }

    // (a + b w) w = -b + (a + b) w
    fn mul_omega(&self) -> Self {
        Eisenstein {
            a: -&self.b,
            b: &self.a + &self.b,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Eisenstein::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The quotient `self / y` in the fraction field.
    pub fn ratio(&self, y: &Eisenstein) -> Result<EisensteinRational> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(EisensteinRational::from(self.clone()) / EisensteinRational::from(y.clone()))
    }

    /// Division with remainder: `self = q y + r` with `norm(r) <= 3/4 norm(y)`.
    ///
    /// `q` rounds each coordinate of `self / y` to the nearest integer, ties to even.
    pub fn euclidean_div(&self, y: &Eisenstein) -> Result<(Eisenstein, Eisenstein)> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &y.conj();
        let den = y.norm();
        let q = Eisenstein {
            a: round_half_even(&num.a, &den),
            b: round_half_even(&num.b, &den),
        };
        let r = self - &(&q * y);
        Ok((q, r))
    }

    /// `self / y` when `y` divides `self`.
    pub fn exact_div(&self, y: &Eisenstein) -> Option<Eisenstein> {
        if y.is_zero() {
            return None;
        }
        let num = self * &y.conj();
        let den = y.norm();
        let (qa, ra) = num.a.div_rem(&den);
        let (qb, rb) = num.b.div_rem(&den);
        (ra.is_zero() && rb.is_zero()).then(|| Eisenstein::new(qa, qb))
    }

    pub fn divides(&self, x: &Eisenstein) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.exact_div(self).is_some()
    }

    /// The associate `c = u * self` lying in `{a >= 1, b >= 0} U {0}`.
    pub fn canonical_associate(&self) -> (Eisenstein, SixthRoot) {
        if self.is_zero() {
            return (Eisenstein::zero(), SixthRoot::ONE);
        }
        let mut c = self.clone();
        for k in 0..6 {
            if c.a.is_positive() && !c.b.is_negative() {
                return (c, SixthRoot(k));
            }
            c = c.mul_omega();
        }
        unreachable!("every nonzero Eisenstein integer has an associate in the sextant")
    }

    pub fn canonical(&self) -> Eisenstein {
        self.canonical_associate().0
    }

    pub fn is_associate(&self, other: &Eisenstein) -> bool {
        self.canonical() == other.canonical()
    }

    /// Canonical greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Eisenstein) -> Result<Eisenstein> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut x, mut y) = (self.clone(), other.clone());
        while !y.is_zero() {
            let (_, r) = x.euclidean_div(&y)?;
            x = y;
            y = r;
        }
        Ok(x.canonical())
    }

    /// Whether `self^6` has zero `w`-coefficient.
    pub fn sixth_power_is_integer(&self) -> bool {
        self.pow(6).b.is_zero()
    }
}

fn round_half_even(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = &r * 2;
    match twice.cmp(d) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::new(1, 0)
    }
}

impl From<i64> for Eisenstein {
    fn from(a: i64) -> Self {
        Eisenstein::from_int(a)
    }
}

impl From<BigInt> for Eisenstein {
    fn from(a: BigInt) -> Self {
        Eisenstein::from_int(a)
    }
}

impl From<SixthRoot> for Eisenstein {
    fn from(u: SixthRoot) -> Self {
        u.to_eisenstein()
    }
}

impl<'a> Add<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a Eisenstein> for &'a Eisenstein {
    type Output = Eisenstein;
    // (a + b w)(c + d w) = (ac - bd) + (ad + bc + bd) w
    fn mul(self, rhs: &Eisenstein) -> Eisenstein {
        let bd = &self.b * &rhs.b;
        Eisenstein {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $method:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Eisenstein, Add add, Sub sub, Mul mul);

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        -&self
    }
}

impl AddAssign<&Eisenstein> for Eisenstein {
    fn add_assign(&mut self, rhs: &Eisenstein) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Eisenstein> for Eisenstein {
    fn sub_assign(&mut self, rhs: &Eisenstein) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Eisenstein> for Eisenstein {
    fn mul_assign(&mut self, rhs: &Eisenstein) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Eisenstein {
    fn sum<I: Iterator<Item = Eisenstein>>(iter: I) -> Self {
        iter.fold(Eisenstein::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Eisenstein {
    fn product<I: Iterator<Item = Eisenstein>>(iter: I) -> Self {
        iter.fold(Eisenstein::one(), |acc, x| acc * x)
    }
}

fn fmt_w_coefficient<T: fmt::Display + Signed>(
    f: &mut fmt::Formatter<'_>,
    b: &T,
    leading: bool,
) -> fmt::Result {
    let sign = if b.is_negative() {
        "-"
    } else if leading {
        ""
    } else {
        "+"
    };
    let mag = b.abs();
    if mag.is_one() {
        write!(f, "{sign}w")
    } else {
        write!(f, "{sign}{mag}w")
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => fmt_w_coefficient(f, &self.b, true),
            (false, false) => {
                write!(f, "{}", self.a)?;
                fmt_w_coefficient(f, &self.b, false)
            }
        }
    }
}

impl FromStr for Eisenstein {
    type Err = Error;

    /// Accepts sums of terms like `3`, `-2w`, `w^4`, `1+2w`, `2*w^5`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseEisenstein(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        let chars: Vec<char> = t.chars().collect();
        let mut pos = 0;
        let mut total = Eisenstein::zero();
        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            match chars[pos] {
                '+' | '-' => {
                    negative = chars[pos] == '-';
                    pos += 1;
                }
                _ if !first => return Err(err()),
                _ => {}
            }
            first = false;

            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: Option<BigInt> = if pos > start {
                let digits: String = chars[start..pos].iter().collect();
                Some(digits.parse().map_err(|_| err())?)
            } else {
                None
            };
            if pos < chars.len() && chars[pos] == '*' {
                if coeff.is_none() {
                    return Err(err());
                }
                pos += 1;
                if pos >= chars.len() || !matches!(chars[pos], 'w' | 'ω') {
                    return Err(err());
                }
            }
            let term = if pos < chars.len() && matches!(chars[pos], 'w' | 'ω') {
                pos += 1;
                let mut k: i64 = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let es = pos;
                    if pos < chars.len() && chars[pos] == '-' {
                        pos += 1;
                    }
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let exp: String = chars[es..pos].iter().collect();
                    k = exp.parse().map_err(|_| err())?;
                }
                let unit = SixthRoot::new(k).to_eisenstein();
                match coeff {
                    Some(c) => unit.scale(&c),
                    None => unit,
                }
            } else {
                Eisenstein::from_int(coeff.ok_or_else(err)?)
            };
            if negative {
                total -= &term;
            } else {
                total += &term;
            }
        }
        Ok(total)
    }
}

/// An element `p + q w` of the fraction field `Q(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinRational {
    pub p: BigRational,
    pub q: BigRational,
}

impl EisensteinRational {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        EisensteinRational { p, q }
    }

    pub fn conj(&self) -> Self {
        EisensteinRational {
            p: &self.p + &self.q,
            q: -&self.q,
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.p * &self.p + &self.p * &self.q + &self.q * &self.q
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(EisensteinRational {
            p: c.p / &n,
            q: c.q / n,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }

    pub fn to_eisenstein(&self) -> Option<Eisenstein> {
        self.is_integral()
            .then(|| Eisenstein::new(self.p.to_integer(), self.q.to_integer()))
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.p.denom().lcm(self.q.denom())
    }

    /// Both coordinates reduced into `[0, 1)`.
    pub fn fractional_part(&self) -> Self {
        EisensteinRational {
            p: &self.p - self.p.floor(),
            q: &self.q - self.q.floor(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        EisensteinRational {
            p: &self.p * k,
            q: &self.q * k,
        }
    }
}

impl From<Eisenstein> for EisensteinRational {
    fn from(x: Eisenstein) -> Self {
        EisensteinRational {
            p: BigRational::from_integer(x.a),
            q: BigRational::from_integer(x.b),
        }
    }
}

impl From<&Eisenstein> for EisensteinRational {
    fn from(x: &Eisenstein) -> Self {
        EisensteinRational::from(x.clone())
    }
}

impl Zero for EisensteinRational {
    fn zero() -> Self {
        EisensteinRational {
            p: BigRational::zero(),
            q: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for EisensteinRational {
    fn one() -> Self {
        EisensteinRational {
            p: BigRational::one(),
            q: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a EisensteinRational> for &'a EisensteinRational {
    type Output = EisensteinRational;
    fn add(self, rhs: &EisensteinRational) -> EisensteinRational {
        EisensteinRational {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl<'a> Sub<&'a EisensteinRational> for &'a EisensteinRational {
    type Output = EisensteinRational;
    fn sub(self, rhs: &EisensteinRational) -> EisensteinRational {
        EisensteinRational {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl<'a> Mul<&'a EisensteinRational> for &'a EisensteinRational {
    type Output = EisensteinRational;
    fn mul(self, rhs: &EisensteinRational) -> EisensteinRational {
        let qs = &self.q * &rhs.q;
        EisensteinRational {
            p: &self.p * &rhs.p - &qs,
            q: &self.p * &rhs.q + &self.q * &rhs.p + qs,
        }
    }
}

impl<'a> Div<&'a EisensteinRational> for &'a EisensteinRational {
    type Output = EisensteinRational;
    /// Panics on division by zero, like the primitive numeric types.
    fn div(self, rhs: &EisensteinRational) -> EisensteinRational {
        self * &rhs.inverse().expect("division by zero in Q(w)")
    }
}

impl Neg for &EisensteinRational {
    type Output = EisensteinRational;
    fn neg(self) -> EisensteinRational {
        EisensteinRational {
            p: -&self.p,
            q: -&self.q,
        }
    }
}

impl Neg for EisensteinRational {
    type Output = EisensteinRational;
    fn neg(self) -> EisensteinRational {
        -&self
    }
}

forward_owned!(EisensteinRational, Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&EisensteinRational> for EisensteinRational {
    fn add_assign(&mut self, rhs: &EisensteinRational) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl fmt::Display for EisensteinRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.p),
            (true, false) => fmt_w_coefficient(f, &self.q, true),
            (false, false) => {
                write!(f, "{}", self.p)?;
                fmt_w_coefficient(f, &self.q, false)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn e(a: i64, b: i64) -> Eisenstein {
        Eisenstein::new(a, b)
    }

    fn to_complex(x: &Eisenstein) -> (f64, f64) {
        let a: f64 = x.a.to_string().parse().unwrap();
        let b: f64 = x.b.to_string().parse().unwrap();
        (a + b * (PI / 3.0).cos(), b * (PI / 3.0).sin())
    }

    fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
        (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
    }

    fn close(x: (f64, f64), y: (f64, f64)) -> bool {
        (x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9
    }

    #[test]
    fn mul_matches_complex_oracle() {
        let one_plus_w = e(1, 1);
        assert_eq!(&one_plus_w * &one_plus_w, e(0, 3));
        assert!(close(
            to_complex(&e(0, 3)),
            cmul(to_complex(&one_plus_w), to_complex(&one_plus_w))
        ));
        let x = e(7, -3);
        assert_eq!(&x * &Eisenstein::one(), x);
        let w = Eisenstein::omega();
        assert_eq!(&(&w * &w) * &w, e(-1, 0));
        assert_eq!(w.pow(6), Eisenstein::one());
    }

    #[test]
    fn conj_matches_complex_oracle() {
        assert_eq!(Eisenstein::omega().conj(), e(1, -1));
        let (re, im) = to_complex(&Eisenstein::omega());
        assert!(close(to_complex(&e(1, -1)), (re, -im)));
        assert_eq!(e(5, 0).conj(), e(5, 0));
        assert_eq!(e(2, 2).conj(), e(4, -2));
        let (re, im) = to_complex(&e(2, 2));
        assert!(close(to_complex(&e(4, -2)), (re, -im)));
    }

    #[test]
    fn norm_examples() {
        for (x, n) in [(e(1, 1), 3), (e(0, 0), 0), (e(2, 2), 12)] {
            assert_eq!(x.norm(), BigInt::from(n));
            let (re, im) = to_complex(&x);
            assert!((re * re + im * im - n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn euclidean_div_examples() {
        let (q, r) = e(5, 0).euclidean_div(&e(1, 1)).unwrap();
        assert_eq!((q.clone(), r.clone()), (e(3, -2), e(0, 1)));
        // exhaustive oracle: every q with norm(x - qy) < norm(y), rounding picks (3, -2)
        let mut valid = vec![];
        for qa in -10..10 {
            for qb in -10..10 {
                let cand = e(qa, qb);
                let rem = &e(5, 0) - &(&cand * &e(1, 1));
                if rem.norm() < BigInt::from(3) {
                    valid.push(cand);
                }
            }
        }
        assert!(valid.contains(&q));

        let x = e(-4, 9);
        assert_eq!(x.euclidean_div(&Eisenstein::one()).unwrap(), (x, e(0, 0)));
        assert!(e(0, 3).euclidean_div(&e(1, 1)).unwrap().1.is_zero());
        assert_eq!(
            e(1, 0).euclidean_div(&Eisenstein::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(e(3, 0).gcd(&e(1, 1)).unwrap(), e(1, 1));
        let x = e(-2, -5);
        assert_eq!(x.gcd(&Eisenstein::zero()).unwrap(), x.canonical());
        assert_eq!(e(2, 1).gcd(&e(3, -1)).unwrap(), Eisenstein::one());
        assert_eq!(
            Eisenstein::zero().gcd(&Eisenstein::zero()),
            Err(Error::GcdOfZeros)
        );
    }

    #[test]
    fn gcd_matches_divisor_search() {
        // all divisors of 3 and 1+w by norm search; common ones have max norm 3
        let divisors = |x: &Eisenstein| -> Vec<Eisenstein> {
            let mut out = vec![];
            for a in -4..=4 {
                for b in -4..=4 {
                    let d = e(a, b);
                    if !d.is_zero() && d.divides(x) {
                        out.push(d);
                    }
                }
            }
            out
        };
        let common: Vec<_> = divisors(&e(3, 0))
            .into_iter()
            .filter(|d| d.divides(&e(1, 1)))
            .collect();
        let best = common.iter().max_by_key(|d| d.norm()).unwrap();
        assert_eq!(best.canonical(), e(1, 1));
    }

    #[test]
    fn canonical_associate_examples() {
        assert_eq!(e(0, 3).canonical(), e(3, 0));
        assert_eq!(e(-1, -1).canonical(), e(1, 1));
        assert_eq!(e(3, -1).canonical(), e(1, 2));
        let (c, u) = e(3, -1).canonical_associate();
        assert_eq!(e(3, -1).mul_unit(u), c);
        // exactly one of the six associates lies in the sextant
        for x in [e(3, -1), e(-1, -1), e(0, 3), e(-5, 2)] {
            let hits = SixthRoot::all()
                .map(|u| x.mul_unit(u))
                .filter(|c| c.a.is_positive() && !c.b.is_negative())
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn sixth_powers() {
        assert!(e(1, 1).sixth_power_is_integer());
        assert_eq!(e(1, 1).pow(6), e(-27, 0));
        assert!(Eisenstein::omega().sixth_power_is_integer());
        // oracle: arg(1+2w) * 6 is not a multiple of pi
        let (re, im) = to_complex(&e(1, 2));
        let angle = im.atan2(re) * 6.0;
        let on_real_axis = (angle / PI - (angle / PI).round()).abs() < 1e-9;
        assert_eq!(e(1, 2).sixth_power_is_integer(), on_real_axis);
        assert!(!on_real_axis);
    }

    #[test]
    fn display_and_parse() {
        for (x, s) in [
            (e(0, 0), "0"),
            (e(-1, 0), "-1"),
            (e(0, 3), "3w"),
            (e(2, 2), "2+2w"),
            (e(1, 1), "1+w"),
            (e(1, -1), "1-w"),
            (e(0, -1), "-w"),
            (e(4, -2), "4-2w"),
        ] {
            assert_eq!(x.to_string(), s);
            assert_eq!(s.parse::<Eisenstein>().unwrap(), x);
        }
        assert_eq!("w^7".parse::<Eisenstein>().unwrap(), Eisenstein::omega());
        assert_eq!("w^3".parse::<Eisenstein>().unwrap(), e(-1, 0));
        assert_eq!("-w^2".parse::<Eisenstein>().unwrap(), e(1, -1));
        assert_eq!("  2*w^0 ".parse::<Eisenstein>().unwrap(), e(2, 0));
        assert_eq!("w^-1".parse::<Eisenstein>().unwrap(), e(1, -1));
        for bad in ["", "x", "1++w", "2w3", "w^", "1 + w", "*w"] {
            assert!(bad.parse::<Eisenstein>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn rational_inverse() {
        let x = EisensteinRational::from(e(2, 1));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, EisensteinRational::one());
        assert!(!inv.is_integral());
        assert_eq!(inv.denominator(), BigInt::from(7));
    }

    #[test]
    fn h_elements() {
        for u in SixthRoot::all() {
            let x = u.to_eisenstein();
            assert!(x.is_unit());
            assert_eq!(HElement::try_from(&x).unwrap(), HElement::Root(u));
            assert_eq!(u.to_eisenstein().conj(), u.conj().to_eisenstein());
            assert_eq!(&x * &u.inverse().to_eisenstein(), Eisenstein::one());
        }
        assert!(HElement::try_from(&e(1, 1)).is_err());
    }
}
