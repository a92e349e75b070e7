//! Minimal ring abstractions shared by the matrix and SNF code, with
//! instances for the rational integers and the Eisenstein integers.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::eisenstein::{Eisenstein, EisensteinRational};
use crate::error::{Error, Result};

pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl Ring for BigInt {}
impl Ring for Eisenstein {}
impl Ring for EisensteinRational {}

/// A Euclidean domain with a fixed choice of associate for every element.
pub trait EuclideanDomain: Ring {
    /// Euclidean function; zero only at zero.
    fn euclid_size(&self) -> BigInt;

    /// `(q, r)` with `self = q d + r` and `size(r) < size(d)`.
    fn euclid_div(&self, d: &Self) -> Result<(Self, Self)>;

    fn div_exact(&self, d: &Self) -> Option<Self>;

    /// `(c, u)` with `u` a unit, `c = u * self` the canonical associate.
    fn normalize(&self) -> (Self, Self);

    fn unit_inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            x.is_zero()
        } else {
            x.div_exact(self).is_some()
        }
    }

    fn gcd_canonical(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut x, mut y) = (self.clone(), other.clone());
        while !y.is_zero() {
            let (_, r) = x.euclid_div(&y)?;
            x = y;
            y = r;
        }
        Ok(x.normalize().0)
    }
}

impl EuclideanDomain for BigInt {
    fn euclid_size(&self) -> BigInt {
        self.abs()
    }

    fn euclid_div(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.div_rem(d))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn normalize(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, -BigInt::one())
        } else {
            (self.clone(), BigInt::one())
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
}

impl EuclideanDomain for Eisenstein {
    fn euclid_size(&self) -> BigInt {
        self.norm()
    }

    fn euclid_div(&self, d: &Self) -> Result<(Self, Self)> {
        self.euclidean_div(d)
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.exact_div(d)
    }

    fn normalize(&self) -> (Self, Self) {
        let (c, u) = self.canonical_associate();
        (c, u.to_eisenstein())
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|u| u.inverse().to_eisenstein())
    }
}
