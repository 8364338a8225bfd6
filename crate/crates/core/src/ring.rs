//! The exact commutative coefficient rings that polynomials, series and
//! matrices are built over.
//!
//! A ring is a small handle value (`Copy`) that knows how to produce and
//! combine its elements; elements themselves are plain data. This keeps
//! `GW(F_q)` elements (which remember their field) and bare integers on the
//! same footing.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gw::{FqTag, GwFq, GwInt};

pub trait CoefficientRing: Copy + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// The image of an integer under the unique ring map from `Z`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    fn scale(&self, n: &BigInt, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }

    fn pow(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl CoefficientRing for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// `GW(F_q)` for a fixed field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GwFqRing(pub FqTag);

impl CoefficientRing for GwFqRing {
    type Elem = GwFq;

    fn zero(&self) -> GwFq {
        GwFq::zero(self.0)
    }
    fn one(&self) -> GwFq {
        GwFq::one(self.0)
    }
    fn add(&self, a: &GwFq, b: &GwFq) -> GwFq {
        a + b
    }
    fn neg(&self, a: &GwFq) -> GwFq {
        -a
    }
    fn mul(&self, a: &GwFq, b: &GwFq) -> GwFq {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> GwFq {
        GwFq::from_int(self.0, n.clone())
    }
    fn scale(&self, n: &BigInt, a: &GwFq) -> GwFq {
        a.scale(n)
    }
}

/// `GW(Z) = GW(R)`, free on `<1>` and `<-1>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GwIntRing;

impl CoefficientRing for GwIntRing {
    type Elem = GwInt;

    fn zero(&self) -> GwInt {
        GwInt::zero()
    }
    fn one(&self) -> GwInt {
        GwInt::one()
    }
    fn add(&self, a: &GwInt, b: &GwInt) -> GwInt {
        a + b
    }
    fn neg(&self, a: &GwInt) -> GwInt {
        -a
    }
    fn mul(&self, a: &GwInt, b: &GwInt) -> GwInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> GwInt {
        GwInt::new(n.clone(), BigInt::zero())
    }
}
