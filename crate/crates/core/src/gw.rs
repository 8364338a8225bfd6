//! Grothendieck–Witt rings of finite fields and of the integers.
//!
//! `GW(F_q)` is stored in the canonical form `(rank, disc)`: the element
//! `(n - s)<1> + s<u>` for a fixed non-square `u`. The non-square itself is
//! never materialised, so every result is independent of its choice. For even
//! `q` the discriminant bit is identically zero and `GW(F_q)` is `Z` via rank.
//!
//! `GW(Z)`, isomorphic to `GW(R)`, is free on `<1>` and `<-1>`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GwError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} is outside the supported range (q < 2^31)")]
    FieldTooLarge(u64),
    #[error("degenerate form: <{a}> with {a} divisible by the characteristic {p}")]
    DegenerateForm { a: i64, p: u64 },
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("transfer degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("operation needs odd characteristic, got q = {0}")]
    EvenCharacteristic(u64),
}

/// A finite field `F_q`, `q = p^k`, identified by its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqTag {
    p: u64,
    k: u32,
    q: u64,
}

impl FqTag {
    pub const MAX_Q: u64 = 1 << 31;

    pub fn new(q: u64) -> Result<Self, GwError> {
        if q >= Self::MAX_Q {
            return Err(GwError::FieldTooLarge(q));
        }
        let (p, k) = arith::prime_power_decomposition(q).ok_or(GwError::NotPrimePower(q))?;
        Ok(FqTag { p, k, q })
    }

    pub fn from_prime_power(p: u64, k: u32) -> Result<Self, GwError> {
        let q = p.checked_pow(k).filter(|&q| q < Self::MAX_Q).ok_or(GwError::FieldTooLarge(u64::MAX))?;
        if !arith::is_prime(p) || k == 0 {
            return Err(GwError::NotPrimePower(q));
        }
        Ok(FqTag { p, k, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn odd(&self) -> bool {
        self.p != 2
    }

    /// Whether the prime-field integer `a` is a square in `F_q`.
    ///
    /// Every element of `F_p` becomes a square in `F_{p^2}`, so only the
    /// parity of `k` and the Legendre symbol matter.
    pub fn is_square(&self, a: i64) -> Result<bool, GwError> {
        if a.rem_euclid(self.p as i64) == 0 {
            return Err(GwError::DegenerateForm { a, p: self.p });
        }
        if !self.odd() || self.k.is_multiple_of(2) {
            return Ok(true);
        }
        Ok(arith::legendre(a, self.p) == 1)
    }
}

impl fmt::Display for FqTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// An element of `GW(F_q)` in canonical `(rank, disc)` form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwFq {
    field: FqTag,
    rank: BigInt,
    disc: bool,
}

impl GwFq {
    /// Builds `(rank, disc)`; the disc bit is dropped in characteristic 2.
    pub fn new(field: FqTag, rank: impl Into<BigInt>, disc: bool) -> Self {
        GwFq { field, rank: rank.into(), disc: disc && field.odd() }
    }

    pub fn zero(field: FqTag) -> Self {
        Self::new(field, 0, false)
    }

    pub fn one(field: FqTag) -> Self {
        Self::new(field, 1, false)
    }

    pub fn from_int(field: FqTag, n: BigInt) -> Self {
        Self::new(field, n, false)
    }

    /// `<a>` for a prime-field integer `a`.
    pub fn gen(field: FqTag, a: i64) -> Result<Self, GwError> {
        let square = field.is_square(a)?;
        Ok(Self::new(field, 1, !square))
    }

    /// `<u>` for the fixed non-square `u`.
    pub fn u_class(field: FqTag) -> Result<Self, GwError> {
        if !field.odd() {
            return Err(GwError::EvenCharacteristic(field.q));
        }
        Ok(Self::new(field, 1, true))
    }

    pub fn minus_one(field: FqTag) -> Self {
        Self::gen(field, -1).expect("-1 is a unit in every field")
    }

    /// `n_eps = <1> + <-1> + <1> + ...` with `n` terms.
    pub fn n_eps(field: FqTag, n: u64) -> Self {
        let minus_one_terms = n / 2;
        let disc = Self::minus_one(field).disc && minus_one_terms % 2 == 1;
        Self::new(field, n, disc)
    }

    pub fn q_eps(field: FqTag) -> Self {
        Self::n_eps(field, field.q)
    }

    /// The hyperbolic form `h = <1> + <-1>`.
    pub fn hyperbolic(field: FqTag) -> Self {
        Self::n_eps(field, 2)
    }

    /// The transfer `Tr_{F_{q^i}/F_q} <1>`: `i<1>` for odd `i`,
    /// `(i-1)<1> + <u>` for even `i`.
    pub fn transfer(field: FqTag, i: i64) -> Result<Self, GwError> {
        if i <= 0 {
            return Err(GwError::NonPositiveDegree(i));
        }
        Ok(Self::new(field, i, i % 2 == 0))
    }

    pub fn field(&self) -> FqTag {
        self.field
    }

    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    pub fn disc(&self) -> bool {
        self.disc
    }

    pub fn disc_bit(&self) -> u8 {
        self.disc as u8
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self::new(self.field, &self.rank * n, self.disc && n.is_odd())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GwError> {
        self.same_field(other)?;
        Ok(Self::new(self.field, &self.rank + &other.rank, self.disc ^ other.disc))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, GwError> {
        self.same_field(other)?;
        let disc = (self.rank.is_odd() && other.disc) ^ (self.disc && other.rank.is_odd());
        Ok(Self::new(self.field, &self.rank * &other.rank, disc))
    }

    /// All `y` with `y + y = self`. Doubling always clears the disc bit, so
    /// elements with nontrivial discriminant have no halves.
    pub fn halves(&self) -> Vec<Self> {
        if self.disc || self.rank.is_odd() {
            return Vec::new();
        }
        let half: BigInt = &self.rank / 2;
        let mut out = vec![Self::new(self.field, half.clone(), false)];
        if self.field.odd() {
            out.push(Self::new(self.field, half, true));
        }
        out
    }

    fn same_field(&self, other: &Self) -> Result<(), GwError> {
        if self.field != other.field {
            return Err(GwError::FieldMismatch { left: self.field.q, right: other.field.q });
        }
        Ok(())
    }
}

impl fmt::Display for GwFq {
    /// `r<1> + s<u>` with `s` in {0, 1} and `r = rank - s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.disc_bit();
        let r = &self.rank - BigInt::from(s);
        match (r.is_zero(), s) {
            (true, 0) => write!(f, "0"),
            (true, _) => write!(f, "1⟨u⟩"),
            (false, 0) => write!(f, "{r}⟨1⟩"),
            (false, _) => write!(f, "{r}⟨1⟩ + 1⟨u⟩"),
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident, $inner:expr) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $inner(self, rhs)
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $inner(&self, &rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $inner(&self, rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $inner(self, &rhs)
            }
        }
    };
}

// Operators panic on mismatched fields; use `checked_*` for fallible callers.
forward_binop!(GwFq, Add, add, |a: &GwFq, b: &GwFq| a.checked_add(b).unwrap());
forward_binop!(GwFq, Mul, mul, |a: &GwFq, b: &GwFq| a.checked_mul(b).unwrap());
forward_binop!(GwFq, Sub, sub, |a: &GwFq, b: &GwFq| a.checked_add(&-b).unwrap());

impl Neg for &GwFq {
    type Output = GwFq;
    fn neg(self) -> GwFq {
        GwFq::new(self.field, -&self.rank, self.disc)
    }
}

impl Neg for GwFq {
    type Output = GwFq;
    fn neg(self) -> GwFq {
        -&self
    }
}

/// An element `c1<1> + cm1<-1>` of `GW(Z) = GW(R)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwInt {
    pub c1: BigInt,
    pub cm1: BigInt,
}

impl GwInt {
    pub fn new(c1: impl Into<BigInt>, cm1: impl Into<BigInt>) -> Self {
        GwInt { c1: c1.into(), cm1: cm1.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn minus_one() -> Self {
        Self::new(0, 1)
    }

    pub fn hyperbolic() -> Self {
        Self::new(1, 1)
    }

    pub fn n_eps(n: u64) -> Self {
        Self::new(n - n / 2, n / 2)
    }

    pub fn rank(&self) -> BigInt {
        &self.c1 + &self.cm1
    }

    pub fn sign(&self) -> BigInt {
        &self.c1 - &self.cm1
    }

    /// Pullback along `Z -> F_q`: `<-1>` goes to `<-1>` of the finite field.
    pub fn reduce_mod_p(&self, field: FqTag) -> GwFq {
        let one = GwFq::one(field);
        let minus_one = GwFq::minus_one(field);
        one.scale(&self.c1) + minus_one.scale(&self.cm1)
    }
}

impl fmt::Display for GwInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c1.is_zero(), self.cm1.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}⟨1⟩", self.c1),
            (true, false) => write!(f, "{}⟨−1⟩", self.cm1),
            (false, false) if self.cm1.is_negative() => {
                write!(f, "{}⟨1⟩ - {}⟨−1⟩", self.c1, -&self.cm1)
            }
            (false, false) => write!(f, "{}⟨1⟩ + {}⟨−1⟩", self.c1, self.cm1),
        }
    }
}

fn gwint_add(a: &GwInt, b: &GwInt) -> GwInt {
    GwInt::new(&a.c1 + &b.c1, &a.cm1 + &b.cm1)
}

fn gwint_sub(a: &GwInt, b: &GwInt) -> GwInt {
    GwInt::new(&a.c1 - &b.c1, &a.cm1 - &b.cm1)
}

// <-1>^2 = <1>
fn gwint_mul(a: &GwInt, b: &GwInt) -> GwInt {
    GwInt::new(&a.c1 * &b.c1 + &a.cm1 * &b.cm1, &a.c1 * &b.cm1 + &a.cm1 * &b.c1)
}

forward_binop!(GwInt, Add, add, gwint_add);
forward_binop!(GwInt, Sub, sub, gwint_sub);
forward_binop!(GwInt, Mul, mul, gwint_mul);

impl Neg for &GwInt {
    type Output = GwInt;
    fn neg(self) -> GwInt {
        GwInt::new(-&self.c1, -&self.cm1)
    }
}

impl Neg for GwInt {
    type Output = GwInt;
    fn neg(self) -> GwInt {
        -&self
    }
}

impl One for GwInt {
    fn one() -> Self {
        GwInt::one()
    }
}

impl Zero for GwInt {
    fn zero() -> Self {
        GwInt::zero()
    }
    fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.cm1.is_zero()
    }
}
