//! Dense polynomials, truncated power series and square matrices over a
//! [`CoefficientRing`].
//!
//! Coefficient rings here need not be domains (`GW(F_q)` has torsion), so the
//! determinant is computed by cofactor expansion and never divides.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::CoefficientRing;

/// Matrices larger than this are refused by [`RingMatrix::det_one_minus_t`].
pub const DET_DIMENSION_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("not a unit-normalized polynomial: constant term must be 1")]
    NotUnitNormalized,
    #[error("dimension cap: {n}x{n} exceeds the cofactor-expansion limit of {cap}")]
    DimensionCap { n: usize, cap: usize },
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A polynomial; `coeffs[i]` is the coefficient of `t^i`, with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: CoefficientRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoefficientRing> Poly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: R) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    /// `1 - a t`.
    pub fn one_minus(ring: R, a: &R::Elem) -> Self {
        Self::new(ring, vec![ring.one(), ring.neg(a)])
    }

    pub fn ring(&self) -> R {
        self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_unit_normalized(&self) -> bool {
        self.coeffs.first() == Some(&self.ring.one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.ring, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.ring, self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(self.ring);
        }
        let r = self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::new(r, out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.ring), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let r = self.ring;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| r.scale(&BigInt::from(i), c)).collect();
        Self::new(r, coeffs)
    }
}

/// A power series modulo `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: CoefficientRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoefficientRing> Series<R> {
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Self {
        Series { ring, coeffs }
    }

    pub fn zero(ring: R, order: usize) -> Self {
        Series { ring, coeffs: vec![ring.zero(); order] }
    }

    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if order > 0 {
            s.coeffs[0] = ring.one();
        }
        s
    }

    /// Truncates (or zero-pads) a polynomial to the given order.
    pub fn from_poly(poly: &Poly<R>, order: usize) -> Self {
        Series { ring: poly.ring, coeffs: (0..order).map(|i| poly.coeff(i)).collect() }
    }

    pub fn ring(&self) -> R {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let r = self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.add(a, b)).collect();
        Ok(Series { ring: r, coeffs })
    }

    pub fn neg(&self) -> Self {
        let r = self.ring;
        Series { ring: r, coeffs: self.coeffs.iter().map(|c| r.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let r = self.ring;
        let n = self.order();
        let coeffs = (0..n)
            .map(|k| (0..=k).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&self.coeffs[i], &other.coeffs[k - i]))))
            .collect();
        Ok(Series { ring: r, coeffs })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = self.ring;
        Series { ring: r, coeffs: self.coeffs.iter().map(|x| r.mul(c, x)).collect() }
    }

    /// Applies a coefficientwise map into another ring.
    pub fn map<S: CoefficientRing>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Series<S> {
        Series { ring: target, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

impl<R: CoefficientRing> fmt::Display for Series<R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order())
    }
}

/// `1/P = sum_{m >= 0} (1 - P)^m` modulo `t^order`, for `P(0) = 1`.
pub fn series_inverse_unit<R: CoefficientRing>(p: &Poly<R>, order: usize) -> Result<Series<R>, SeriesError> {
    if !p.is_unit_normalized() {
        return Err(SeriesError::NotUnitNormalized);
    }
    let r = p.ring();
    let one = Series::one(r, order);
    // 1 - P is divisible by t, so (1 - P)^m vanishes mod t^order once m >= order.
    let step = one.sub(&Series::from_poly(p, order))?;
    let mut acc = one.clone();
    let mut term = one;
    for _ in 1..order {
        term = term.mul(&step)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The formal logarithmic derivative `P'/P` modulo `t^order`.
pub fn dlog_poly<R: CoefficientRing>(p: &Poly<R>, order: usize) -> Result<Series<R>, SeriesError> {
    let inverse = series_inverse_unit(p, order)?;
    Series::from_poly(&p.derivative(), order).mul(&inverse)
}

/// A square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R: CoefficientRing> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

impl<R: CoefficientRing> RingMatrix<R> {
    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, SeriesError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SeriesError::NotSquare { row, len: r.len(), n });
            }
        }
        Ok(RingMatrix { ring, n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(ring: R, n: usize) -> Self {
        RingMatrix { ring, n, entries: vec![ring.zero(); n * n] }
    }

    /// `a` times the identity.
    pub fn scalar(ring: R, n: usize, a: &R::Elem) -> Self {
        let mut m = Self::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = a.clone();
        }
        m
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Self::scalar(ring, n, &ring.one())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> R {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.n != other.n {
            return Err(SeriesError::DimensionMismatch(self.n, other.n));
        }
        let (r, n) = (self.ring, self.n);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = (0..n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(self.get(i, k), other.get(k, j))));
                entries.push(e);
            }
        }
        Ok(RingMatrix { ring: r, n, entries })
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = Self::identity(self.ring, self.n);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn trace(&self) -> R::Elem {
        self.ring.sum((0..self.n).map(|i| self.get(i, i)))
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, n) = (self.ring, self.n + other.n);
        let mut m = Self::zero(r, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.entries[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// `det(1 - tA)` by cofactor expansion along successive rows, memoised on
    /// the set of columns already used.
    pub fn det_one_minus_t(&self) -> Result<Poly<R>, SeriesError> {
        let (r, n) = (self.ring, self.n);
        if n > DET_DIMENSION_CAP {
            return Err(SeriesError::DimensionCap { n, cap: DET_DIMENSION_CAP });
        }
        let entry = |i: usize, j: usize| {
            let delta = if i == j { r.one() } else { r.zero() };
            Poly::new(r, vec![delta, r.neg(self.get(i, j))])
        };
        let full = (1usize << n) - 1;
        let mut memo: HashMap<usize, Poly<R>> = HashMap::new();
        memo.insert(full, Poly::one(r));
        // masks with more bits are finished first
        let mut masks: Vec<usize> = (0..full).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        for mask in masks {
            let row = mask.count_ones() as usize;
            let mut acc = Poly::zero(r);
            let mut free_before = 0usize;
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let minor = &memo[&(mask | (1 << col))];
                let term = entry(row, col).mul(minor);
                acc = if free_before.is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
                free_before += 1;
            }
            memo.insert(mask, acc);
        }
        Ok(memo.remove(&0).expect("root of the expansion"))
    }

    /// The series whose `t^{m-1}` coefficient is `-Tr(A^m)`, `m = 1..order`.
    pub fn newton_trace_series(&self, order: usize) -> Series<R> {
        let r = self.ring;
        let mut power = Self::identity(r, self.n);
        let mut coeffs = Vec::with_capacity(order);
        for _ in 0..order {
            power = power.mul(self).expect("same dimension");
            coeffs.push(r.neg(&power.trace()));
        }
        Series::from_coeffs(r, coeffs)
    }
}
