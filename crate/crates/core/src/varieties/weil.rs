use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::VarietyError;
use crate::arith::upow;
use crate::gw::FqTag;

/// Characteristic polynomials `Q_j(t) = det(1 - t F | H^j)` of Frobenius on
/// each cohomological degree, as integer coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilData {
    field: FqTag,
    polys: Vec<Vec<BigInt>>,
}

impl WeilData {
    pub fn new(field: FqTag, polys: Vec<Vec<BigInt>>) -> Self {
        WeilData { field, polys }
    }

    pub fn field(&self) -> FqTag {
        self.field
    }

    pub fn polys(&self) -> &[Vec<BigInt>] {
        &self.polys
    }

    pub fn dim(&self) -> u32 {
        (self.polys.len().saturating_sub(1) / 2) as u32
    }

    pub(super) fn check_normalized(&self) -> Result<(), VarietyError> {
        match self.polys.iter().position(|q| q.first() != Some(&BigInt::one())) {
            Some(j) => Err(VarietyError::WeilNotUnitNormalized(j)),
            None => Ok(()),
        }
    }

    /// Shape warnings: `Q_0 = 1 - t` and `Q_{2d} = 1 - q^d t` are expected
    /// for a smooth projective variety but not enforced.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let linear = |c: BigInt| vec![BigInt::one(), -c];
        if self.polys.len().is_multiple_of(2) {
            out.push(format!("expected an odd number of degrees (0..=2d), got {}", self.polys.len()));
        }
        if let Some(q0) = self.polys.first() {
            if trimmed(q0) != linear(BigInt::one()) {
                out.push("Q_0 is not 1 - t".into());
            }
        }
        if self.polys.len() > 1 {
            let d = self.dim();
            let top = trimmed(self.polys.last().unwrap());
            if top != linear(upow(self.field.q(), d as u64)) {
                out.push(format!("Q_{} is not 1 - q^{d} t", self.polys.len() - 1));
            }
        }
        out
    }

    /// `sum_j (-1)^j sum_l λ_{j,l}^m`.
    pub fn count(&self, m: u32) -> Result<BigInt, VarietyError> {
        self.check_normalized()?;
        let mut total = BigInt::zero();
        for (j, q) in self.polys.iter().enumerate() {
            let s = power_sums(q, m as usize).pop().unwrap_or_default();
            if j % 2 == 0 {
                total += s;
            } else {
                total -= s;
            }
        }
        if total.is_negative() {
            return Err(VarietyError::InconsistentWeilData { m, value: total });
        }
        Ok(total)
    }
}

fn trimmed(c: &[BigInt]) -> Vec<BigInt> {
    let mut v = c.to_vec();
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

/// Power sums `p_1..p_n` of the reciprocal roots of `Q = 1 + c_1 t + ...`,
/// by Newton's identities `p_m = -(m c_m + sum_{i<m} c_i p_{m-i})`.
pub(crate) fn power_sums(q: &[BigInt], n: usize) -> Vec<BigInt> {
    let c = |i: usize| q.get(i).cloned().unwrap_or_default();
    let mut p: Vec<BigInt> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = c(m) * BigInt::from(m);
        for i in 1..m {
            acc += c(i) * &p[m - i - 1];
        }
        p.push(-acc);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{elliptic_curve, from_weil_data, projective_space};

    fn fq(q: u64) -> FqTag {
        FqTag::new(q).unwrap()
    }

    fn poly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn newton_power_sums() {
        // (1 - 2t)(1 - 3t) = 1 - 5t + 6t^2: p_m = 2^m + 3^m
        let p = power_sums(&poly(&[1, -5, 6]), 4);
        assert_eq!(p, poly(&[5, 13, 35, 97]));
        assert_eq!(power_sums(&poly(&[1, 3]), 2), poly(&[-3, 9]));
    }

    #[test]
    fn elliptic_weil_data() {
        let w = WeilData::new(fq(7), vec![poly(&[1, -1]), poly(&[1, -2, 7]), poly(&[1, -7])]);
        assert!(w.warnings().is_empty());
        let src = from_weil_data(w).unwrap();
        assert_eq!(src.count(1).unwrap(), BigInt::from(6));
        let e = elliptic_curve(fq(7), 2, 3).unwrap();
        assert_eq!(src.counts(10).unwrap(), e.counts(10).unwrap());
    }

    #[test]
    fn projective_line_without_h1() {
        for q in [2u64, 3, 5, 7, 9] {
            let w = WeilData::new(fq(q), vec![poly(&[1, -1]), vec![BigInt::one()], poly(&[1, -(q as i64)])]);
            let src = from_weil_data(w).unwrap();
            assert_eq!(src.counts(8).unwrap(), projective_space(fq(q), 1).counts(8).unwrap());
        }
    }

    #[test]
    fn projective_plane_from_weil_data() {
        let q = 5i64;
        let polys = vec![poly(&[1, -1]), poly(&[1]), poly(&[1, -q]), poly(&[1]), poly(&[1, -q * q])];
        let src = from_weil_data(WeilData::new(fq(5), polys)).unwrap();
        assert_eq!(src.counts(8).unwrap(), projective_space(fq(5), 2).counts(8).unwrap());
    }

    #[test]
    fn odd_degree_sign() {
        let w = WeilData::new(fq(3), vec![poly(&[1, -1]), poly(&[1, 3]), poly(&[1, -3])]);
        // 1 - 9 + 9 = 1
        assert_eq!(w.count(2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn bad_weil_data() {
        let w = WeilData::new(fq(3), vec![poly(&[2, -1])]);
        assert_eq!(from_weil_data(w), Err(VarietyError::WeilNotUnitNormalized(0)));
        // 1 - (large H^1 trace) goes negative
        let w = WeilData::new(fq(3), vec![poly(&[1, -1]), poly(&[1, -50]), poly(&[1, -3])]);
        assert!(matches!(w.count(1), Err(VarietyError::InconsistentWeilData { m: 1, .. })));
        let warn = WeilData::new(fq(3), vec![poly(&[1, -2]), poly(&[1]), poly(&[1, -5])]).warnings();
        assert_eq!(warn.len(), 2);
    }
}
