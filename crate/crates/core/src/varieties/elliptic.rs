use num_bigint::BigInt;

use super::{PointCountSource, SourceKind, VarietyError};
use crate::arith::{legendre, upow};
use crate::gw::FqTag;

/// `|E(F_p)|` for `y^2 = x^3 + Ax + B`, summing the quadratic character over
/// `x` in `F_p` (plus the point at infinity).
pub fn elliptic_point_count(p: u64, a: i64, b: i64) -> u64 {
    let affine: i64 = (0..p as i64)
        .map(|x| {
            let rhs = (x * x % p as i64 * x + a * x + b).rem_euclid(p as i64);
            1 + legendre(rhs, p) as i64
        })
        .sum();
    (affine + 1) as u64
}

/// The curve `y^2 = x^3 + Ax + B` over a prime field of odd characteristic.
pub fn elliptic_curve(field: FqTag, a: i64, b: i64) -> Result<PointCountSource, VarietyError> {
    let p = field.p();
    if !field.odd() {
        return Err(VarietyError::EvenCharacteristic);
    }
    if field.k() != 1 {
        return Err(VarietyError::NotPrimeField(field.q()));
    }
    let pi = p as i128;
    let (ar, br) = ((a as i128).rem_euclid(pi), (b as i128).rem_euclid(pi));
    if (4 * ar * ar % pi * ar + 27 * br * br).rem_euclid(pi) == 0 {
        return Err(VarietyError::SingularCurve { p });
    }
    let count = elliptic_point_count(p, a, b);
    let trace = BigInt::from(p + 1) - BigInt::from(count);
    Ok(PointCountSource::build(
        field,
        1,
        true,
        format!("ell({a},{b})"),
        None,
        SourceKind::Elliptic { a_coeff: a, b_coeff: b, trace },
    ))
}

/// `p^m + 1 - (λ^m + λ̄^m)`, with the power sums from
/// `s_m = a s_{m-1} - p s_{m-2}`, `s_0 = 2`, `s_1 = a`.
pub(super) fn count_from_trace(p: u64, trace: &BigInt, m: u32) -> BigInt {
    let pb = BigInt::from(p);
    let mut prev = BigInt::from(2);
    let mut cur = trace.clone();
    for _ in 1..m {
        let next = trace * &cur - &pb * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    upow(p, m as u64) + 1 - cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u64) -> FqTag {
        FqTag::new(q).unwrap()
    }

    #[test]
    fn curve_over_f7() {
        let e = elliptic_curve(fq(7), 2, 3).unwrap();
        assert_eq!(e.count(1).unwrap(), BigInt::from(6));
        assert_eq!(e.count(2).unwrap(), BigInt::from(60));
        match e.kind() {
            SourceKind::Elliptic { trace, .. } => assert_eq!(*trace, BigInt::from(2)),
            other => panic!("unexpected kind {other:?}"),
        }
    }

    #[test]
    fn rejected_curves() {
        assert_eq!(elliptic_curve(fq(5), 0, 0), Err(VarietyError::SingularCurve { p: 5 }));
        assert_eq!(elliptic_curve(fq(2), 1, 1), Err(VarietyError::EvenCharacteristic));
        assert_eq!(elliptic_curve(fq(9), 1, 1), Err(VarietyError::NotPrimeField(9)));
    }

    #[test]
    fn brute_force_first_count() {
        // count solutions of y^2 = x^3 + Ax + B over all (x, y) directly
        for p in [5u64, 7, 11, 13] {
            for a in 0..4i64 {
                for b in 0..4i64 {
                    let Ok(e) = elliptic_curve(fq(p), a, b) else { continue };
                    let pi = p as i64;
                    let mut n = 1i64;
                    for x in 0..pi {
                        for y in 0..pi {
                            if (y * y - (x * x * x + a * x + b)).rem_euclid(pi) == 0 {
                                n += 1;
                            }
                        }
                    }
                    assert_eq!(e.count(1).unwrap(), BigInt::from(n), "p={p} A={a} B={b}");
                }
            }
        }
    }

    #[test]
    fn hasse_bound() {
        for p in [5u64, 7, 11, 13] {
            for a in 0..4i64 {
                for b in 0..4i64 {
                    let Ok(e) = elliptic_curve(fq(p), a, b) else { continue };
                    for m in 1..=6u32 {
                        let n = e.count(m).unwrap();
                        let dev = upow(p, m as u64) + 1 - n;
                        // |dev| <= 2 p^{m/2}  <=>  dev^2 <= 4 p^m
                        assert!(&dev * &dev <= upow(p, m as u64) * 4, "p={p} A={a} B={b} m={m}");
                    }
                }
            }
        }
    }
}
