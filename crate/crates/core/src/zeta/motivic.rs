//! `N_m` as a motivic measure: products go to products, stratifications to sums.

use super::{enriched_trace_formal, enriched_trace_nm, ZetaError};
use crate::gw::GwFq;
use crate::varieties::{product, PointCountSource};

/// Inconsistent counts make an identity false rather than an error.
fn settle(r: Result<bool, ZetaError>) -> Result<bool, ZetaError> {
    match r {
        Err(ZetaError::InconsistentCounts { .. }) => Ok(false),
        other => other,
    }
}

/// `N_m(XY) = N_m(X) N_m(Y)` for `m <= order`, with `xy` standing for the product.
pub fn multiplicativity_check(
    x: &PointCountSource,
    y: &PointCountSource,
    xy: &PointCountSource,
    order: usize,
) -> Result<bool, ZetaError> {
    settle((|| {
        for m in 1..=order as u64 {
            let lhs = enriched_trace_nm(xy, m)?;
            let rhs = enriched_trace_nm(x, m)? * enriched_trace_nm(y, m)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    })())
}

/// `N_m(X) = N_m(Z) + N_m(U)` for a closed `Z` with open complement `U`,
/// evaluating the trace formula formally so that `U` need not be proper.
pub fn cut_and_paste_check(
    whole: &PointCountSource,
    closed: &PointCountSource,
    open: &PointCountSource,
    order: usize,
) -> Result<bool, ZetaError> {
    settle((|| {
        for m in 1..=order as u64 {
            let lhs = enriched_trace_formal(whole, m)?;
            let rhs: GwFq = enriched_trace_formal(closed, m)? + enriched_trace_formal(open, m)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    })())
}

/// Multiplicativity on the catalog product of `x` and `y`.
pub fn motivic_check(x: &PointCountSource, y: &PointCountSource, order: usize) -> Result<bool, ZetaError> {
    let xy = product(x, y)?;
    multiplicativity_check(x, y, &xy, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::FqTag;
    use crate::varieties::{affine_space, from_table, grassmannian, projective_space, weil_restriction_p1};

    fn fq(q: u64) -> FqTag {
        FqTag::new(q).unwrap()
    }

    #[test]
    fn products() {
        let p1 = projective_space(fq(3), 1);
        assert!(motivic_check(&p1, &p1, 8).unwrap());
        let g = grassmannian(fq(5), 1, 3).unwrap();
        assert!(motivic_check(&g, &weil_restriction_p1(fq(5)), 8).unwrap());
    }

    #[test]
    fn stratification_of_projective_space() {
        for n in 1..=3u32 {
            let f = fq(5);
            let ok = cut_and_paste_check(&projective_space(f, n), &projective_space(f, n - 1), &affine_space(f, n), 8);
            assert!(ok.unwrap(), "n = {n}");
        }
    }

    #[test]
    fn negative_controls() {
        let f = fq(3);
        let p1 = projective_space(f, 1);
        let mut counts = crate::varieties::product(&p1, &p1).unwrap().counts(8).unwrap();
        counts[1] += 2;
        let fake = from_table(f, counts, true).unwrap();
        assert!(!multiplicativity_check(&p1, &p1, &fake, 8).unwrap());

        let mut counts = affine_space(f, 2).counts(8).unwrap();
        counts[0] += 1;
        let fake_open = from_table(f, counts, false).unwrap();
        assert!(!cut_and_paste_check(&projective_space(f, 2), &p1, &fake_open, 8).unwrap());
    }
}
