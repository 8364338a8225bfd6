//! Real realization: signatures of integral lifts and of topological data.

use num_bigint::BigInt;

use super::closed_form::{cellular_closed_form_int, res_p1_closed_form_int};
use super::{dlog_zeta, FactorList, ZetaError};
use crate::gw::GwInt;
use crate::ring::{GwFqRing, GwIntRing, IntegerRing};
use crate::series::{dlog_poly, Poly, Series, SeriesError};
use crate::varieties::{PointCountSource, SourceKind};

/// Characteristic polynomials `D_i(t) = det(1 − t φ | H^i)` of an
/// endomorphism on the integral cohomology of the real points.
#[derive(Clone, Debug, PartialEq)]
pub struct TopologyData {
    polys: Vec<Poly<IntegerRing>>,
}

impl TopologyData {
    pub fn new(polys: Vec<Poly<IntegerRing>>) -> Result<Self, SeriesError> {
        if polys.iter().any(|p| !p.is_unit_normalized()) {
            return Err(SeriesError::NotUnitNormalized);
        }
        Ok(TopologyData { polys })
    }

    /// From integer coefficient lists, degree by degree.
    pub fn from_coefficients(rows: &[&[i64]]) -> Result<Self, SeriesError> {
        let polys = rows.iter().map(|r| Poly::new(IntegerRing, r.iter().map(|&c| BigInt::from(c)).collect())).collect();
        Self::new(polys)
    }

    /// `S^1 × S^1` with the identity action.
    pub fn torus() -> Self {
        Self::from_coefficients(&[&[1, -1], &[1, -2, 1], &[1, -1]]).expect("unit-normalized")
    }

    /// `S^2` with the identity action.
    pub fn sphere() -> Self {
        Self::from_coefficients(&[&[1, -1], &[1], &[1, -1]]).expect("unit-normalized")
    }

    pub fn polys(&self) -> &[Poly<IntegerRing>] {
        &self.polys
    }
}

/// `sum_i −(−1)^i dlog D_i`.
pub fn sign_series_from_topology(top: &TopologyData, order: usize) -> Result<Series<IntegerRing>, SeriesError> {
    let mut acc = Series::zero(IntegerRing, order);
    for (i, d) in top.polys.iter().enumerate() {
        let term = dlog_poly(d, order)?;
        acc = if i % 2 == 0 { acc.sub(&term)? } else { acc.add(&term)? };
    }
    Ok(acc)
}

/// A closed form over `GW(Z)` reducing to the variety's closed form over
/// `F_q`, when one is known: cellular varieties for every `q`, and the Weil
/// restriction of `P^1` when `q ≡ 3 mod 4`.
pub fn integral_lift(source: &PointCountSource) -> Option<FactorList<GwIntRing>> {
    let q = source.field().q();
    if let Some(cells) = source.cells() {
        return Some(cellular_closed_form_int(q, cells, 0).0);
    }
    match source.kind() {
        SourceKind::ResP1 => res_p1_closed_form_int(q, 0).map(|(list, _)| list),
        _ => None,
    }
}

/// Coefficientwise signature of the expanded lift.
pub fn signed_series(lift: &FactorList<GwIntRing>, order: usize) -> Series<IntegerRing> {
    lift.expand(order).map(IntegerRing, GwInt::sign)
}

/// Expands the lift, reduces it to `GW(F_q)` and compares with the point-count pipeline.
pub fn sign_check_via_reduction(
    lift: &FactorList<GwIntRing>,
    source: &PointCountSource,
    order: usize,
) -> Result<bool, ZetaError> {
    let field = source.field();
    let reduced = lift.expand(order).map(GwFqRing(field), |x| x.reduce_mod_p(field));
    Ok(reduced == dlog_zeta(source, order)?.enriched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::FqTag;
    use crate::varieties::{product, projective_space, weil_restriction_p1};
    use crate::zeta::Factor;

    fn fq(q: u64) -> FqTag {
        FqTag::new(q).unwrap()
    }

    fn constant(c: i64, order: usize) -> Series<IntegerRing> {
        Series::from_coeffs(IntegerRing, vec![BigInt::from(c); order])
    }

    #[test]
    fn topological_sign_series() {
        assert_eq!(sign_series_from_topology(&TopologyData::torus(), 10).unwrap(), constant(0, 10));
        assert_eq!(sign_series_from_topology(&TopologyData::sphere(), 10).unwrap(), constant(2, 10));
        let trivial = TopologyData::from_coefficients(&[&[1], &[1], &[1]]).unwrap();
        assert_eq!(sign_series_from_topology(&trivial, 5).unwrap(), constant(0, 5));
        assert!(TopologyData::from_coefficients(&[&[2, 1]]).is_err());
    }

    #[test]
    fn signatures_of_lifts() {
        for q in [3u64, 7, 11] {
            let f = fq(q);
            let p1 = projective_space(f, 1);
            let quadric = product(&p1, &p1).unwrap();
            let lift = integral_lift(&quadric).unwrap();
            assert_eq!(signed_series(&lift, 12), constant(0, 12));
            assert!(sign_check_via_reduction(&lift, &quadric, 12).unwrap());

            let res = weil_restriction_p1(f);
            let lift = integral_lift(&res).unwrap();
            assert_eq!(signed_series(&lift, 12), constant(2, 12));
            assert!(sign_check_via_reduction(&lift, &res, 12).unwrap());
        }
        assert!(integral_lift(&weil_restriction_p1(fq(5))).is_none());
    }

    #[test]
    fn reduction_of_projective_lifts() {
        let p1 = projective_space(fq(3), 1);
        let qe = GwInt::n_eps(3);
        let lift = FactorList::from_factors(
            GwIntRing,
            vec![Factor::new(GwInt::one(), GwInt::one(), 1), Factor::new(GwInt::minus_one(), qe.clone(), 1)],
        );
        assert!(sign_check_via_reduction(&lift, &p1, 8).unwrap());
        let perturbed = FactorList::from_factors(
            GwIntRing,
            vec![Factor::new(GwInt::one(), GwInt::one(), 1), Factor::new(GwInt::one(), qe, 1)],
        );
        assert!(!sign_check_via_reduction(&perturbed, &p1, 8).unwrap());
        let p2 = projective_space(fq(5), 2);
        assert!(sign_check_via_reduction(&integral_lift(&p2).unwrap(), &p2, 8).unwrap());
    }
}
