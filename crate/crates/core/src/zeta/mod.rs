//! The enriched zeta pipeline: closed points, enriched traces `N_m`, and the
//! series `sum_m N_m t^(m-1)` with its realizations.

mod closed_form;
mod fit;
mod motivic;
mod signature;
mod trace;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{divisors, mobius};
use crate::gw::{FqTag, GwError, GwFq};
use crate::ring::{GwFqRing, IntegerRing};
use crate::series::{Series, SeriesError};
use crate::varieties::{PointCountSource, SourceKind, VarietyError};

pub use closed_form::{
    cellular_closed_form, cellular_closed_form_int, euler_characteristic, euler_characteristic_int,
    functional_equation_check, res_p1_closed_form, res_p1_closed_form_int, Factor, FactorList,
};
pub use fit::fit_dlog_rational;
pub use motivic::{cut_and_paste_check, motivic_check, multiplicativity_check};
pub use signature::{integral_lift, sign_check_via_reduction, sign_series_from_topology, signed_series, TopologyData};
pub use trace::{cellular_trace, frobenius_cell_matrices};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Gw(#[from] GwError),
    #[error("inconsistent point counts: {identity} is not a nonnegative integer")]
    InconsistentCounts { degree: u64, identity: String },
    #[error("pipeline requires proper: {0} is not flagged proper")]
    NotProper(String),
    #[error("rank of N_{m} is {rank} but the point count is {count}")]
    RankMismatch { m: usize, rank: BigInt, count: BigInt },
    #[error("functional equation stated only for odd n, got n = {0}")]
    EvenDimension(u32),
    #[error("closed form requires odd characteristic, got q = {0}")]
    EvenCharacteristic(u64),
    #[error("no cell data for {0}")]
    NoCellData(String),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("not dlog-rational over the candidate basis: {0}")]
    NotDlogRational(String),
    #[error("insufficient order: at least {needed} coefficients needed, have {order}")]
    InsufficientOrder { needed: usize, order: usize },
}

/// `alpha(i)`, the number of closed points of degree `i`, from counts
/// `counts[m - 1] = |X(F_{q^m})|` by Möbius inversion.
pub fn alpha_from_counts(counts: &[BigInt], i: u64) -> Result<BigInt, ZetaError> {
    let mut sum = BigInt::zero();
    let mut terms = Vec::new();
    for d in divisors(i) {
        let c = &counts[(i / d) as usize - 1];
        match mobius(d) {
            0 => continue,
            1 => {
                sum += c;
                terms.push(format!("+{c}"));
            }
            _ => {
                sum -= c;
                terms.push(format!("-{c}"));
            }
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(i));
    if !rem.is_zero() || quot.is_negative() {
        let identity = format!("alpha({i}) = (1/{i})({}) = {sum}/{i}", terms.join(" "));
        return Err(ZetaError::InconsistentCounts { degree: i, identity });
    }
    Ok(quot)
}

pub fn alpha(source: &PointCountSource, i: u64) -> Result<BigInt, ZetaError> {
    let counts = source.counts(i as usize)?;
    alpha_from_counts(&counts, i)
}

/// `sum_{i | m} alpha(i) Tr_{F_{q^i}/F_q} <1>` from a count prefix of length >= m.
pub fn trace_from_counts(field: FqTag, counts: &[BigInt], m: u64) -> Result<GwFq, ZetaError> {
    let mut acc = GwFq::zero(field);
    for i in divisors(m) {
        let a = alpha_from_counts(counts, i)?;
        acc = acc + GwFq::transfer(field, i as i64)?.scale(&a);
    }
    Ok(acc)
}

/// `N_m(X)`, the enriched trace of the m-th Frobenius power; `X` must be proper.
pub fn enriched_trace_nm(source: &PointCountSource, m: u64) -> Result<GwFq, ZetaError> {
    if !source.is_proper() {
        return Err(ZetaError::NotProper(source.label().to_string()));
    }
    enriched_trace_formal(source, m)
}

/// The same formula evaluated on any count sequence, proper or not.
pub fn enriched_trace_formal(source: &PointCountSource, m: u64) -> Result<GwFq, ZetaError> {
    let counts = source.counts(m as usize)?;
    trace_from_counts(source.field(), &counts, m)
}

/// Output of [`dlog_zeta`].
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaReport {
    pub enriched: Series<GwFqRing>,
    pub rank_series: Series<IntegerRing>,
    pub disc_series: Vec<u8>,
    pub closed_form: Option<FactorList<GwFqRing>>,
    pub sign_series: Option<Series<IntegerRing>>,
}

/// The enriched logarithmic zeta series to `order` coefficients.
pub fn dlog_zeta(source: &PointCountSource, order: usize) -> Result<ZetaReport, ZetaError> {
    if !source.is_proper() {
        return Err(ZetaError::NotProper(source.label().to_string()));
    }
    let field = source.field();
    let counts = source.counts(order)?;
    let coeffs = (1..=order as u64).map(|m| trace_from_counts(field, &counts, m)).collect::<Result<Vec<_>, _>>()?;
    for (idx, (n, c)) in coeffs.iter().zip(&counts).enumerate() {
        if n.rank() != c {
            return Err(ZetaError::RankMismatch { m: idx + 1, rank: n.rank().clone(), count: c.clone() });
        }
    }
    let enriched = Series::from_coeffs(GwFqRing(field), coeffs);
    let rank_series = enriched.map(IntegerRing, |x| x.rank().clone());
    let disc_series = enriched.coeffs().iter().map(GwFq::disc_bit).collect();

    let closed_form = match (source.cells(), source.kind()) {
        (Some(cells), _) => Some(cellular_closed_form(field, cells, order).0),
        (None, SourceKind::ResP1) if field.odd() => Some(res_p1_closed_form(field, order)?.0),
        _ => None,
    };
    let sign_series = integral_lift(source).map(|lift| signed_series(&lift, order));
    Ok(ZetaReport { enriched, rank_series, disc_series, closed_form, sign_series })
}

/// `disc N_m` computed straight from the counts as
/// `sum_{i | m, i even} (1/i) sum_{d | i} mu(d) |X(F_{q^{i/d}})|  mod 2`.
pub fn disc_series_direct(source: &PointCountSource, order: usize) -> Result<Vec<u8>, ZetaError> {
    let counts = source.counts(order)?;
    let odd_field = source.field().odd();
    (1..=order as u64)
        .map(|m| {
            let mut parity = BigInt::zero();
            for i in divisors(m).into_iter().filter(|i| i % 2 == 0) {
                let inner: BigInt =
                    divisors(i).into_iter().map(|d| BigInt::from(mobius(d)) * &counts[(i / d) as usize - 1]).sum();
                let (quot, rem) = inner.div_rem(&BigInt::from(i));
                if !rem.is_zero() {
                    return Err(ZetaError::InconsistentCounts {
                        degree: i,
                        identity: format!("alpha({i}) = {inner}/{i}"),
                    });
                }
                parity += quot;
            }
            Ok(u8::from(odd_field && parity.is_odd()))
        })
        .collect()
}
