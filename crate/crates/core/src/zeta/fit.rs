//! Reconstruction of a closed form from a truncated enriched series.
//!
//! The rank series is a sum of exponentials `sum_ρ e_ρ ρ^m`; its minimal
//! recurrence (Berlekamp–Massey over `Q`) pins down the poles `ρ = ±q^i` and
//! the multiplicities. The discriminant bits are then matched by twisting
//! one factor by `⟨u⟩`, which flips the bit for odd `m` (pole twist) or for
//! every `m` (weight twist). Any mismatch left after that is reported.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::closed_form::{minus_one_power_label, q_eps_label};
use super::{Factor, FactorList, ZetaError};
use crate::arith::upow;
use crate::gw::{FqTag, GwFq};
use crate::ring::{CoefficientRing, GwFqRing};
use crate::series::Series;

/// Connection polynomial `1 + c_1 x + ... + c_L x^L` of the shortest linear
/// recurrence generating `s`.
pub(crate) fn berlekamp_massey(s: &[BigRational]) -> Vec<BigRational> {
    let zero = BigRational::zero();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=len {
            if let Some(ci) = c.get(i) {
                d += ci * &s[n - i];
            }
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &d / &last;
        let previous = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, zero.clone());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &coef * bi;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = previous;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, zero);
    c
}

/// `ρ = σ q^i` as `(σ = +1?, i)`.
fn split_pole(rho: &BigInt, q: u64) -> Option<(bool, u32)> {
    let positive = rho.is_positive();
    let mut rest = rho.abs();
    let qb = BigInt::from(q);
    let mut i = 0u32;
    while rest > BigInt::one() {
        if !(&rest % &qb).is_zero() {
            return None;
        }
        rest /= &qb;
        i += 1;
    }
    (rest == BigInt::one()).then_some((positive, i))
}

/// Solves `sum_j e_j ρ_j^m = r_m`, `m = 1..=L`, exactly.
fn solve_vandermonde(roots: &[BigInt], ranks: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = roots.len();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|m| {
            let mut row: Vec<BigRational> =
                roots.iter().map(|r| BigRational::from_integer(crate::arith::big_pow(r, m as u64 + 1))).collect();
            row.push(BigRational::from_integer(ranks[m].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for x in rows[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in col..=n {
                    let sub = &f * &rows[col][k];
                    rows[r][k] -= sub;
                }
            }
        }
    }
    Some(rows.into_iter().map(|row| row[n].clone()).collect())
}

struct Candidate {
    positive: bool,
    exponent: u32,
    factor: Factor<GwFqRing>,
}

fn pole_text(positive: bool, i: u32, twisted: bool) -> String {
    let base = match (i, twisted) {
        (0, true) => "⟨u⟩".to_string(),
        (_, true) => format!("{}⟨u⟩", q_eps_label(i)),
        (_, false) => q_eps_label(i),
    };
    if positive {
        base
    } else {
        format!("−{base}")
    }
}

/// Recovers a [`FactorList`] whose expansion equals `series` exactly.
///
/// Poles are restricted to `±q_ε^i` up to a `⟨u⟩` twist; with `pole_basis`
/// given, only its elements are allowed as poles.
pub fn fit_dlog_rational(
    series: &Series<GwFqRing>,
    pole_basis: Option<&[GwFq]>,
) -> Result<FactorList<GwFqRing>, ZetaError> {
    let ring = series.ring();
    let field = ring.0;
    let q = field.q();
    let order = series.order();
    if order == 0 {
        return Err(ZetaError::InsufficientOrder { needed: 1, order });
    }
    let ranks: Vec<BigInt> = series.coeffs().iter().map(|c| c.rank().clone()).collect();

    // Stage 1: poles and multiplicities from the rank series.
    let rational: Vec<BigRational> = ranks.iter().cloned().map(BigRational::from_integer).collect();
    let connection = berlekamp_massey(&rational);
    let len = connection.len() - 1;
    if 2 * len > order {
        return Err(ZetaError::InsufficientOrder { needed: 2 * len, order });
    }
    // A recurrence using all the data is not confirmed by any spare term; a
    // failure then only says that more coefficients are needed.
    let saturated = 2 * len >= order;
    let fail = |reason: &str| {
        if saturated {
            ZetaError::InsufficientOrder { needed: 2 * len + 2, order }
        } else {
            ZetaError::NotDlogRational(reason.to_string())
        }
    };
    if connection.iter().any(|c| !c.is_integer()) {
        return Err(fail("rank recurrence has non-integral coefficients"));
    }
    // read highest degree first, the same coefficients give the reciprocal
    // polynomial x^L + c_1 x^(L-1) + ... + c_L, whose roots are the poles
    let mut reversed: Vec<BigInt> = connection.iter().map(|c| c.to_integer()).collect();

    let allowed: Option<Vec<BigInt>> = pole_basis.map(|basis| {
        let mut r: Vec<BigInt> = Vec::new();
        for p in basis {
            if !p.rank().is_zero() && !r.contains(p.rank()) {
                r.push(p.rank().clone());
            }
        }
        r
    });
    let candidates: Vec<BigInt> = match &allowed {
        Some(r) => r.clone(),
        None => {
            let bound = reversed[len].abs();
            let mut out = Vec::new();
            let mut i = 0u64;
            while len > 0 && upow(q, i) <= bound {
                out.push(upow(q, i));
                out.push(-upow(q, i));
                i += 1;
            }
            out
        }
    };
    let mut roots: Vec<BigInt> = Vec::new();
    for rho in candidates {
        while reversed.len() > 1 && eval(&reversed, &rho).is_zero() {
            if roots.contains(&rho) {
                return Err(fail(&format!("repeated pole {rho}")));
            }
            reversed = deflate(&reversed, &rho);
            roots.push(rho.clone());
        }
    }
    if reversed.len() > 1 {
        return Err(fail("characteristic roots of the rank recurrence are not of the form ±q^i"));
    }
    let mults =
        solve_vandermonde(&roots, &ranks).ok_or_else(|| ZetaError::NotDlogRational("singular pole system".into()))?;

    let mut parts: Vec<Candidate> = Vec::with_capacity(roots.len());
    for (rho, e) in roots.iter().zip(&mults) {
        if !e.is_integer() {
            return Err(fail(&format!("multiplicity {e} at pole {rho} is not an integer")));
        }
        let mult = e
            .to_integer()
            .to_i64()
            .ok_or_else(|| ZetaError::NotDlogRational(format!("multiplicity {e} out of range")))?;
        let (positive, exponent) =
            split_pole(rho, q).ok_or_else(|| ZetaError::NotDlogRational(format!("pole {rho} is not ±q^i")))?;
        let standard = signed_q_eps(field, positive, exponent);
        let pole = match pole_basis {
            Some(basis) => basis
                .iter()
                .find(|p| **p == standard)
                .or_else(|| basis.iter().find(|p| p.rank() == rho))
                .cloned()
                .expect("candidate ranks come from the basis"),
            None => standard.clone(),
        };
        let twisted_pole = pole != standard;
        let weight = ring.pow(&GwFq::minus_one(field), exponent as u64);
        let factor = Factor::new(weight, pole, mult)
            .labelled(minus_one_power_label(exponent), pole_text(positive, exponent, twisted_pole));
        parts.push(Candidate { positive, exponent, factor });
    }

    parts.sort_by_key(|c| (c.exponent, !c.positive));

    // Stage 2: discriminants, odd q only (GW(F_q) = Z in characteristic 2).
    if field.odd() {
        let base = FactorList::from_factors(ring, parts.iter().map(|c| c.factor.clone()).collect());
        let expanded = base.expand(order);
        let delta: Vec<u8> =
            series.coeffs().iter().zip(expanded.coeffs()).map(|(a, b)| a.disc_bit() ^ b.disc_bit()).collect();
        let (flip_odd, flip_all) = match delta.as_slice() {
            [d1] => (0, *d1),
            [d1, d2, ..] => (d1 ^ d2, *d2),
            [] => (0, 0),
        };
        let pattern_ok = delta.iter().enumerate().all(|(k, &d)| d == ((k as u8 + 1) * flip_odd + flip_all) % 2);
        if !pattern_ok {
            return Err(ZetaError::NotDlogRational(
                "discriminant bits are not of the form m·A + B relative to the rank fit".into(),
            ));
        }
        if flip_odd == 1 || flip_all == 1 {
            apply_twist(field, &mut parts, flip_odd == 1, flip_all == 1, pole_basis)?;
        }
    }

    let result = FactorList::from_factors(ring, parts.into_iter().map(|c| c.factor).collect()).normalized();
    if let Some(basis) = pole_basis {
        if let Some(f) = result.factors().iter().find(|f| !basis.contains(&f.pole)) {
            return Err(ZetaError::NotDlogRational(format!("pole {} is outside the basis", f.pole)));
        }
    }
    if result.expand(order) != *series {
        return Err(ZetaError::NotDlogRational("re-expansion does not reproduce the series".into()));
    }
    Ok(result)
}

fn signed_q_eps(field: FqTag, positive: bool, exponent: u32) -> GwFq {
    let p = GwFqRing(field).pow(&GwFq::q_eps(field), exponent as u64);
    if positive {
        p
    } else {
        -p
    }
}

/// Twists one factor by `⟨u⟩`: the pole to flip odd `m`, the weight to flip
/// every `m`. Prefers an odd multiplicity, then an odd exponent with positive
/// sign, then the smallest exponent; falls back to a rank-zero pair at pole 1.
fn apply_twist(
    field: FqTag,
    parts: &mut Vec<Candidate>,
    twist_pole: bool,
    twist_weight: bool,
    pole_basis: Option<&[GwFq]>,
) -> Result<(), ZetaError> {
    let u = GwFq::u_class(field)?;
    let pole_allowed = |p: &GwFq| pole_basis.is_none_or(|b| b.contains(&(p * &u)));
    let chosen = (0..parts.len())
        .filter(|&k| parts[k].factor.mult != 0 && (!twist_pole || pole_allowed(&parts[k].factor.pole)))
        .min_by_key(|&k| {
            let c = &parts[k];
            (c.factor.mult % 2 == 0, !(c.exponent % 2 == 1 && c.positive), c.exponent, !c.positive)
        });

    let k = match chosen {
        Some(k) if parts[k].factor.mult % 2 != 0 => k,
        Some(k) => {
            // split one copy off an even multiplicity
            parts[k].factor.mult -= 1;
            let mut piece = parts[k].factor.clone();
            piece.mult = 1;
            parts.push(Candidate { positive: parts[k].positive, exponent: parts[k].exponent, factor: piece });
            parts.len() - 1
        }
        None => {
            // a rank-zero pair ⟨1⟩ − ⟨1⟩ at pole 1, one half of which gets twisted
            let one = GwFq::one(field);
            for mult in [-1, 1] {
                let factor = Factor::new(one.clone(), one.clone(), mult).labelled("1", "1");
                parts.push(Candidate { positive: true, exponent: 0, factor });
            }
            parts.len() - 1
        }
    };
    let c = &mut parts[k];
    if twist_pole {
        let was_twisted = c.factor.pole_label.as_deref().is_some_and(|l| l.contains("⟨u⟩"));
        c.factor.pole = &c.factor.pole * &u;
        c.factor.pole_label = Some(pole_text(c.positive, c.exponent, !was_twisted));
    }
    if twist_weight {
        c.factor.weight = &c.factor.weight * &u;
        let label = match c.factor.weight_label.as_deref() {
            Some("1") => "⟨u⟩",
            Some("⟨−1⟩") => "⟨−u⟩",
            Some("⟨u⟩") => "1",
            _ => "⟨−1⟩",
        };
        c.factor.weight_label = Some(label.to_string());
    }
    Ok(())
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides a monic polynomial (highest degree first) by `x - root`.
fn deflate(poly: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(poly.len() - 1);
    let mut carry = BigInt::zero();
    for c in &poly[..poly.len() - 1] {
        carry = carry * root + c;
        out.push(carry.clone());
    }
    out
}
