//! Closed forms `sum_j w_j * e_j * dlog 1/(1 - p_j t)` and the cellular and
//! Weil-restriction instances.

use std::fmt;

use num_bigint::BigInt;

use super::ZetaError;
use crate::gw::{FqTag, GwFq, GwInt};
use crate::ring::{CoefficientRing, GwFqRing, GwIntRing};
use crate::series::Series;
use crate::varieties::CellData;

/// One term `weight * mult * dlog 1/(1 - pole t)`, whose coefficient of
/// `t^(m-1)` is `weight * mult * pole^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor<R: CoefficientRing> {
    pub weight: R::Elem,
    pub pole: R::Elem,
    pub mult: i64,
    /// Symbolic renderings such as `⟨−1⟩` or `q_ε²`, used for display only.
    pub weight_label: Option<String>,
    pub pole_label: Option<String>,
}

impl<R: CoefficientRing> Factor<R> {
    pub fn new(weight: R::Elem, pole: R::Elem, mult: i64) -> Self {
        Factor { weight, pole, mult, weight_label: None, pole_label: None }
    }

    pub fn labelled(mut self, weight: impl Into<String>, pole: impl Into<String>) -> Self {
        self.weight_label = Some(weight.into());
        self.pole_label = Some(pole.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorList<R: CoefficientRing> {
    ring: R,
    factors: Vec<Factor<R>>,
}

impl<R: CoefficientRing> FactorList<R> {
    pub fn new(ring: R) -> Self {
        FactorList { ring, factors: Vec::new() }
    }

    pub fn from_factors(ring: R, factors: Vec<Factor<R>>) -> Self {
        FactorList { ring, factors }
    }

    pub fn push(&mut self, factor: Factor<R>) {
        self.factors.push(factor);
    }

    pub fn ring(&self) -> R {
        self.ring
    }

    pub fn factors(&self) -> &[Factor<R>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The series whose coefficient of `t^(m-1)` is `sum_j w_j e_j p_j^m`.
    pub fn expand(&self, order: usize) -> Series<R> {
        let r = self.ring;
        let mut coeffs = vec![r.zero(); order];
        for f in &self.factors {
            let base = r.scale(&BigInt::from(f.mult), &f.weight);
            let mut power = f.pole.clone();
            for c in coeffs.iter_mut() {
                *c = r.add(c, &r.mul(&base, &power));
                power = r.mul(&power, &f.pole);
            }
        }
        Series::from_coeffs(r, coeffs)
    }

    /// Applies a ring map to every weight and pole, keeping labels.
    pub fn map<S: CoefficientRing>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> FactorList<S> {
        let factors = self
            .factors
            .iter()
            .map(|x| Factor {
                weight: f(&x.weight),
                pole: f(&x.pole),
                mult: x.mult,
                weight_label: x.weight_label.clone(),
                pole_label: x.pole_label.clone(),
            })
            .collect();
        FactorList { ring: target, factors }
    }

    /// Merges terms with equal weight and pole and drops zero multiplicities.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<Factor<R>> = Vec::new();
        for f in &self.factors {
            match out.iter_mut().find(|g| g.weight == f.weight && g.pole == f.pole) {
                Some(g) => g.mult += f.mult,
                None => out.push(f.clone()),
            }
        }
        out.retain(|g| g.mult != 0);
        FactorList { ring: self.ring, factors: out }
    }

    /// Equality as multisets of `(weight, pole)` with multiplicity.
    pub fn same_terms(&self, other: &Self) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.factors.len() == b.factors.len()
            && a.factors
                .iter()
                .all(|f| b.factors.iter().any(|g| g.weight == f.weight && g.pole == f.pole && g.mult == f.mult))
    }
}

impl<R: CoefficientRing> fmt::Display for FactorList<R>
where
    R::Elem: fmt::Display,
{
    /// Renders `w d/dt log 1/(1 − p t)^e` terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (idx, x) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let weight = x.weight_label.clone().unwrap_or_else(|| format!("({})", x.weight));
            if weight != "1" {
                write!(f, "{weight} ")?;
            }
            let pole = x.pole_label.clone().unwrap_or_else(|| format!("({})", x.pole));
            let linear = match (pole.as_str(), pole.strip_prefix('−')) {
                ("1", _) => "1 − t".to_string(),
                (_, Some("1")) => "1 + t".to_string(),
                (_, Some(rest)) => format!("1 + {rest} t"),
                _ => format!("1 − {pole} t"),
            };
            write!(f, "d/dt log 1/({linear})")?;
            if x.mult != 1 {
                write!(f, "{}", superscript(x.mult))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    if n < 0 {
        out.push('⁻');
    }
    for c in n.unsigned_abs().to_string().bytes() {
        out.push(DIGITS[(c - b'0') as usize]);
    }
    out
}

/// `q_ε^i` as display text.
pub(crate) fn q_eps_label(i: u32) -> String {
    match i {
        0 => "1".into(),
        1 => "q_ε".into(),
        _ => format!("q_ε{}", superscript(i as i64)),
    }
}

pub(crate) fn minus_one_power_label(i: u32) -> &'static str {
    if i.is_multiple_of(2) {
        "1"
    } else {
        "⟨−1⟩"
    }
}

fn cellular_factors<R: CoefficientRing>(
    ring: R,
    minus_one: &R::Elem,
    q_eps: &R::Elem,
    cells: &CellData,
) -> FactorList<R> {
    let mut list = FactorList::new(ring);
    for (i, &b) in cells.ranks().iter().enumerate() {
        if b == 0 {
            continue;
        }
        let i = i as u32;
        let weight = ring.pow(minus_one, i as u64);
        let pole = ring.pow(q_eps, i as u64);
        list.push(Factor::new(weight, pole, b as i64).labelled(minus_one_power_label(i), q_eps_label(i)));
    }
    list
}

/// `sum_i ⟨−1⟩^i b_i dlog 1/(1 − q_ε^i t)` for a strictly cellular variety.
pub fn cellular_closed_form(field: FqTag, cells: &CellData, order: usize) -> (FactorList<GwFqRing>, Series<GwFqRing>) {
    let ring = GwFqRing(field);
    let list = cellular_factors(ring, &GwFq::minus_one(field), &GwFq::q_eps(field), cells);
    let series = list.expand(order);
    (list, series)
}

/// The same closed form over `GW(Z)`, with `q_ε` read as `n_ε(q)` there.
pub fn cellular_closed_form_int(q: u64, cells: &CellData, order: usize) -> (FactorList<GwIntRing>, Series<GwIntRing>) {
    let list = cellular_factors(GwIntRing, &GwInt::minus_one(), &GwInt::n_eps(q), cells);
    let series = list.expand(order);
    (list, series)
}

/// The closed form of `Res_{F_{q^2}/F_q} P^1`:
/// `1/(1−t)`, `1/(1−q_ε²t)`, `⟨−u⟩ 1/(1−q_ε⟨u⟩t)` and `⟨−1⟩ 1/(1+q_ε t)`.
pub fn res_p1_closed_form(field: FqTag, order: usize) -> Result<(FactorList<GwFqRing>, Series<GwFqRing>), ZetaError> {
    if !field.odd() {
        return Err(ZetaError::EvenCharacteristic(field.q()));
    }
    let ring = GwFqRing(field);
    let one = GwFq::one(field);
    let minus_one = GwFq::minus_one(field);
    let u = GwFq::u_class(field)?;
    let qe = GwFq::q_eps(field);
    let list = FactorList::from_factors(
        ring,
        vec![
            Factor::new(one.clone(), one, 1).labelled("1", "1"),
            Factor::new(GwFq::one(field), &qe * &qe, 1).labelled("1", q_eps_label(2)),
            Factor::new(&minus_one * &u, &qe * &u, 1).labelled("⟨−u⟩", "q_ε⟨u⟩"),
            Factor::new(minus_one, -&qe, 1).labelled("⟨−1⟩", "−q_ε"),
        ],
    );
    let series = list.expand(order);
    Ok((list, series))
}

/// An integral form of [`res_p1_closed_form`] when `−1` is a non-square
/// (`q ≡ 3 mod 4`), so that `u = −1` lifts to `⟨−1⟩` over `Z`.
pub fn res_p1_closed_form_int(q: u64, order: usize) -> Option<(FactorList<GwIntRing>, Series<GwIntRing>)> {
    if q % 4 != 3 {
        return None;
    }
    let qe = GwInt::n_eps(q);
    let list = FactorList::from_factors(
        GwIntRing,
        vec![
            Factor::new(GwInt::one(), GwInt::one(), 1).labelled("1", "1"),
            Factor::new(GwInt::one(), &qe * &qe, 1).labelled("1", q_eps_label(2)),
            Factor::new(GwInt::one(), &GwInt::minus_one() * &qe, 1).labelled("1", "⟨−1⟩q_ε"),
            Factor::new(GwInt::minus_one(), -&qe, 1).labelled("⟨−1⟩", "−q_ε"),
        ],
    );
    let series = list.expand(order);
    Some((list, series))
}

/// `χ_c = sum_i ⟨−1⟩^i b_i`.
pub fn euler_characteristic(cells: &CellData, field: FqTag) -> GwFq {
    euler_characteristic_int(cells).reduce_mod_p(field)
}

pub fn euler_characteristic_int(cells: &CellData) -> GwInt {
    let (even, odd) =
        cells.ranks().iter().enumerate().fold(
            (0u64, 0u64),
            |(e, o), (i, &b)| {
                if i % 2 == 0 {
                    (e + b, o)
                } else {
                    (e, o + b)
                }
            },
        );
    GwInt::new(even, odd)
}

/// Checks `dlog ζ(t) = −χ t⁻¹ + ⟨−1⟩ dlog ζ(1/(q_ε^n t))` for odd `n` on
/// the level of factor lists.
///
/// Substituting turns `w e dlog 1/(1 − q_ε^i t)` into
/// `w e dlog 1/(1 − q_ε^(n−i) t) + w e t⁻¹`, so the identity holds iff the
/// list is invariant under `(w, q_ε^i, e) ↦ (⟨−1⟩w, q_ε^(n−i), e)` and
/// `⟨−1⟩ sum_j w_j e_j = χ`.
pub fn functional_equation_check(
    factors: &FactorList<GwFqRing>,
    n: u32,
    field: FqTag,
    chi: &GwFq,
) -> Result<bool, ZetaError> {
    if n.is_multiple_of(2) {
        return Err(ZetaError::EvenDimension(n));
    }
    let ring = GwFqRing(field);
    if factors.ring() != ring {
        return Err(ZetaError::FieldMismatch { left: factors.ring().0.q(), right: field.q() });
    }
    let minus_one = GwFq::minus_one(field);
    let qe = GwFq::q_eps(field);
    let powers: Vec<GwFq> = (0..=n).map(|i| ring.pow(&qe, i as u64)).collect();

    let mut flipped = FactorList::new(ring);
    for f in factors.factors() {
        let Some(i) = powers.iter().position(|p| *p == f.pole) else {
            return Ok(false);
        };
        flipped.push(Factor::new(&minus_one * &f.weight, powers[n as usize - i].clone(), f.mult));
    }
    let constant =
        factors.factors().iter().fold(GwFq::zero(field), |acc, f| acc + f.weight.scale(&BigInt::from(f.mult)));
    Ok(flipped.same_terms(factors) && &minus_one * &constant == *chi)
}
