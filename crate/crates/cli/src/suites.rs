//! Invariant suites behind `gwzeta check`.
//!
//! Each suite returns one `(name, passed)` row per invariant and instance.
//! Random inputs come from a fixed-seed generator, so runs are reproducible.

use std::fmt::Display;

use gwzeta::series::dlog_poly;
use gwzeta::varieties::{affine_space, catalog, from_table, projective_space, PointCountSource, SourceKind};
use gwzeta::zeta::{
    cellular_closed_form, cellular_trace, cut_and_paste_check, disc_series_direct, dlog_zeta, enriched_trace_nm,
    euler_characteristic, fit_dlog_rational, frobenius_cell_matrices, functional_equation_check, integral_lift,
    motivic_check, res_p1_closed_form, sign_check_via_reduction, sign_series_from_topology, signed_series,
    TopologyData, ZetaError,
};
use gwzeta::{CoefficientRing, FqTag, GwFq, GwFqRing, GwInt, IntegerRing, RingMatrix, Series};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

pub const SUITES: [&str; 10] =
    ["rings", "newton", "motivic", "signs", "closed-forms", "ranks", "discs", "traces", "fe", "fit"];

pub const SEED: u64 = 0x6777_7a65_7461;

pub type Rows = Vec<(String, bool)>;

fn record<E: Display>(rows: &mut Rows, name: String, result: Result<bool, E>) {
    match result {
        Ok(ok) => rows.push((name, ok)),
        Err(e) => rows.push((format!("{name} ({e})"), false)),
    }
}

/// Runs `suite` (or every suite for `all`) over `fields` to `order` coefficients.
pub fn run(suite: &str, fields: &[FqTag], order: usize) -> Result<Rows, CliError> {
    if suite == "all" {
        let mut rows = Rows::new();
        for s in SUITES {
            rows.extend(run(s, fields, order)?);
        }
        return Ok(rows);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    Ok(match suite {
        "rings" => rings(fields, 200, &mut rng),
        "newton" => newton(fields, 200, order, &mut rng),
        "motivic" => motivic(fields, order),
        "signs" => signs(fields, order),
        "closed-forms" => closed_forms(fields, order),
        "ranks" => ranks(fields, order),
        "discs" => discs(fields, order),
        "traces" => traces(fields, order),
        "fe" => functional_equation(fields),
        "fit" => fit(fields, order),
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite {other:?}; expected all or one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

fn random_gw(field: FqTag, rng: &mut impl Rng, span: i64) -> GwFq {
    GwFq::new(field, rng.gen_range(-span..=span), rng.gen_bool(0.5))
}

/// Ring axioms, `⟨a⟩h = h`, multiplicativity of `n_ε`, reduction from `GW(Z)`
/// as a ring map, and the absence of a half of `⟨1⟩ − ⟨u⟩`.
pub fn rings(fields: &[FqTag], samples: usize, rng: &mut impl Rng) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        let (mut axioms, mut reduction) = (true, true);
        for _ in 0..samples {
            let (a, b, c) = (random_gw(f, rng, 50), random_gw(f, rng, 50), random_gw(f, rng, 50));
            axioms &= &(&a + &b) + &c == &a + &(&b + &c)
                && &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &b == &b * &a
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && &(&a + &b) - &b == a
                && &a * &GwFq::one(f) == a;
            let x = GwInt::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            let y = GwInt::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            reduction &= (&x * &y).reduce_mod_p(f) == &x.reduce_mod_p(f) * &y.reduce_mod_p(f)
                && (&x + &y).reduce_mod_p(f) == &x.reduce_mod_p(f) + &y.reduce_mod_p(f);
        }
        rows.push((format!("rings: commutative ring axioms over {f}"), axioms));
        rows.push((format!("rings: GW(Z) -> GW({f}) is a ring map"), reduction));
        let h = GwFq::hyperbolic(f);
        let absorbs = (1..f.p() as i64).all(|a| GwFq::gen(f, a).map(|g| &g * &h == h).unwrap_or(false));
        rows.push((format!("rings: ⟨a⟩h = h over {f}"), absorbs));
        let eps =
            (0..=12u64).all(|n| (0..=12u64).all(|m| GwFq::n_eps(f, n * m) == &GwFq::n_eps(f, n) * &GwFq::n_eps(f, m)));
        rows.push((format!("rings: n_ε multiplicative over {f}"), eps));
        if f.odd() {
            let target = &GwFq::one(f) - &GwFq::u_class(f).expect("odd field");
            let none = target.halves().is_empty()
                && (-200..=200i64)
                    .all(|r| [false, true].iter().all(|&s| GwFq::new(f, r, s).scale(&2.into()) != target));
            rows.push((format!("rings: 2x = ⟨1⟩ − ⟨u⟩ unsolvable over {f}"), none));
        }
    }
    rows
}

fn random_matrix<R: CoefficientRing>(ring: R, n: usize, mut entry: impl FnMut() -> R::Elem) -> RingMatrix<R> {
    let rows = (0..n).map(|_| (0..n).map(|_| entry()).collect()).collect();
    RingMatrix::from_rows(ring, rows).expect("square")
}

/// `dlog det(1 − tA) = −sum_m Tr(A^m) t^(m−1)` for one matrix.
pub fn newton_holds<R: CoefficientRing>(a: &RingMatrix<R>, order: usize) -> bool
where
    R::Elem: PartialEq,
{
    match (a.det_one_minus_t(), a.newton_trace_series(order)) {
        (Ok(p), traces) => dlog_poly(&p, order).map(|s| s == traces).unwrap_or(false),
        _ => false,
    }
}

/// Newton's identity on `samples` random matrices of size at most 4 over `Z`
/// and over each `GW(F_q)`.
pub fn newton(fields: &[FqTag], samples: usize, order: usize, rng: &mut impl Rng) -> Rows {
    let mut rows = Rows::new();
    let ok = (0..samples).all(|_| {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(IntegerRing, n, || BigInt::from(rng.gen_range(-5..=5)));
        newton_holds(&a, order)
    });
    rows.push((format!("newton: {samples} random matrices over Z"), ok));
    for &f in fields {
        let ok = (0..samples).all(|_| {
            let n = rng.gen_range(1..=4);
            let a = random_matrix(GwFqRing(f), n, || random_gw(f, rng, 5));
            newton_holds(&a, order)
        });
        rows.push((format!("newton: {samples} random matrices over GW({f})"), ok));
    }
    rows
}

/// Six catalog pairs for the multiplicativity law, by catalog index.
fn motivic_pairs(field: FqTag) -> [(usize, usize); 6] {
    if field.odd() {
        [(1, 1), (1, 2), (2, 6), (7, 3), (10, 1), (11, 2)]
    } else {
        [(1, 1), (1, 2), (2, 6), (7, 3), (0, 5), (6, 6)]
    }
}

/// Multiplicativity on six catalog pairs and `P^n = P^(n−1) ⊔ A^n` for `n <= 4`.
pub fn motivic(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        let cat = catalog(f);
        for (i, j) in motivic_pairs(f) {
            let (x, y) = (&cat[i], &cat[j]);
            record(
                &mut rows,
                format!("motivic: N_m({} × {}) = N_m · N_m over {f}", x.label(), y.label()),
                motivic_check(x, y, order),
            );
        }
        for n in 1..=4 {
            let whole = projective_space(f, n);
            let closed = projective_space(f, n - 1);
            let open = affine_space(f, n);
            record(
                &mut rows,
                format!("motivic: N_m(P^{n}) = N_m(P^{}) + N_m(A^{n}) over {f}", n - 1),
                cut_and_paste_check(&whole, &closed, &open, order),
            );
        }
    }
    rows
}

fn constant_series(order: usize, value: i64) -> Series<IntegerRing> {
    Series::from_coeffs(IntegerRing, vec![BigInt::from(value); order])
}

/// The signed sequence of `source`'s lift is `expected` throughout and
/// matches the topological side and the point-count pipeline.
fn sign_rows(rows: &mut Rows, source: &PointCountSource, top: &TopologyData, expected: i64, order: usize) {
    let f = source.field();
    let Some(lift) = integral_lift(source) else {
        rows.push((format!("signs: {} over {f} has an integral lift", source.label()), false));
        return;
    };
    let signed = signed_series(&lift, order);
    rows.push((
        format!("signs: sign series of {} over {f} is identically {expected}", source.label()),
        signed == constant_series(order, expected),
    ));
    record(
        rows,
        format!("signs: {} over {f} matches its real points", source.label()),
        sign_series_from_topology(top, order).map(|s| s == signed),
    );
    record(
        rows,
        format!("signs: lift of {} reduces to the pipeline over {f}", source.label()),
        sign_check_via_reduction(&lift, source, order),
    );
}

/// `P^1 × P^1` against the torus for odd `q`, and `Res P^1` against the
/// sphere when `q ≡ 3 mod 4`.
pub fn signs(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields.iter().filter(|f| f.odd()) {
        let p1 = projective_space(f, 1);
        let p1xp1 = gwzeta::varieties::product(&p1, &p1).expect("same field").with_label("P1xP1");
        sign_rows(&mut rows, &p1xp1, &TopologyData::torus(), 0, order);
        if f.q() % 4 == 3 {
            let res = gwzeta::varieties::weil_restriction_p1(f);
            sign_rows(&mut rows, &res, &TopologyData::sphere(), 2, order);
        }
    }
    rows
}

fn closed_form_of(source: &PointCountSource, order: usize) -> Option<Result<Series<GwFqRing>, ZetaError>> {
    let f = source.field();
    if let Some(cells) = source.cells() {
        return Some(Ok(cellular_closed_form(f, cells, order).1));
    }
    match source.kind() {
        SourceKind::ResP1 if f.odd() => Some(res_p1_closed_form(f, order).map(|(_, s)| s)),
        _ => None,
    }
}

/// The pipeline series equals the closed-form expansion wherever one is known.
pub fn closed_forms(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        for source in catalog(f) {
            if let Some(expected) = closed_form_of(&source, order) {
                let result = expected.and_then(|e| Ok(dlog_zeta(&source, order)?.enriched == e));
                record(&mut rows, format!("closed-forms: {} over {f}", source.label()), result);
            }
        }
    }
    rows
}

/// `rank N_m = |X(F_{q^m})|` over the catalog.
pub fn ranks(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        for source in catalog(f) {
            let result = (|| {
                let counts = source.counts(order)?;
                Ok::<_, ZetaError>(dlog_zeta(&source, order)?.rank_series.coeffs() == counts.as_slice())
            })();
            record(&mut rows, format!("ranks: {} over {f}", source.label()), result);
        }
    }
    rows
}

/// The discriminant read off `N_m` equals the direct count formula, and
/// vanishes for odd `m`.
pub fn discs(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        for source in catalog(f) {
            let result = (|| {
                let report = dlog_zeta(&source, order)?;
                let direct = disc_series_direct(&source, order)?;
                Ok::<_, ZetaError>((
                    report.disc_series == direct,
                    report.disc_series.iter().step_by(2).all(|&d| d == 0),
                ))
            })();
            let (two_path, odd) = match result {
                Ok(pair) => (Ok(pair.0), Ok(pair.1)),
                Err(e) => (Err(e.clone()), Err(e)),
            };
            record(&mut rows, format!("discs: two-path equality for {} over {f}", source.label()), two_path);
            record(&mut rows, format!("discs: odd m trivial for {} over {f}", source.label()), odd);
        }
    }
    rows
}

/// The cellular trace with Frobenius acting by `q_ε^i` equals `N_m`.
pub fn traces(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        for source in catalog(f) {
            let Some(cells) = source.cells() else { continue };
            let matrices = frobenius_cell_matrices(f, cells);
            let result = (1..=order as u64).try_fold(true, |acc, m| {
                Ok::<_, ZetaError>(acc && cellular_trace(f, &matrices, m)? == enriched_trace_nm(&source, m)?)
            });
            record(&mut rows, format!("traces: cellular trace of {} over {f}", source.label()), result);
        }
    }
    rows
}

/// The functional equation for `P^1`, `P^3`, `P^5`, and its failure on a
/// corrupted Euler characteristic.
pub fn functional_equation(fields: &[FqTag]) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        for n in [1u32, 3, 5] {
            let cells = projective_space(f, n).cells().cloned().expect("cellular");
            let (list, _) = cellular_closed_form(f, &cells, 0);
            let chi = euler_characteristic(&cells, f);
            record(&mut rows, format!("fe: P^{n} over {f}"), functional_equation_check(&list, n, f, &chi));
            let corrupted = &chi + &GwFq::one(f);
            record(
                &mut rows,
                format!("fe: P^{n} over {f} rejects a corrupted χ"),
                functional_equation_check(&list, n, f, &corrupted).map(|ok| !ok),
            );
        }
    }
    rows
}

/// Series of a count table that is consistent but has a closed point of
/// degree 5 added to `P^1`, so its poles include fifth roots of unity.
pub fn perturbed_p1_counts(q: u64, order: usize) -> Vec<BigInt> {
    (1..=order as u32).map(|m| BigInt::from(q).pow(m) + 1 + if m % 5 == 0 { 5 } else { 0 }).collect()
}

fn rejected(result: Result<gwzeta::zeta::FactorList<GwFqRing>, ZetaError>) -> Result<bool, ZetaError> {
    match result {
        Ok(_) => Ok(false),
        Err(ZetaError::NotDlogRational(_) | ZetaError::InsufficientOrder { .. }) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Fitting recovers every known closed form from its expansion, and rejects
/// the elliptic curve, a prime-number sequence and a perturbed table.
pub fn fit(fields: &[FqTag], order: usize) -> Rows {
    let mut rows = Rows::new();
    for &f in fields {
        for source in catalog(f) {
            let name = format!("fit: {} over {f}", source.label());
            let known = match (source.cells(), source.kind()) {
                (Some(cells), _) => Some(Ok(cellular_closed_form(f, cells, order).0)),
                (None, SourceKind::ResP1) if f.odd() => Some(res_p1_closed_form(f, order).map(|(l, _)| l)),
                _ => None,
            };
            let result = (|| {
                let series = dlog_zeta(&source, order)?.enriched;
                match known {
                    Some(list) => Ok(fit_dlog_rational(&series, None)?.same_terms(&list?)),
                    None => rejected(fit_dlog_rational(&series, None)),
                }
            })();
            let name = if source.cells().is_none() && !matches!(source.kind(), SourceKind::ResP1) {
                format!("{name} is rejected")
            } else {
                name
            };
            record(&mut rows, name, result);
        }
        let primes: Vec<GwFq> =
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().take(order).map(|&p| GwFq::new(f, p, false)).collect();
        record(
            &mut rows,
            format!("fit: prime sequence over {f} is rejected"),
            rejected(fit_dlog_rational(&Series::from_coeffs(GwFqRing(f), primes), None)),
        );
        let result = (|| {
            let table = from_table(f, perturbed_p1_counts(f.q(), order), true)?;
            rejected(fit_dlog_rational(&dlog_zeta(&table, order)?.enriched, None))
        })();
        record(&mut rows, format!("fit: perturbed P^1 table over {f} is rejected"), result);
    }
    rows
}
