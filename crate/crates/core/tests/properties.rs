use gwzeta::series::{dlog_poly, series_inverse_unit};
use gwzeta::varieties::{elliptic_curve, CellData};
use gwzeta::zeta::{cellular_closed_form, disc_series_direct, dlog_zeta, fit_dlog_rational};
use gwzeta::{CoefficientRing, FqTag, GwFq, GwFqRing, GwInt, IntegerRing, Poly, RingMatrix, Series};
use num_bigint::BigInt;
use proptest::prelude::*;

const FIELDS: [u64; 8] = [2, 3, 4, 5, 7, 9, 25, 27];

fn field() -> impl Strategy<Value = FqTag> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|q| FqTag::new(q).unwrap())
}

fn gw_in(f: FqTag) -> impl Strategy<Value = GwFq> {
    (-50i64..50, any::<bool>()).prop_map(move |(r, d)| GwFq::new(f, r, d))
}

fn gw_triple() -> impl Strategy<Value = (GwFq, GwFq, GwFq)> {
    field().prop_flat_map(|f| (gw_in(f), gw_in(f), gw_in(f)))
}

fn gw_int() -> impl Strategy<Value = GwInt> {
    (-40i64..40, -40i64..40).prop_map(|(a, b)| GwInt::new(a, b))
}

fn unit_poly_over(f: FqTag, max_deg: usize) -> impl Strategy<Value = Poly<GwFqRing>> {
    prop::collection::vec(gw_in(f), 0..=max_deg).prop_map(move |tail| {
        let mut coeffs = vec![GwFq::one(f)];
        coeffs.extend(tail);
        Poly::new(GwFqRing(f), coeffs)
    })
}

fn matrix_over(f: FqTag, n: usize) -> impl Strategy<Value = RingMatrix<GwFqRing>> {
    prop::collection::vec(prop::collection::vec((-6i64..6, any::<bool>()), n), n).prop_map(move |rows| {
        let rows = rows.into_iter().map(|row| row.into_iter().map(|(r, d)| GwFq::new(f, r, d)).collect()).collect();
        RingMatrix::from_rows(GwFqRing(f), rows).unwrap()
    })
}

proptest! {
    #[test]
    fn gw_fq_ring_axioms((a, b, c) in gw_triple()) {
        let f = a.field();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + GwFq::zero(f), a.clone());
        prop_assert_eq!(&a * GwFq::one(f), a.clone());
        prop_assert_eq!(&a - &a, GwFq::zero(f));
    }

    #[test]
    fn gw_int_ring_axioms(a in gw_int(), b in gw_int(), c in gw_int()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * &b).rank(), a.rank() * b.rank());
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn hyperbolic_absorbs_units(f in field(), a in 1i64..200) {
        let h = GwFq::hyperbolic(f);
        if f.k() == 1 && a % f.p() as i64 != 0 {
            prop_assert_eq!(GwFq::gen(f, a).unwrap() * &h, h.clone());
        }
        if f.odd() {
            prop_assert_eq!(GwFq::u_class(f).unwrap() * &h, h);
        }
    }

    #[test]
    fn n_eps_is_multiplicative(f in field(), a in 0u64..60, b in 0u64..60) {
        prop_assert_eq!(GwFq::n_eps(f, a * b), GwFq::n_eps(f, a) * GwFq::n_eps(f, b));
        prop_assert_eq!(GwInt::n_eps(a * b), GwInt::n_eps(a) * GwInt::n_eps(b));
    }

    #[test]
    fn reduction_is_a_ring_map(f in field(), a in gw_int(), b in gw_int()) {
        prop_assert_eq!((&a * &b).reduce_mod_p(f), a.reduce_mod_p(f) * b.reduce_mod_p(f));
        prop_assert_eq!((&a + &b).reduce_mod_p(f), a.reduce_mod_p(f) + b.reduce_mod_p(f));
        prop_assert_eq!(GwInt::n_eps(f.q()).reduce_mod_p(f), GwFq::q_eps(f));
    }

    /// `2x = ⟨1⟩ − ⟨u⟩` has no solution: doubling clears the disc bit.
    #[test]
    fn no_half_of_one_minus_u(q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 25, 27]), r in -10_000i64..10_000) {
        let f = FqTag::new(q).unwrap();
        let target = GwFq::one(f) - GwFq::u_class(f).unwrap();
        for disc in [false, true] {
            let x = GwFq::new(f, r, disc);
            prop_assert_ne!(&x + &x, target.clone());
        }
        prop_assert!(target.halves().is_empty());
    }

    #[test]
    fn inverse_and_dlog_additivity(
        (p, r) in field().prop_flat_map(|f| (unit_poly_over(f, 4), unit_poly_over(f, 4)))
    ) {
        let order = 9;
        let inv = series_inverse_unit(&p, order).unwrap();
        prop_assert_eq!(Series::from_poly(&p, order).mul(&inv).unwrap(), Series::one(p.ring(), order));
        let lhs = dlog_poly(&p.mul(&r), order).unwrap();
        let rhs = dlog_poly(&p, order).unwrap().add(&dlog_poly(&r, order).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn newton_identity_over_gw(
        a in field().prop_flat_map(|f| (1usize..=4).prop_flat_map(move |n| matrix_over(f, n)))
    ) {
        let order = 10;
        let lhs = dlog_poly(&a.det_one_minus_t().unwrap(), order).unwrap();
        prop_assert_eq!(lhs, a.newton_trace_series(order));
    }

    #[test]
    fn block_diagonal_determinants(
        (a, b) in field().prop_flat_map(|f| (matrix_over(f, 2), matrix_over(f, 3)))
    ) {
        let joint = a.direct_sum(&b).det_one_minus_t().unwrap();
        prop_assert_eq!(joint, a.det_one_minus_t().unwrap().mul(&b.det_one_minus_t().unwrap()));
    }

    #[test]
    fn integer_newton_identity(rows in prop::collection::vec(prop::collection::vec(-9i64..9, 3), 3)) {
        let rows = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let a = RingMatrix::from_rows(IntegerRing, rows).unwrap();
        let lhs = dlog_poly(&a.det_one_minus_t().unwrap(), 10).unwrap();
        prop_assert_eq!(lhs, a.newton_trace_series(10));
    }

    #[test]
    fn elliptic_pipeline_invariants(
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17]), a in 0i64..17, b in 0i64..17
    ) {
        let f = FqTag::new(p).unwrap();
        if let Ok(e) = elliptic_curve(f, a, b) {
            let report = dlog_zeta(&e, 10).unwrap();
            prop_assert_eq!(report.rank_series.coeffs().to_vec(), e.counts(10).unwrap());
            for (m, bit) in report.disc_series.iter().enumerate() {
                if m % 2 == 0 {
                    prop_assert_eq!(*bit, 0);
                }
            }
            prop_assert_eq!(disc_series_direct(&e, 10).unwrap(), report.disc_series);
        }
    }

    #[test]
    fn fit_round_trips_cell_structures(f in field(), cells in prop::collection::vec(0u64..4, 1..=5)) {
        let cells = CellData::new(cells);
        let (list, series) = cellular_closed_form(f, &cells, 12);
        let fitted = fit_dlog_rational(&series, None).unwrap();
        prop_assert_eq!(fitted.expand(12), series);
        prop_assert!(fitted.same_terms(&list));
    }
}

#[test]
fn ring_handles_agree_with_operators() {
    let f = FqTag::new(7).unwrap();
    let r = GwFqRing(f);
    let a = GwFq::new(f, 3, true);
    let b = GwFq::new(f, -2, true);
    assert_eq!(r.mul(&a, &b), &a * &b);
    assert_eq!(r.pow(&a, 3), &a * &a * &a);
    assert_eq!(r.scale(&BigInt::from(5), &a), a.scale(&BigInt::from(5)));
}
