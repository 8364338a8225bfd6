use gwzeta::varieties::{affine_space, catalog, projective_space, SourceKind};
use gwzeta::zeta::{
    cellular_closed_form, cellular_trace, cut_and_paste_check, disc_series_direct, dlog_zeta, enriched_trace_nm,
    fit_dlog_rational, frobenius_cell_matrices, integral_lift, motivic_check, res_p1_closed_form,
    sign_check_via_reduction,
};
use gwzeta::FqTag;

const ORDER: usize = 12;

fn fields() -> Vec<FqTag> {
    [3u64, 5, 7, 9].iter().map(|&q| FqTag::new(q).unwrap()).collect()
}

#[test]
fn ranks_are_point_counts_and_discriminants_agree() {
    for f in fields() {
        for src in catalog(f) {
            let report = dlog_zeta(&src, ORDER).unwrap();
            assert_eq!(report.rank_series.coeffs().to_vec(), src.counts(ORDER).unwrap(), "{src}");
            assert_eq!(disc_series_direct(&src, ORDER).unwrap(), report.disc_series, "{src}");
            for m in (1..=ORDER).step_by(2) {
                assert_eq!(report.disc_series[m - 1], 0, "{src} m={m}");
            }
        }
    }
}

#[test]
fn pipeline_matches_closed_forms() {
    for f in fields() {
        for src in catalog(f) {
            let report = dlog_zeta(&src, ORDER).unwrap();
            let expected = match (src.cells(), src.kind()) {
                (Some(cells), _) => cellular_closed_form(f, cells, ORDER).1,
                (None, SourceKind::ResP1) => res_p1_closed_form(f, ORDER).unwrap().1,
                _ => continue,
            };
            assert_eq!(report.enriched, expected, "{src}");
            assert_eq!(report.closed_form.unwrap().expand(ORDER), expected);
        }
    }
}

#[test]
fn cellular_traces_match_enriched_traces() {
    for f in fields() {
        for src in catalog(f).into_iter().filter(|s| s.cells().is_some()) {
            let mats = frobenius_cell_matrices(f, src.cells().unwrap());
            for m in 1..=8 {
                assert_eq!(cellular_trace(f, &mats, m).unwrap(), enriched_trace_nm(&src, m).unwrap(), "{src}");
            }
        }
    }
}

#[test]
fn lifts_reduce_to_the_pipeline() {
    for f in fields() {
        for src in catalog(f) {
            if let Some(lift) = integral_lift(&src) {
                assert!(sign_check_via_reduction(&lift, &src, ORDER).unwrap(), "{src}");
            }
        }
    }
}

#[test]
fn fits_recover_closed_forms() {
    for f in fields() {
        for src in catalog(f) {
            let report = dlog_zeta(&src, ORDER).unwrap();
            match report.closed_form {
                Some(expected) => {
                    let fitted = fit_dlog_rational(&report.enriched, None).unwrap();
                    assert!(fitted.same_terms(&expected), "{src}: {fitted}");
                }
                None => assert!(fit_dlog_rational(&report.enriched, None).is_err(), "{src}"),
            }
        }
    }
}

#[test]
fn motivic_measure() {
    for f in fields() {
        let list = catalog(f);
        for x in list.iter().take(4) {
            for y in list.iter().rev().take(3) {
                assert!(motivic_check(x, y, 8).unwrap(), "{x} × {y}");
            }
        }
        for n in 1..=4 {
            let ok = cut_and_paste_check(&projective_space(f, n), &projective_space(f, n - 1), &affine_space(f, n), 8);
            assert!(ok.unwrap(), "P^{n} over {f}");
        }
    }
}
