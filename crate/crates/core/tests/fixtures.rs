//! End-to-end runs over the four golden arrangements: combinatorics,
//! conic traces, deletions, and the full syzygy analysis.

mod common;

use common::{cl1, cl2, cl3, line, st};
use mcurves::arrangement::{Arrangement, ComponentId};
use mcurves::mtheory;
use mcurves::syzygy::{self, RankEngine, RankMode};

fn engine() -> RankEngine {
    RankEngine::new(RankMode::ModularCertified, 0)
}

#[test]
fn cl1_combinatorics_and_trace() {
    let arr = cl1();
    let wc = arr.weak_combinatorics(0).unwrap();
    assert_eq!((wc.d, wc.k), (6, 1));
    assert_eq!((wc.count(2), wc.count(3), wc.count(4)), (3, 0, 4));
    assert_eq!(arr.conic_trace(0, 0).unwrap(), 4);
    // 7 point records in total for CL1 (all rational)
    let pts = arr.singular_points(0).unwrap();
    assert_eq!(pts.iter().map(|p| p.local_count).sum::<usize>(), 7);
}

#[test]
fn cl2_combinatorics_and_trace() {
    let arr = cl2();
    let wc = arr.weak_combinatorics(0).unwrap();
    assert_eq!((wc.count(2), wc.count(3), wc.count(4)), (5, 2, 4));
    assert_eq!(arr.conic_trace(0, 0).unwrap(), 6);
    // the conjugate pair on x = 0 accounts for two of the doubles
    let pts = arr.singular_points(0).unwrap();
    let conj: usize = pts.iter().filter(|p| p.field_degree == 2).count();
    assert_eq!(conj, 1);
}

#[test]
fn cl3_combinatorics_and_deletion_counts() {
    let arr = cl3();
    let wc = arr.weak_combinatorics(0).unwrap();
    assert_eq!((wc.count(2), wc.count(3), wc.count(4)), (6, 4, 6));
    assert_eq!(arr.conic_trace(0, 0).unwrap(), 6);
    let del = arr.delete_component(ComponentId::Conic(0)).unwrap();
    let dwc = del.weak_combinatorics(0).unwrap();
    assert_eq!((dwc.d, dwc.k), (9, 0));
    assert_eq!((dwc.count(2), dwc.count(3)), (6, 10));
}

#[test]
fn st_combinatorics() {
    let arr = st();
    let wc = arr.weak_combinatorics(0).unwrap();
    assert_eq!((wc.d, wc.k), (3, 2));
    assert_eq!((wc.count(2), wc.count(3), wc.count(4)), (1, 0, 3));
}

#[test]
fn triangle_combinatorics() {
    let arr = Arrangement::new(
        vec![line(1, 0, 0), line(0, 1, 0), line(0, 0, 1)],
        vec![],
    )
    .unwrap();
    let wc = arr.weak_combinatorics(0).unwrap();
    assert_eq!((wc.d, wc.k), (3, 0));
    assert_eq!(wc.count(2), 3);
}

#[test]
fn st_syzygy_analysis() {
    let e = engine();
    let report = syzygy::analyze(&st().defining_form(), &e).unwrap();
    assert_eq!(report.degree, 7);
    assert_eq!(report.tau, 28);
    assert_eq!(report.mdr, 2);
    assert!(report.is_free);
    assert_eq!(report.exponents, Some((2, 4)));
    assert_eq!(report.ct, Some(7));
    assert_eq!(report.st, 8);
}

#[test]
fn cl1_syzygy_analysis() {
    let e = engine();
    let arr = cl1();
    let report = syzygy::analyze(&arr.defining_form(), &e).unwrap();
    assert_eq!(report.tau, 39);
    assert_eq!(report.mdr, 2);
    assert!(report.is_free);
    assert_eq!(report.exponents, Some((2, 5)));
    assert_eq!(report.ct, Some(8));
    assert_eq!(report.st, 10);
    assert_eq!(report.reg_m, Some(10));
    assert_eq!(report.reg_ar, Some(5));
    // ar dimensions at the boundary
    assert_eq!(syzygy::ar_dimension(&arr.defining_form(), 1, &e), 0);
    assert_eq!(syzygy::ar_dimension(&arr.defining_form(), 2, &e), 1);
    // certification record
    let wc = arr.weak_combinatorics(0).unwrap();
    let verdict = syzygy::m_curve_certify(&arr, &wc, &report).unwrap();
    assert!(verdict.is_m_arrangement);
    assert_eq!(verdict.target_tau, 39);
}

#[test]
fn cl1_deletion_is_free_with_exponents_two_three() {
    let e = engine();
    let del = cl1().delete_component(ComponentId::Conic(0)).unwrap();
    let report = syzygy::analyze(&del.defining_form(), &e).unwrap();
    assert_eq!(report.tau, 19);
    assert!(report.is_free);
    assert_eq!(report.exponents, Some((2, 3)));
    let gens = syzygy::generator_degrees(&del.defining_form(), 5);
    assert_eq!(gens, vec![(2, 1), (3, 1)]);
}

#[test]
fn cl2_syzygy_analysis() {
    let e = engine();
    let arr = cl2();
    let report = syzygy::analyze(&arr.defining_form(), &e).unwrap();
    assert_eq!(report.tau, 49);
    assert_eq!(report.mdr, 3);
    assert!(report.is_free);
    assert_eq!(report.exponents, Some((3, 5)));
    assert_eq!(report.st, 11);
    assert_eq!(report.reg_m, Some(11));
    assert_eq!(report.reg_ar, Some(5));
    let wc = arr.weak_combinatorics(0).unwrap();
    let verdict = syzygy::m_curve_certify(&arr, &wc, &report).unwrap();
    assert!(verdict.is_m_arrangement);
}

#[test]
fn cl3_syzygy_analysis_and_deletion() {
    let e = engine();
    let arr = cl3();
    let f = arr.defining_form();
    assert_eq!(f.degree(), 11);
    let report = syzygy::analyze(&f, &e).unwrap();
    assert_eq!(report.tau, 76);
    assert_eq!(report.mdr, 4);
    assert!(report.is_free);
    assert_eq!(report.exponents, Some((4, 6)));
    assert_eq!(report.st, 14);
    assert_eq!(report.reg_m, Some(14));
    assert_eq!(report.reg_ar, Some(6));
    let wc = arr.weak_combinatorics(0).unwrap();
    let verdict = syzygy::m_curve_certify(&arr, &wc, &report).unwrap();
    assert!(verdict.is_m_arrangement);
    assert_eq!(verdict.target_tau, 76);

    // deletion: 9 lines, plus-one generated with degrees {4, 5, 6}
    let del = arr.delete_component(ComponentId::Conic(0)).unwrap();
    let dform = del.defining_form();
    let dreport = syzygy::analyze(&dform, &e).unwrap();
    assert_eq!(dreport.tau, 46);
    assert_eq!(dreport.mdr, 4);
    assert!(!dreport.is_free);
    let gens = syzygy::generator_degrees(&dform, 8);
    assert_eq!(gens, vec![(4, 1), (5, 1), (6, 1)]);
}

#[test]
fn tau_matches_combinatorial_count_on_all_fixtures() {
    let e = engine();
    for arr in [cl1(), cl2(), cl3(), st()] {
        let wc = arr.weak_combinatorics(0).unwrap();
        let t = syzygy::tau(&arr.defining_form(), &e).unwrap();
        assert_eq!(t, mtheory::tau_of(&wc));
    }
}
