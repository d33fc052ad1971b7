mod common;

use std::sync::Arc;

use common::curves::{self, CURVE_11A, CURVE_37A};
use toroidal_core::lfun::{find_zeros, parse_lfunction, CompletedL, GenericL};
use toroidal_core::periods::{period_control_scale, toroidal_period};
use toroidal_core::toroidal::*;
use toroidal_core::{c64, Error};

const FIRST_ZETA_ZERO: f64 = 14.134725141734693;

fn cusp(text: &str) -> CompletedL {
    CompletedL::generic(Arc::new(GenericL::from_data(&parse_lfunction(text).unwrap()).unwrap()))
}

#[test]
fn simple_zero_toroidal_only_at_order_zero() {
    let s0 = c64(0.5, FIRST_ZETA_ZERO);
    let v0 = classify_eisenstein(s0, 0).unwrap();
    assert_eq!(v0.verdict, Verdict::Toroidal);
    assert_eq!(v0.order_bound, Some(1));
    assert!(v0.certificate.iter().all(|r| r.vanishes));
    let v1 = classify_eisenstein(s0, 1).unwrap();
    assert_eq!(v1.verdict, Verdict::NotToroidal);
    assert!(v1.certificate.iter().all(|r| !r.vanishes));
    assert_eq!(v1.subject, Subject::Eisenstein { s0, n: 1 });
}

#[test]
fn zero_of_chi_minus_four_is_toroidal_on_its_torus_only() {
    let zeros = find_zeros(&CompletedL::dirichlet(-4).unwrap(), 1.0, 10.0).unwrap();
    let t = zeros[0].t;
    assert!((t - 6.0209).abs() < 1e-3, "{t}");
    let v = classify_eisenstein(c64(0.5, t), 0).unwrap();
    assert_eq!(v.verdict, Verdict::NotToroidal);
    let row = |d: i64| v.certificate.iter().find(|r| r.d == d).unwrap();
    assert!(row(-4).vanishes);
    assert!(!row(5).vanishes);
}

#[test]
fn period_route_agrees_with_l_route() {
    for (t, expect) in [(FIRST_ZETA_ZERO, Verdict::Toroidal), (10.0, Verdict::NotToroidal)] {
        let s0 = c64(0.5, t);
        let verdict = classify_eisenstein(s0, 0).unwrap().verdict;
        assert_eq!(verdict, expect);
        let period = toroidal_period(-4, s0).unwrap().value.norm();
        let threshold = 1e-4 * period_control_scale(-4, s0).unwrap();
        assert_eq!(period <= threshold, verdict == Verdict::Toroidal, "t={t}: {period} vs {threshold}");
    }
}

#[test]
fn pole_is_rejected() {
    assert!(matches!(classify_eisenstein(c64(1.0, 0.0), 0), Err(Error::PoleAtSpecialPoint { .. })));
}

#[test]
fn residue_never_toroidal() {
    let v = classify_residue().unwrap();
    assert_eq!(v.verdict, Verdict::NotToroidal);
    assert_eq!(v.subject, Subject::Residue);
    assert_eq!(v.certificate.iter().map(|r| r.d).collect::<Vec<_>>(), vec![5, -4, -23, 13]);
    let row = v.certificate.iter().find(|r| r.d == -4).unwrap();
    assert!(row.value >= 1e-6 && !row.vanishes);
}

#[test]
fn eleven_a_is_not_toroidal() {
    let l = cusp(&curves::lfun_file(&CURVE_11A, 6000));
    let v = classify_cusp(&l, 30).unwrap();
    assert_eq!(v.verdict, Verdict::NotToroidal);
    assert!(v.certificate[0].d == 1 && v.certificate[0].value > 1e-3);
    assert!(v.certificate.iter().skip(1).all(|r| r.d.abs() <= 30 && r.d % 11 != 0));
    assert!(v.certificate.iter().any(|r| r.d != 1 && !r.vanishes));
}

#[test]
fn thirty_seven_a_is_toroidal() {
    let l = cusp(&curves::lfun_file(&CURVE_37A, 6000));
    let v = classify_cusp(&l, 40).unwrap();
    assert_eq!(v.verdict, Verdict::Toroidal);
    assert!(v.certificate[0].value <= 1e-6);
    assert!(v.certificate.iter().all(|r| r.vanishes));
    assert!(v.certificate.iter().any(|r| r.twist_factor.is_some_and(|(tv, tt)| tv > tt)));
}

#[test]
fn zero_twist_bound_gives_central_row_only() {
    let l = cusp(&curves::lfun_file(&CURVE_11A, 3000));
    let v = classify_cusp(&l, 0).unwrap();
    assert_eq!(v.certificate.len(), 1);
    assert_eq!(v.verdict, Verdict::NotToroidal);
}

#[test]
fn verdict_independent_of_normalization() {
    for c in [CURVE_11A, CURVE_37A] {
        let motivic = curves::lfun_file(&c, 3000);
        let a = classify_cusp(&cusp(&motivic), 12).unwrap();
        let b = classify_cusp(&cusp(&curves::to_unitary(&motivic)), 12).unwrap();
        assert_eq!(a.verdict, b.verdict, "{}", c.label);
        let flags = |v: &ToroidalVerdict| v.certificate.iter().map(|r| (r.d, r.vanishes)).collect::<Vec<_>>();
        assert_eq!(flags(&a), flags(&b));
    }
}

#[test]
fn odd_sign_survives_coefficient_noise() {
    let mut data = parse_lfunction(&curves::lfun_file(&CURVE_37A, 3000)).unwrap();
    for (k, e) in data.primes.iter_mut().enumerate() {
        e.a_p += if k % 3 == 0 { 1e-8 } else { -7e-9 };
    }
    let l = CompletedL::generic(Arc::new(GenericL::from_data(&data).unwrap()));
    assert_eq!(classify_cusp(&l, 0).unwrap().verdict, Verdict::Toroidal);
}
