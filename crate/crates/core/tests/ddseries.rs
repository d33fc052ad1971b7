use std::f64::consts::PI;

use proptest::prelude::*;
use toroidal_core::arithmetic::{kronecker, squarefree_decompose};
use toroidal_core::ddseries::*;
use toroidal_core::{c64, Complex, Error};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Jacobi symbol by factoring `e` and Euler's criterion at each prime.
fn jacobi_by_euler(a: u64, e: u64) -> i32 {
    let mut m = e;
    let mut out = 1;
    let mut p = 3;
    while m > 1 {
        if p * p > m {
            p = m;
        }
        while m.is_multiple_of(p) {
            m /= p;
            let r = a % p;
            if r == 0 {
                return 0;
            }
            let mut x = 1u64;
            for _ in 0..(p - 1) / 2 {
                x = x * r % p;
            }
            out *= if x == 1 { 1 } else { -1 };
        }
        p += 2;
    }
    out
}

fn mu(n: u64) -> i32 {
    let mut m = n;
    let mut out = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if m > 1 {
        out = -out;
    }
    out
}

fn pow(n: u64, s: Complex) -> Complex {
    (s * (n as f64).ln()).exp()
}

#[test]
fn chi_d_examples() {
    assert_eq!(chi_d(5, 3), -1);
    assert_eq!(chi_d(3, 7) * chi_d(5, 7), chi_d(15, 7));
    for d in [5u64, 13, 17, 21, 29, 33, 37, 41, 57, 65, 85, 105] {
        for e in (1..=49u64).step_by(2) {
            assert_eq!(chi_d(d, e), kronecker(d as i64, e as i64), "d={d} e={e}");
        }
    }
    for d in (1..200u64).step_by(2) {
        for e in (1..60u64).step_by(2) {
            assert_eq!(chi_d(d, e), jacobi_by_euler(d, e), "d={d} e={e}");
        }
    }
}

#[test]
fn chi_d_independent_of_decomposition() {
    // d = a'·3², so (d/e) = (a'/e)(3/e)² = (a'/e) off multiples of 3
    let pairs = [
        (9u64, 5u64), (9, 7), (45, 7), (45, 11), (63, 5), (63, 13), (99, 5), (99, 7), (117, 11), (153, 5),
        (171, 7), (207, 5), (225, 7), (261, 11), (279, 13), (315, 11), (333, 5), (351, 7), (369, 13), (387, 19),
    ];
    for (d, e) in pairs {
        assert_eq!(d % 9, 0);
        let alt = if e % 3 == 0 { 0 } else { jacobi_by_euler(d / 9, e) };
        assert_eq!(chi_d(d, e), alt, "d={d} e={e}");
    }
}

#[test]
fn weight_factor_examples() {
    let s = c64(1.3, 0.7);
    let v = weight_factor(s, 9);
    let expected = c64(1.0, 0.0) + pow(3, c64(1.0, 0.0) - s * 2.0);
    assert!((v - expected).norm() < 1e-14);

    // d = 225 = 1·15²: all pairs (e1, e2) with e1 e2 | 15
    let s = c64(1.2, -2.0);
    let mut brute = c64(0.0, 0.0);
    for e1 in 1..=15u64 {
        for e2 in 1..=15u64 {
            if 15 % (e1 * e2) != 0 {
                continue;
            }
            let c = mu(e1) * jacobi_by_euler(225, e1);
            brute += pow(e1, -s) * pow(e2, c64(1.0, 0.0) - s * 2.0) * c as f64;
        }
    }
    assert!((weight_factor(s, 225) - brute).norm() < 1e-13);
}

#[test]
fn weight_factor_trivial_on_squarefree() {
    let s = c64(1.5, 3.0);
    for d in (1..=1000u64).step_by(2) {
        if squarefree_decompose(d).1 == 1 {
            assert_eq!(weight_factor(s, d), c64(1.0, 0.0), "d={d}");
        }
    }
}

/// `Σ_{n odd, (n,d)=1} (d/n) n^{−s}`, with `(d/n)` read from a table of `n mod d`
/// (valid for `d ≡ 1 mod 4`, by reciprocity).
fn direct_l(d: u64, s: f64, terms: u64) -> f64 {
    let table: Vec<i32> = (0..d).map(|r| jacobi_by_euler(r, d)).collect();
    (1..=terms)
        .step_by(2)
        .filter(|&n| gcd(n, d) == 1)
        .map(|n| table[(n % d) as usize] as f64 * (n as f64).powf(-s))
        .sum()
}

#[test]
fn l_truncated_examples() {
    let s = c64(2.0, 0.0);
    assert!((l_truncated(1, s).unwrap().re - PI * PI / 8.0).abs() < 1e-12);
    let v = l_truncated(5, s).unwrap();
    assert!((v.re - direct_l(5, 2.0, 1_000_000)).abs() < 1e-6 && v.im.abs() < 1e-14);
    // χ_9 is principal mod 3
    let v = l_truncated(9, s).unwrap();
    assert!((v.re - (1.0 - 0.25) * (1.0 - 1.0 / 9.0) * PI * PI / 6.0).abs() < 1e-12);
    assert!((v.re - direct_l(9, 2.0, 1_000_000)).abs() < 1e-6);
    assert!(l_truncated(4, s).is_err());
}

#[test]
fn principal_first_term() {
    let s = c64(2.0, 0.0);
    let t = DDTable::new(s, 1000).unwrap();
    let c1 = t.coefficient(1).unwrap();
    assert!((c1.re - (1.0 - 0.25) * PI * PI / 6.0).abs() < 1e-12);
}

#[test]
fn orthogonality_at_every_truncation() {
    for (s, w, n) in [
        (c64(2.0, 0.0), c64(2.0, 0.0), 1000u64),
        (c64(1.1, 3.0), c64(1.4, -2.0), 1001),
        (c64(1.5, -7.0), c64(1.1, 0.0), 4999),
        (c64(3.0, 1.0), c64(2.5, 10.0), 20_000),
    ] {
        let t = DDTable::new(s, n).unwrap();
        let z0 = t.z_principal(w).unwrap().value;
        let sum: Complex = (0..4).map(|k| t.z_rho(w, k).unwrap().value).sum();
        let scale: f64 = (0..4).map(|k| t.z_rho(w, k).unwrap().value.norm()).sum::<f64>().max(z0.norm());
        assert!((z0 - sum / 4.0).norm() <= 16.0 * f64::EPSILON * scale, "N={n}: {z0} vs {}", sum / 4.0);
    }
}

#[test]
fn free_functions_match_table() {
    let (s, w) = (c64(2.0, 0.0), c64(2.0, 0.0));
    let p = DDPoint { s, w, n: 1000, rho: 2 };
    let t = DDTable::new(s, 1000).unwrap();
    assert_eq!(z_rho(&p).unwrap(), t.z_rho(w, 2).unwrap());
    assert_eq!(z_principal(s, w, 1000).unwrap(), t.z_principal(w).unwrap());
}

#[test]
fn truncation_rate_at_s2_w3() {
    let a = z_principal(c64(2.0, 0.0), c64(3.0, 0.0), 10_000).unwrap();
    let b = z_principal(c64(2.0, 0.0), c64(3.0, 0.0), 100_000).unwrap();
    assert!((a.value - b.value).norm() <= 1e-4);
    assert!((a.value - b.value).norm() <= a.tail);
}

#[test]
fn region_errors() {
    let outside = |r| matches!(r, Err(Error::NotInConvergenceRegion(_)));
    assert!(outside(z_principal(c64(0.5, 0.0), c64(1.0, 0.0), 10)));
    assert!(outside(z_rho(&DDPoint { s: c64(2.0, 0.0), w: c64(1.05, 0.0), n: 5000, rho: 1 })));
    assert!(matches!(DDTable::new(c64(1.0, 0.0), 5000), Err(Error::NotInConvergenceRegion(_))));
}

/// `(1/8) Π_{p odd} [(1 − 1/p)/(1 − p^{−2s}) + 1/p + y/(1 − y)]`, `y = p^{−1−2s}`:
/// the mean of `c_d` per integer over `d ≡ 1 mod 8`, computed prime by prime
/// from the local densities of `d`.
fn residue_density(s: f64) -> f64 {
    let bound = 2_000_000usize;
    let mut sieve = vec![true; bound + 1];
    let mut prod = 1.0 / 8.0;
    for p in 2..=bound {
        if !sieve[p] {
            continue;
        }
        let mut j = p * p;
        while j <= bound {
            sieve[j] = false;
            j += p;
        }
        if p == 2 {
            continue;
        }
        let pf = p as f64;
        let y = pf.powf(-1.0 - 2.0 * s);
        prod *= (1.0 - 1.0 / pf) / (1.0 - pf.powf(-2.0 * s)) + 1.0 / pf + y / (1.0 - y);
    }
    prod
}

#[test]
fn residue_density_oracle_is_proportional_to_shape() {
    // The oracle alone already obeys the law; frozen values guard it.
    let frozen = [(1.1, 0.145479), (1.2, 0.139981), (1.3, 0.136161)];
    for (s, r) in frozen {
        let v = residue_density(s);
        assert!((v - r).abs() < 2e-6, "s={s}: {v}");
        let ratio = v / residue_shape(c64(s, 0.0)).unwrap().re;
        assert!((ratio - 0.1248).abs() < 2e-4, "s={s}: {ratio}");
    }
}

#[test]
fn residue_close_to_density() {
    for s in [1.1, 1.3] {
        let r = residue_at_w1(c64(s, 0.0), &DEFAULT_DELTAS, 100_000).unwrap();
        let oracle = residue_density(s);
        assert!(r.im.abs() < 1e-12);
        assert!((r.re - oracle).abs() <= 0.08 * oracle, "s={s}: {} vs {oracle}", r.re);
    }
}

#[test]
fn residue_nonzero_and_guards() {
    let r = residue_at_w1(c64(1.2, 0.0), &DEFAULT_DELTAS, 20_000).unwrap();
    assert!(r.norm() >= 1e-4);
    let t = DDTable::new(c64(1.5, 0.0), 20_000).unwrap();
    assert!(t.residue(&DEFAULT_DELTAS, None).unwrap().re.is_finite());
    assert!(matches!(residue_at_w1(c64(1.2, 0.0), &[0.4, 0.05], 20_000), Err(Error::InvalidArgument(_))));
    assert!(matches!(residue_at_w1(c64(1.0, 0.0), &DEFAULT_DELTAS, 20_000), Err(Error::NotInConvergenceRegion(_))));
}

#[test]
fn nonvanishing_twists() {
    let (d, v) = find_nonvanishing_twist(c64(0.5, 0.0), 100).unwrap();
    assert!(d.abs() <= 5 && v.norm() > 0.0);
    let (d, _) = find_nonvanishing_twist(c64(0.5, 14.134725141734693), 100).unwrap();
    assert!(d.abs() <= 24);
    let (d, v) = find_nonvanishing_twist(c64(0.75, 0.0), 100).unwrap();
    assert!(d.abs() <= 5 && v.norm() > 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn truncation_within_tail(
        sr in 1.1f64..3.0, si in -10.0f64..10.0,
        wr in 1.1f64..3.0, wi in -10.0f64..10.0,
        n in 1000u64..4000, k in 0usize..4,
    ) {
        let (s, w) = (c64(sr, si), c64(wr, wi));
        let a = z_rho(&DDPoint { s, w, n, rho: k }).unwrap();
        let b = z_rho(&DDPoint { s, w, n: 2 * n, rho: k }).unwrap();
        prop_assert!((a.value - b.value).norm() <= a.tail, "{} vs {}", (a.value - b.value).norm(), a.tail);
    }
}
