//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.
//!
//! Runs without the libtest harness so the report is always printed:
//! `cargo test -p toroidal-core --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::curves::{self, CURVE_11A, CURVE_37A};
use toroidal_core::arithmetic::{class_data, fundamental_discriminants, is_fundamental};
use toroidal_core::ddseries::{find_nonvanishing_twist, residue_shape, DDTable, DEFAULT_DELTAS};
use toroidal_core::eisenstein::eisenstein_completed;
use toroidal_core::lfun::{
    completed, control_scale, dirichlet_l, find_zeros, functional_equation_check, parse_lfunction,
    stable_derivative, CompletedL, GenericL, CAUCHY_RADIUS, CONTROL_RADIUS,
};
use toroidal_core::periods::{
    calibrate, l_product, period_control_scale, period_derivative, residue_period, toroidal_period,
};
use toroidal_core::special::{bessel_k, bessel_k_trapezoid, gamma};
use toroidal_core::toroidal::{classify_cusp, Verdict};
use toroidal_core::{c64, Complex};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn one() -> Complex {
    c64(1.0, 0.0)
}

const FIRST_ZETA_ZEROS: [f64; 3] = [14.134725, 21.022040, 25.010858];

/// Zeta zeros in `[10, 26]` by sign changes and bisection.
fn zeta_zeros() -> Result<Vec<f64>, String> {
    let zeros = find_zeros(&CompletedL::zeta(), 10.0, 26.0).map_err(err)?;
    let ts: Vec<f64> = zeros.iter().map(|z| z.t).collect();
    ensure(ts.len() == 3, || format!("expected 3 zeros in [10, 26], found {ts:?}"))?;
    for (t, want) in ts.iter().zip(FIRST_ZETA_ZEROS) {
        ensure((t - want).abs() <= 1e-5, || format!("zero {t} differs from {want}"))?;
    }
    Ok(ts)
}

fn hecke_constancy() -> Outcome {
    let grid = [c64(2.0, 0.0), c64(3.0, 0.0), c64(4.0, 0.0), c64(0.75, 5.0), c64(0.25, -5.0)];
    let mut worst: f64 = 0.0;
    let mut worst_real: f64 = 0.0;
    for d in [5, 13, -4, -23] {
        let start = Instant::now();
        let cal = calibrate(d, &grid).map_err(err)?;
        let c = cal.constant_fit;
        ensure(c.norm() >= 1e-8, || format!("D = {d}: constant {c} too small"))?;
        ensure(cal.max_deviation <= 1e-3, || format!("D = {d}: deviation {:.3e}", cal.max_deviation))?;
        let real: Vec<Complex> = cal.samples.iter().filter(|(s, _)| s.im == 0.0).map(|p| p.1).collect();
        let mean = real.iter().sum::<Complex>() / real.len() as f64;
        let dev = real.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm();
        ensure(dev <= 1e-4, || format!("D = {d}: real-grid deviation {dev:.3e}"))?;
        ensure(start.elapsed() <= Duration::from_secs(120), || format!("D = {d} took {:?}", start.elapsed()))?;
        worst = worst.max(cal.max_deviation);
        worst_real = worst_real.max(dev);
    }
    Ok(format!("max deviation {worst:.2e}, real grid {worst_real:.2e}"))
}

fn zeros_are_toroidal() -> Outcome {
    let zeros = zeta_zeros()?;
    let controls = [10.0, 12.0, 17.5, 23.0, 27.5];
    let mut worst_zero: f64 = 0.0;
    let mut weakest_control = f64::INFINITY;
    for d in [5, -4] {
        for &t in &zeros {
            let s = c64(0.5, t);
            let value = toroidal_period(d, s).map_err(err)?.value.norm();
            let threshold = 1e-4 * period_control_scale(d, s).map_err(err)?;
            ensure(value <= threshold, || format!("D = {d}, t = {t}: |period| {value:.3e} > {threshold:.3e}"))?;
            worst_zero = worst_zero.max(value / threshold);
        }
        for t in controls {
            let s = c64(0.5, t);
            let value = toroidal_period(d, s).map_err(err)?.value.norm();
            let threshold = 1e-4 * period_control_scale(d, s).map_err(err)?;
            ensure(value > 10.0 * threshold, || format!("D = {d}, control t = {t}: |period| {value:.3e}"))?;
            weakest_control = weakest_control.min(value / threshold);
        }
    }
    Ok(format!("zeros at ≤ {worst_zero:.2e} × threshold, controls at ≥ {weakest_control:.2e} × threshold"))
}

fn leibniz_law() -> Outcome {
    let d = 5;
    let two = c64(2.0, 0.0);
    let r = toroidal_period(d, two).map_err(err)?.value / l_product(d, two).map_err(err)?;
    let lhs = period_derivative(d, two, 1).map_err(err)?;
    let rhs = r * stable_derivative(&|s| l_product(d, s), two, 1, CAUCHY_RADIUS).map_err(err)?;
    let dev = rel(lhs, rhs);
    ensure(dev <= 1e-3, || format!("period' {lhs} vs r·(ΛΛ)' {rhs}, rel {dev:.3e}"))?;
    let t = zeta_zeros()?[0];
    let s0 = c64(0.5, t);
    let threshold = 1e-4 * period_control_scale(d, s0).map_err(err)?;
    let value = toroidal_period(d, s0).map_err(err)?.value.norm();
    ensure(value <= threshold, || format!("|period| {value:.3e} at the first zero exceeds {threshold:.3e}"))?;
    let slope = period_derivative(d, s0, 1).map_err(err)?.norm();
    ensure(slope > 10.0 * threshold, || format!("|period'| {slope:.3e} not above 10 × {threshold:.3e}"))?;
    Ok(format!("rel dev at s = 2 {dev:.2e}; at the first zero |period'| = {:.2e} × threshold", slope / threshold))
}

fn residues_not_toroidal() -> Outcome {
    let mut smallest = f64::INFINITY;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for d in fundamental_discriminants(50) {
        let p = residue_period(d).map_err(err)?;
        let value = p.direct.norm();
        ensure(value >= 1e-6, || format!("D = {d}: residue period {value:.3e}"))?;
        ensure(p.discrepancy() <= 1e-4, || format!("D = {d}: limit vs direct {:.3e}", p.discrepancy()))?;
        smallest = smallest.min(value);
        worst = worst.max(p.discrepancy());
        count += 1;
    }
    Ok(format!("{count} discriminants, min |period| {smallest:.3e}, max discrepancy {worst:.2e}"))
}

fn residue_law() -> Outcome {
    let mut ratios = Vec::new();
    let mut worst_rho: f64 = 0.0;
    for s in [1.1, 1.2, 1.3] {
        let s = c64(s, 0.0);
        let table = DDTable::new(s, 100_000).map_err(err)?;
        let principal = table.residue(&DEFAULT_DELTAS, None).map_err(err)?;
        ratios.push(principal / residue_shape(s).map_err(err)?);
        let trivial = table.residue(&DEFAULT_DELTAS, Some(0)).map_err(err)?;
        for k in 1..4 {
            let r = table.residue(&DEFAULT_DELTAS, Some(k)).map_err(err)?.norm() / trivial.norm();
            ensure(r <= 0.1, || format!("s = {s}, rho {k}: {r:.3} of the trivial residue"))?;
            worst_rho = worst_rho.max(r);
        }
    }
    let mean = ratios.iter().sum::<Complex>() / 3.0;
    let spread = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm();
    ensure(spread <= 0.1, || format!("ratios {ratios:?} spread {spread:.3}"))?;
    Ok(format!("ratio {:.5} ± {:.1}%, nontrivial rho ≤ {:.1}%", mean.re, 100.0 * spread, 100.0 * worst_rho))
}

fn orthogonality() -> Outcome {
    let points = [(c64(1.5, 0.0), c64(2.0, 0.0)), (c64(1.2, 7.0), c64(1.4, -3.0)), (c64(2.5, -15.0), c64(1.1, 0.5))];
    let mut worst: f64 = 0.0;
    for n in [1000, 1001, 4099, 10_000, 100_000] {
        for (s, w) in points {
            let table = DDTable::new(s, n).map_err(err)?;
            let z0 = table.z_principal(w).map_err(err)?.value;
            let parts: Vec<Complex> =
                (0..4).map(|k| table.z_rho(w, k).map(|v| v.value)).collect::<Result<_, _>>().map_err(err)?;
            let scale = parts.iter().map(|p| p.norm()).sum::<f64>().max(z0.norm());
            let gap = (z0 - parts.iter().sum::<Complex>() / 4.0).norm() / (f64::EPSILON * scale);
            ensure(gap <= 16.0, || format!("N = {n}, s = {s}, w = {w}: {gap:.1} ulp"))?;
            worst = worst.max(gap);
        }
    }
    Ok(format!("max gap {worst:.1} × machine epsilon × scale"))
}

fn nonvanishing_twist() -> Outcome {
    let mut found = Vec::new();
    for s0 in [c64(0.5, 0.0), c64(0.75, 0.0), c64(0.5, 14.134725)] {
        let (d, value) = find_nonvanishing_twist(s0, 100).map_err(err)?;
        ensure(is_fundamental(d) && d.abs() <= 100, || format!("s0 = {s0}: D = {d}"))?;
        let l = CompletedL::dirichlet(d).map_err(err)?;
        let again = completed(&l, s0).map_err(err)?;
        let scale = control_scale(&|s| completed(&l, s), s0, CONTROL_RADIUS).map_err(err)?;
        ensure(again == value && again.norm() > 1e-6 * scale, || format!("s0 = {s0}: |Λ| {:.3e}", again.norm()))?;
        found.push(format!("{s0} -> {d}"));
    }
    Ok(found.join(", "))
}

fn oracle_curve(c: &curves::Curve) -> Result<CompletedL, String> {
    let text = curves::lfun_file(c, curves::DATA_PRIME_BOUND);
    let l = CompletedL::generic(Arc::new(GenericL::from_data(&parse_lfunction(&text).map_err(err)?).map_err(err)?));
    functional_equation_check(&l).map_err(err)?;
    Ok(l)
}

fn waldspurger() -> Outcome {
    let v = classify_cusp(&oracle_curve(&CURVE_11A)?, 40).map_err(err)?;
    let central = v.certificate[0].value;
    ensure(v.verdict == Verdict::NotToroidal, || "11a classified toroidal".into())?;
    ensure(central > 1e-3, || format!("11a: |Λ(1/2)| = {central:.3e}"))?;
    let witness = v
        .certificate
        .iter()
        .find(|r| matches!(r.twist_factor, Some((tv, tt)) if tv > tt) && central > v.certificate[0].threshold)
        .ok_or("11a: no torus with both factors nonzero")?;
    let w = classify_cusp(&oracle_curve(&CURVE_37A)?, 40).map_err(err)?;
    let central37 = w.certificate[0].value;
    ensure(w.verdict == Verdict::Toroidal, || "37a classified not toroidal".into())?;
    ensure(central37 <= 1e-6, || format!("37a: |Λ(1/2)| = {central37:.3e}"))?;
    let twist = w
        .certificate
        .iter()
        .find(|r| r.d.abs() <= 40 && matches!(r.twist_factor, Some((tv, tt)) if tv > tt))
        .ok_or("37a: every twist with |D| <= 40 vanishes")?;
    Ok(format!(
        "11a |Λ(1/2)| = {central:.4}, torus D = {}; 37a |Λ(1/2)| = {central37:.1e}, twist D = {} nonzero",
        witness.d, twist.d
    ))
}

/// Fixed sample of the strip `0 ≤ Re s ≤ 1`, `|Im s| ≤ 20`.
const STRIP: [(f64, f64); 5] = [(0.1, 3.0), (0.35, -12.0), (0.8, 19.5), (0.55, 0.2), (0.95, -7.7)];

fn hygiene() -> Outcome {
    let strip = STRIP.map(|(re, im)| c64(re, im));

    // Functional equations of the completed L-functions.
    let mut ls = vec![CompletedL::zeta()];
    for d in [5, -4, -23, 12, -3, 8, 13, -7] {
        ls.push(CompletedL::dirichlet(d).map_err(err)?);
    }
    let curves_l = [oracle_curve(&CURVE_11A)?, oracle_curve(&CURVE_37A)?];
    ls.extend(curves_l.iter().cloned());
    for l in &ls {
        let eps = l.root_number();
        for s in strip {
            let a = completed(l, s).map_err(err)?;
            let b = completed(l, one() - s).map_err(err)? * eps;
            ensure((a - b).norm() / (1.0 + a.norm()) <= 1e-6, || format!("{} at {s}: {a} vs {b}", l.label()))?;
        }
    }
    // The balanced cut is symmetric by construction; a shifted cut is not.
    for l in &curves_l {
        let g = l.generic_data().unwrap();
        for s in strip {
            let a = g.afe(s, 1.3).map_err(err)?;
            let b = g.afe(one() - s, 1.3).map_err(err)? * g.root_number();
            ensure((a - b).norm() / (1.0 + a.norm()) <= 1e-6, || format!("{} at {s}, cut 1.3", l.label()))?;
        }
    }
    for d in [5, -4, -23, 12] {
        for s in strip {
            let (a, b) = (l_product(d, s).map_err(err)?, l_product(d, one() - s).map_err(err)?);
            ensure(rel(a, b) <= 1e-8, || format!("Λ_ζ Λ_χ for D = {d} at {s}"))?;
        }
    }

    // E*: functional equation and modular invariance.
    let zs = [c64(0.1, 1.2), c64(-0.4, 0.9), c64(0.3, 2.5), c64(1.7, 0.6), c64(-1.2, 0.35)];
    let ss = [c64(0.3, 4.0), c64(0.5, 14.0), c64(0.9, -6.5), c64(2.5, 1.0), c64(-0.4, 9.0)];
    for (k, &z) in zs.iter().enumerate() {
        for s in [ss[k], ss[(k + 2) % 5]] {
            let e = eisenstein_completed(z, s).map_err(err)?;
            let f = eisenstein_completed(z, one() - s).map_err(err)?;
            ensure((e - f).norm() <= 1e-8 * (1.0 + e.norm()), || format!("E* functional equation at z = {z}, s = {s}"))?;
        }
        let s = ss[k];
        let e = eisenstein_completed(z, s).map_err(err)?;
        for gz in [z + 1.0, -one() / z] {
            let g = eisenstein_completed(gz, s).map_err(err)?;
            ensure((e - g).norm() <= 1e-8 * (1.0 + e.norm()), || format!("E* modular invariance at z = {z}, s = {s}"))?;
        }
    }

    // Γ recurrence and duplication.
    let mut gamma_points = Vec::new();
    for i in 0..50 {
        let x = i as f64;
        gamma_points.push(c64(0.07 + (x * 0.618).fract() * 5.0, ((x * 0.377).fract() - 0.5) * 60.0));
    }
    for &z in &gamma_points {
        let (a, b) = (gamma(z + 1.0).map_err(err)?, z * gamma(z).map_err(err)?);
        ensure(rel(a, b) <= 1e-11, || format!("Γ(z+1) = zΓ(z) at {z}"))?;
    }
    for &s in gamma_points.iter().take(20) {
        let lhs = gamma(s / 2.0).map_err(err)? * gamma((s + 1.0) / 2.0).map_err(err)?;
        let rhs = PI.sqrt() * (c64(2f64.ln(), 0.0) * (one() - s)).exp() * gamma(s).map_err(err)?;
        ensure(rel(lhs, rhs) <= 1e-10, || format!("duplication at {s}"))?;
    }

    // K_ν = K_{−ν}, and step halving of the trapezoid rule.
    for (nu, x) in [(c64(0.0, 3.5), 2.0), (c64(0.7, -12.0), 9.0), (c64(-1.5, 25.0), 30.0), (c64(2.0, 0.5), 0.3)] {
        let (a, b) = (bessel_k(nu, x).map_err(err)?, bessel_k(-nu, x).map_err(err)?);
        ensure((a - b).norm() <= 1e-10 * a.norm(), || format!("K symmetry at ν = {nu}, x = {x}"))?;
        let mut h = 0.5;
        let mut prev = bessel_k_trapezoid(nu, x, h).map_err(err)?;
        let mut last_residual = f64::INFINITY;
        loop {
            h /= 2.0;
            let next = bessel_k_trapezoid(nu, x, h).map_err(err)?;
            let residual = (next - prev).norm() / a.norm();
            prev = next;
            if last_residual <= 1e-12 {
                break;
            }
            ensure(residual <= (last_residual / 1e2).max(1e-12), || {
                format!("trapezoid at ν = {nu}, x = {x}, h = {h}: {residual:.2e} after {last_residual:.2e}")
            })?;
            last_residual = residual;
        }
    }

    // Analytic class number formula.
    for d in fundamental_discriminants(100) {
        let disc = class_data(d).map_err(err)?;
        let l1 = dirichlet_l(d, one()).map_err(err)?.re;
        let h = disc.class_number() as f64;
        let predicted = match disc.unit_count() {
            Some(w) => w as f64 * (d.abs() as f64).sqrt() * l1 / (2.0 * PI),
            None => (d as f64).sqrt() * l1 / disc.log_epsilon().unwrap(),
        };
        ensure((predicted - h).abs() <= 1e-6, || format!("class number of {d}: {h} vs {predicted}"))?;
    }
    Ok(format!("{} L-functions, E*, Γ, K_ν, class numbers for |D| ≤ 100", ls.len()))
}

struct Criterion {
    label: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { label: "Hecke constancy", budget: Duration::from_secs(480), run: hecke_constancy },
        Criterion { label: "toroidal at zeta zeros", budget: Duration::from_secs(300), run: zeros_are_toroidal },
        Criterion { label: "derivative law", budget: Duration::from_secs(120), run: leibniz_law },
        Criterion { label: "residues not toroidal", budget: Duration::from_secs(180), run: residues_not_toroidal },
        Criterion { label: "double Dirichlet residue law", budget: Duration::from_secs(600), run: residue_law },
        Criterion { label: "orthogonality", budget: Duration::from_secs(60), run: orthogonality },
        Criterion { label: "nonvanishing twist", budget: Duration::from_secs(120), run: nonvanishing_twist },
        Criterion { label: "central value criterion", budget: Duration::from_secs(180), run: waldspurger },
        Criterion { label: "numerical hygiene", budget: Duration::from_secs(120), run: hygiene },
    ];
    let mut failures = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= c.budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; over the {:?} budget", c.budget))
            }
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {}: {} ({:.1}s): {detail}", k + 1, c.label, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
