//! Point-counting oracle for elliptic curves over small prime fields.
//!
//! `a_p = p + 1 − #E(F_p)` for the Weierstrass model
//! `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6`, counted by brute force.
//! Bad primes are counted the same way, which gives `±1` at multiplicative
//! reduction and `0` at additive reduction.

#![allow(dead_code)]

#[derive(Debug, Clone, Copy)]
pub struct Curve {
    pub label: &'static str,
    pub coeffs: [i64; 5],
    pub conductor: u64,
    pub root_number: i32,
}

/// y² + y = x³ − x² − 10x − 20
pub const CURVE_11A: Curve = Curve { label: "11a", coeffs: [0, -1, 1, -10, -20], conductor: 11, root_number: 1 };

/// y² + y = x³ − x
pub const CURVE_37A: Curve = Curve { label: "37a", coeffs: [0, 0, 1, -1, 0], conductor: 37, root_number: -1 };

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn count_points_naive(c: &Curve, p: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = c.coeffs;
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    count
}

/// `a_p` by counting points; odd `p` via the square table of `F_p`.
pub fn a_p(c: &Curve, p: u64) -> i64 {
    let p = p as i64;
    if p < 5 {
        return p + 1 - count_points_naive(c, p);
    }
    let [a1, a2, a3, a4, a6] = c.coeffs;
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let mut squares = vec![-1i8; p as usize];
    squares[0] = 0;
    for y in 1..p {
        squares[(y * y % p) as usize] = 1;
    }
    // (2y + a1 x + a3)² = 4x³ + b2 x² + 2 b4 x + b6
    let mut sum = 0i64;
    for x in 0..p {
        let g = (((4 * x % p + b2) % p * x % p + 2 * b4) % p * x % p + b6).rem_euclid(p);
        sum += squares[g as usize] as i64;
    }
    -sum
}

/// Euler degree at `p`: 2 at good primes, 1 at multiplicative, 0 at additive reduction.
pub fn euler_degree(c: &Curve, p: u64, ap: i64) -> u8 {
    if !c.conductor.is_multiple_of(p) {
        2
    } else if ap != 0 {
        1
    } else {
        0
    }
}

/// Coefficient file text (motivic normalization) for primes up to `bound`.
pub fn lfun_file(c: &Curve, bound: u64) -> String {
    let mut out = String::new();
    out.push_str("LFUN v1\n");
    out.push_str(&format!("# elliptic curve {} by point counting over F_p, p <= {bound}\n", c.label));
    let sign = if c.root_number > 0 { "+1" } else { "-1" };
    out.push_str(&format!(
        "degree=2 conductor={} epsilon={sign} normalization=motivic central=1 gammashifts=0,1\n",
        c.conductor
    ));
    for p in primes_up_to(bound) {
        let ap = a_p(c, p);
        out.push_str(&format!("{p} {ap} {}\n", euler_degree(c, p, ap)));
    }
    out
}

/// Prime bound used for the shipped data files.
pub const DATA_PRIME_BOUND: u64 = 20_000;

/// The same file rewritten with unitary headers and `a_p / √p`.
pub fn to_unitary(motivic: &str) -> String {
    let mut unitary = String::new();
    for line in motivic.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() == 3 && f[0].parse::<u64>().is_ok() {
            let p: f64 = f[0].parse().unwrap();
            let a: f64 = f[1].parse().unwrap();
            unitary.push_str(&format!("{} {:.17e} {}\n", f[0], a / p.sqrt(), f[2]));
        } else {
            unitary.push_str(&line.replace(
                "normalization=motivic central=1 gammashifts=0,1",
                "normalization=unitary central=0.5 gammashifts=0.5,1.5",
            ));
            unitary.push('\n');
        }
    }
    unitary
}
