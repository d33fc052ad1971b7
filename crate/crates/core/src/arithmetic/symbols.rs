//! Characters and multiplicative functions on the integers.

use crate::{Complex, Error, Result};

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> i32 {
    assert!(n > 0 && n % 2 == 1, "jacobi: modulus must be odd and positive, got {n}");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` for arbitrary integers.
pub fn kronecker(d: i64, n: i64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if d % 2 == 0 {
            return 0;
        }
        n >>= v;
        if v % 2 == 1 {
            let r = d.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    result * jacobi(d, n)
}

/// Möbius function. Panics on `n = 0`.
pub fn moebius(n: u64) -> i32 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Writes `d = d0 * d1^2` with `d0` squarefree.
pub fn squarefree_decompose(d: u64) -> (u64, u64) {
    assert!(d >= 1, "squarefree_decompose needs d >= 1");
    let mut d0 = 1;
    let mut d1 = 1;
    for (p, e) in factorize(d) {
        d1 *= p.pow(e / 2);
        if e % 2 == 1 {
            d0 *= p;
        }
    }
    (d0, d1)
}

/// `σ_ν(n) = Σ_{d | n} d^ν`.
pub fn divisor_power_sum(n: u64, nu: Complex) -> Complex {
    assert!(n >= 1, "divisor_power_sum needs n >= 1");
    let mut total = Complex::new(0.0, 0.0);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += (nu * (d as f64).ln()).exp();
            let e = n / d;
            if e != d {
                total += (nu * (e as f64).ln()).exp();
            }
        }
        d += 1;
    }
    total
}

fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Whether `d` is the discriminant of a quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m = d.rem_euclid(4);
    if m == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if m != 0 {
        return false;
    }
    let q = d / 4;
    let r = q.rem_euclid(4);
    (r == 2 || r == 3) && is_squarefree(q.unsigned_abs())
}

/// Discriminant of `Q(√d)`; fails when `d` is a square (split algebra).
pub fn fundamental_discriminant_of(d: i64) -> Result<i64> {
    if d == 0 {
        return Err(Error::NotFundamental(0));
    }
    let (core, _) = squarefree_decompose(d.unsigned_abs());
    let core = if d < 0 { -(core as i64) } else { core as i64 };
    if core == 1 {
        return Err(Error::NotFundamental(d));
    }
    Ok(if core.rem_euclid(4) == 1 { core } else { 4 * core })
}

/// Fundamental discriminants ordered by `|D|`, positive before negative on ties.
pub fn fundamental_discriminants(bound: i64) -> impl Iterator<Item = i64> {
    (3..=bound).flat_map(|m| [m, -m]).filter(|&d| is_fundamental(d))
}

/// Parity flag of a quadratic character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The shift `a ∈ {0,1}` in `Γ((s+a)/2)`.
    pub fn shift(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// The Kronecker character `χ_D` of a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadChar {
    disc: i64,
}

impl QuadChar {
    pub fn new(disc: i64) -> Result<Self> {
        if disc != 1 && !is_fundamental(disc) {
            return Err(Error::NotFundamental(disc));
        }
        Ok(Self { disc })
    }

    /// The trivial character (`D = 1`).
    pub fn trivial() -> Self {
        Self { disc: 1 }
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn conductor(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn parity(&self) -> Parity {
        if self.disc < 0 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.disc == 1
    }

    #[inline]
    pub fn eval(&self, n: i64) -> i32 {
        kronecker(self.disc, n)
    }
}
