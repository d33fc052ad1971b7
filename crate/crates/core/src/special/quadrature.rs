use num_complex::Complex;

use crate::{Error, Result, Scalar};

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub order: usize,
}

impl<T: Scalar> QuadratureRule<T> {
    /// The rule affinely mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> QuadratureRule<T> {
        let half = (b - a) * T::c(0.5);
        let mid = (a + b) * T::c(0.5);
        QuadratureRule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
            order: self.order,
        }
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) * T::c(0.5);
        let mid = (a + b) * T::c(0.5);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + *w * f(mid + half * *x);
        }
        acc * half
    }

    pub fn integrate_complex<F: FnMut(T) -> Complex<T>>(&self, a: T, b: T, mut f: F) -> Complex<T> {
        let half = (b - a) * T::c(0.5);
        let mid = (a + b) * T::c(0.5);
        let mut acc = Complex::new(T::zero(), T::zero());
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * *x) * *w;
        }
        acc * half
    }

    /// [`integrate_complex`](Self::integrate_complex) for a fallible integrand.
    pub fn try_integrate_complex<F, E>(&self, a: T, b: T, mut f: F) -> std::result::Result<Complex<T>, E>
    where
        F: FnMut(T) -> std::result::Result<Complex<T>, E>,
    {
        let half = (b - a) * T::c(0.5);
        let mid = (a + b) * T::c(0.5);
        let mut acc = Complex::new(T::zero(), T::zero());
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * *x)? * *w;
        }
        Ok(acc * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative<T: Scalar>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let fk = T::from_usize(k);
        let p2 = ((fk + fk - T::one()) * x * p1 - (fk - T::one()) * p0) / fk;
        p0 = p1;
        p1 = p2;
    }
    let fnn = T::from_usize(n);
    (p1, fnn * (x * p1 - p0) / (x * x - T::one()))
}

/// `n`-point Gauss–Legendre rule, `2 ≤ n ≤ 512`. Roots by Newton from
/// Chebyshev-type initial guesses.
pub fn gauss_legendre<T: Scalar>(n: usize) -> Result<QuadratureRule<T>> {
    if !(2..=512).contains(&n) {
        return Err(Error::InvalidArgument(format!("gauss_legendre order must be in 2..=512, got {n}")));
    }
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let m = n.div_ceil(2);
    let pi = T::PI();
    for i in 0..m {
        let mut x = (pi * (T::from_usize(i) + T::c(0.75)) / (T::from_usize(n) + T::c(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = T::c(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    Ok(QuadratureRule { nodes, weights, order: n })
}
