//! Argument parsers for complex numbers and ranges.

use std::str::FromStr;

use toroidal_core::Complex;

/// `2`, `-4i`, `0.5+14.134725i`, `0.25-5i`.
pub fn parse_complex(text: &str) -> Result<Complex, String> {
    let t = text.trim().replace(' ', "");
    Complex::from_str(&t).map_err(|_| format!("not a complex number: {text:?}"))
}

/// `a..b` with `a ≤ b`.
pub fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text.split_once("..").ok_or_else(|| format!("expected a..b, got {text:?}"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad range start in {text:?}"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad range end in {text:?}"))?;
    if !(a <= b) {
        return Err(format!("range {text:?} is empty"));
    }
    Ok((a, b))
}

/// `a, a+h, …` up to `b` inclusive (within `h/1000`).
pub fn range_points(a: f64, b: f64, step: f64) -> Vec<f64> {
    let count = ((b - a) / step + 1e-3).floor() as usize;
    (0..=count).map(|k| a + k as f64 * step).collect()
}
