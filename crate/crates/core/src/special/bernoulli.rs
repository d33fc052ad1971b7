/// `B_{2j}` for `j = 1..=15` as exact `(numerator, denominator)` pairs.
pub(crate) const BERNOULLI_EVEN: [(i64, i64); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

/// `B_{2j} / (2j)!` for `j = 1..=15`.
pub(crate) fn euler_maclaurin_coefficients() -> [f64; 15] {
    let mut out = [0.0; 15];
    let mut fact = 1.0f64;
    let mut k = 0u32;
    for (j, &(num, den)) in BERNOULLI_EVEN.iter().enumerate() {
        let target = 2 * (j as u32 + 1);
        while k < target {
            k += 1;
            fact *= k as f64;
        }
        out[j] = num as f64 / den as f64 / fact;
    }
    out
}
