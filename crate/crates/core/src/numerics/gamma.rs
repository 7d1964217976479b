use libm::log;

/// `n!` for `n <= 20`; every entry is the correctly rounded double.
const FACTORIALS: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

/// Below this argument `ln_gamma` shifts upward with the recurrence before
/// applying the asymptotic series.
const STIRLING_MIN: f64 = 15.0;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `B_2k / (2k (2k - 1))` for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * log(x) - x + HALF_LN_TWO_PI + series * inv
}

/// `ln Γ(x)` for `x > 0`; `NaN` otherwise.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    if x >= STIRLING_MIN {
        return stirling(x);
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < STIRLING_MIN {
        product *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) - log(product)
}

/// `Γ(x)` for `x > 0`. Overflows to `+inf` above `x ≈ 171.6`.
pub fn gamma(x: f64) -> f64 {
    libm::exp(ln_gamma(x))
}

/// `ln(n!)`.
pub fn log_factorial(n: u64) -> f64 {
    match FACTORIALS.get(n as usize) {
        Some(&f) if n <= 20 => log(f),
        _ => stirling(n as f64 + 1.0),
    }
}
