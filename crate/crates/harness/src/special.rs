//! Small special-function kit: log-gamma, the tail of the exponential
//! series, and the explicit interpolation factors.

use crate::tol::{SERIES_TERM_CAP, SERIES_TERM_CUTOFF};

// Stirling series for ln Gamma, valid once the argument is pushed past 10
// by the recursion ln G(x) = ln G(x+1) - ln x. Coefficients are
// B_{2k} / (2k(2k-1)).
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    7.0 / 1092.0,
];

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(mut x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite(), "ln_gamma needs x > 0, got {x}");
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut tail = 0.0;
    let x2 = x * x;
    let mut xp = x;
    for c in STIRLING {
        tail += c / xp;
        xp *= x2;
    }
    shift + (x - 0.5) * x.ln() - x + half_log_2pi + tail
}

/// Gamma(q+1)^(1/q) / q. Trends to 1/e as q grows.
pub fn gamma_ratio(q: f64) -> f64 {
    assert!(q > 0.0);
    (ln_gamma(q + 1.0) / q).exp() / q
}

/// Tail of the exponential series from index p: sum_{j>=p} t^j / j!.
/// Grows like exp(t); for large t the direct subtraction is safe because
/// the dropped polynomial is negligible next to exp(t).
pub fn phi_lower(p: u32, t: f64) -> f64 {
    assert!(t >= 0.0 && t.is_finite());
    if t == 0.0 {
        return 0.0;
    }
    if t > 35.0 {
        let mut poly = 0.0;
        let mut term = 1.0;
        for j in 0..p {
            poly += term;
            term *= t / (j + 1) as f64;
        }
        return t.exp() - poly;
    }
    let mut term = (p as f64 * t.ln() - ln_gamma(p as f64 + 1.0)).exp();
    let mut sum = term;
    for j in p..(p + SERIES_TERM_CAP as u32) {
        term *= t / (j + 1) as f64;
        sum += term;
        if term < SERIES_TERM_CUTOFF * sum {
            break;
        }
    }
    sum
}

/// The sup-interpolation factor 2^(1-1/q) * (q/(q-p))^(1/q) from the weak
/// branch; evaluated in the log domain so large q stays exact.
pub fn weak_sup_factor(p: f64, q: f64) -> f64 {
    assert!(q > p && p > 0.0);
    ((1.0 - 1.0 / q) * std::f64::consts::LN_2 + (q.ln() - (q - p).ln()) / q).exp()
}

/// x^a through the log domain; keeps q-th powers for large q from
/// overflowing before the compensating root is applied.
pub fn pow_ld(x: f64, a: f64) -> f64 {
    assert!(x >= 0.0);
    if x == 0.0 {
        if a == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (a * x.ln()).exp()
    }
}
