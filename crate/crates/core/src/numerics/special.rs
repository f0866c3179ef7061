use std::f64::consts::PI;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SERIES_LIMIT: f64 = 2.5;
const SATURATION: f64 = 6.0;

/// Error function, absolute accuracy better than 1e-14 on the real line.
///
/// Computed as an exactly odd function: the sign is split off before any
/// arithmetic, so `erf(-x) == -erf(x)` bit for bit.
pub fn erf(x: f64) -> f64 {
    let ax = x.abs();
    let magnitude = if ax < SERIES_LIMIT {
        erf_series(ax)
    } else if ax < SATURATION {
        1.0 - erfc_continued_fraction(ax)
    } else {
        1.0
    };
    magnitude.copysign(x)
}

/// Complementary error function `1 − erf(x)`.
///
/// For large positive `x` the continued fraction is used directly so the
/// result keeps its relative accuracy instead of cancelling against 1.
pub fn erfc(x: f64) -> f64 {
    if x >= SERIES_LIMIT {
        erfc_continued_fraction(x)
    } else {
        1.0 - erf(x)
    }
}

/// `sin(x)/x` with the removable singularity filled in, `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-3 {
        let x2 = ax * ax;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        ax.sin() / ax
    }
}

// erf(x) = 2/√π · x·e^{−x²} · Σ (2x²)^n / (1·3·…·(2n+1)); every term is
// positive so there is no cancellation for x ≥ 0.
fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x * x).exp() * sum
}

// erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …)))), x > 0,
// evaluated with the modified Lentz algorithm.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..500 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}
