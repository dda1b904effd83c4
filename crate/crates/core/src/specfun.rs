//! Scalar special functions: the normal distribution function and its
//! logarithm, the exponential integral E₁, modified Bessel functions K₀ and
//! K₁, and the upper incomplete gamma function for real (including negative)
//! first argument.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ln √(2π)
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

/// Standard normal distribution function Φ(x).
///
/// Evaluated through `erfc` on whichever side avoids cancellation, so the
/// lower tail keeps full relative precision down to underflow.
pub fn std_normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
    } else {
        1.0 - 0.5 * libm::erfc(x * FRAC_1_SQRT_2)
    }
}

/// Standard normal density φ(x).
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x - LN_SQRT_2PI).exp()
}

/// ln Φ(x), finite for arbitrarily negative `x`.
///
/// Below x = −20 the Mills-ratio asymptotic series is used:
/// Φ(x) = φ(x)/|x| · (1 − 1/x² + 3/x⁴ − 15/x⁶ + …).
pub fn log_std_normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x > 0.0 {
        (-0.5 * libm::erfc(x * FRAC_1_SQRT_2)).ln_1p()
    } else if x > -20.0 {
        (0.5 * libm::erfc(-x * FRAC_1_SQRT_2)).ln()
    } else {
        let inv_x2 = 1.0 / (x * x);
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=16 {
            term *= -((2 * k - 1) as f64) * inv_x2;
            sum += term;
            if term.abs() < EPS * sum.abs() {
                break;
            }
        }
        -0.5 * x * x - LN_SQRT_2PI - (-x).ln() + sum.ln()
    }
}

/// Inverse Mills ratio φ(x)/Φ(−x), evaluated in log space so that it stays
/// finite for large `x`.
pub fn inverse_mills_ratio(x: f64) -> f64 {
    (-0.5 * x * x - LN_SQRT_2PI - log_std_normal_cdf(-x)).exp()
}

/// Exponential integral E₁(x) = ∫ₓ^∞ e^{−t}/t dt for x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "exp_integral_e1",
            value: x,
        });
    }
    if x < 1.0 {
        Ok(e1_series(x))
    } else {
        Ok(e1_continued_fraction_scaled(x) * (-x).exp())
    }
}

/// eˣ·E₁(x), which stays representable for large `x` where E₁ underflows.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "exp_integral_e1_scaled",
            value: x,
        });
    }
    if x < 1.0 {
        Ok(e1_series(x) * x.exp())
    } else {
        Ok(e1_continued_fraction_scaled(x))
    }
}

fn e1_series(x: f64) -> f64 {
    // E₁(x) = −γ − ln x − Σ_{k≥1} (−x)^k / (k·k!)
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 1..MAX_ITER {
        fact *= -x / k as f64;
        let term = fact / k as f64;
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Modified Lentz evaluation of eˣE₁(x) for x ≥ 1.
fn e1_continued_fraction_scaled(x: f64) -> f64 {
    let mut b = x + 1.0;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Modified Bessel function of the second kind, orders 0 and 1.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(order, x)? * (-x).exp())
}

/// Exponentially scaled modified Bessel function eˣ·K_order(x).
///
/// Power series for x ≤ 2, Steed's continued fraction (Temme's
/// normalization) above.
pub fn bessel_k_scaled(order: u32, x: f64) -> Result<f64> {
    if order > 1 {
        return Err(Error::Domain {
            function: "bessel_k (order)",
            value: order as f64,
        });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "bessel_k",
            value: x,
        });
    }
    let (k0, k1) = if x <= 2.0 {
        let (k0, k1) = bessel_k01_series(x);
        (k0 * x.exp(), k1 * x.exp())
    } else {
        bessel_k01_steed_scaled(x)
    };
    Ok(if order == 0 { k0 } else { k1 })
}

fn bessel_k01_series(x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let ln_half = (0.5 * x).ln();

    // I₀, I₁ and the harmonic-weighted sums in one pass.
    let mut i0 = 1.0;
    let mut i1 = 1.0;
    let mut s0 = 0.0;
    let mut s1 = 2.0 * -EULER_GAMMA + 1.0; // ψ(1) + ψ(2)
    let mut term0 = 1.0; // t^k / (k!)²
    let mut term1 = 1.0; // t^k / (k!(k+1)!)
    let mut harmonic = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term0 *= t / (kf * kf);
        term1 *= t / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += term0;
        i1 += term1;
        s0 += harmonic * term0;
        // ψ(k+1) + ψ(k+2) = 2(H_k − γ) + 1/(k+1)
        s1 += (2.0 * (harmonic - EULER_GAMMA) + 1.0 / (kf + 1.0)) * term1;
        if term0 < EPS * i0 && term1 < EPS * i1 {
            break;
        }
    }
    let i1 = 0.5 * x * i1;
    let k0 = -(ln_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + ln_half * i1 - 0.25 * x * s1;
    (k0, k1)
}

fn bessel_k01_steed_scaled(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        a -= (2 * (i - 1)) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// Upper incomplete gamma Γ(a, x) = ∫ₓ^∞ t^{a−1} e^{−t} dt.
///
/// Defined for any real `a` when x > 0, and for a > 0 when x = 0.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    Ok(ln_upper_incomplete_gamma(a, x)?.exp())
}

/// ln Γ(a, x); see [`upper_incomplete_gamma`].
pub fn ln_upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !a.is_finite() || !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "upper_incomplete_gamma",
            value: x,
        });
    }
    if x == 0.0 {
        if a > 0.0 {
            return Ok(libm::lgamma(a));
        }
        return Err(Error::Domain {
            function: "upper_incomplete_gamma (a <= 0 at x = 0)",
            value: a,
        });
    }
    if x >= 1.0 && x >= a + 1.0 {
        return Ok(ln_gamma_cf(a, x));
    }
    if a > 0.0 {
        // Γ(a) − γ(a, x); x < a + 1 keeps the regularized complement ≳ 0.3.
        let lower = ln_lower_gamma_series(a, x);
        let lg = libm::lgamma(a);
        return Ok(lg + (-(lower - lg).exp()).ln_1p());
    }
    // a ≤ 0 and x < 1: recur downward from a + m ∈ (0, 1], or from E₁ when
    // `a` is a non-positive integer.
    let top = a + (-a).ceil();
    let (mut value, mut cur) = if top == 0.0 {
        (exp_integral_e1(x)?, 0.0)
    } else {
        let lower = ln_lower_gamma_series(top, x);
        let lg = libm::lgamma(top);
        ((lg + (-(lower - lg).exp()).ln_1p()).exp(), top)
    };
    let ln_x = x.ln();
    while cur > a + 0.5 {
        let next = cur - 1.0;
        // Γ(s, x) = (Γ(s+1, x) − x^s e^{−x}) / s
        value = (value - (next * ln_x - x).exp()) / next;
        cur = next;
    }
    Ok(value.ln())
}

/// ln of the lower incomplete gamma γ(a, x) for a > 0 by its power series.
fn ln_lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum.ln() - x + a * x.ln()
}

/// ln Γ(a, x) by the Legendre continued fraction (modified Lentz).
fn ln_gamma_cf(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    -x + a * x.ln() + h.ln()
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln Γ(x + 1/2) − ln Γ(x) for x > 0, without the cancellation of the
/// direct difference at large x.
pub fn ln_gamma_half_ratio(x: f64) -> f64 {
    if x < 20.0 {
        return ln_gamma(x + 0.5) - ln_gamma(x);
    }
    let y = 1.0 / (x * x);
    let series = -0.125 + y * (1.0 / 192.0 + y * (-1.0 / 640.0 + y * (17.0 / 14336.0 - y * 31.0 / 18432.0)));
    0.5 * x.ln() + series / x
}
