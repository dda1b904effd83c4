#![allow(dead_code)]

use ncdist::numerics::{integrate_real_line_with, integrate_semi_infinite_with, QuadOptions};

/// One-sample Kolmogorov–Smirnov statistic; sorts `sample` in place.
pub fn ks_statistic(sample: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    sample.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        let lo = f - i as f64 / n;
        let hi = (i + 1) as f64 / n - f;
        d.max(lo).max(hi)
    })
}

/// Asymptotic Kolmogorov p-value with the Stephens small-sample correction.
pub fn ks_p_value(d: f64, n_eff: f64) -> f64 {
    let sn = n_eff.sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut p = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        p += if k % 2 == 1 { 2.0 * term } else { -2.0 * term };
        if term < 1e-16 {
            break;
        }
    }
    p.clamp(0.0, 1.0)
}

/// One-sample KS p-value.
pub fn ks_test(sample: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let d = ks_statistic(sample, cdf);
    ks_p_value(d, sample.len() as f64)
}

/// Two-sample KS p-value; sorts both inputs.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < na && j < nb {
        let x = a[i].min(b[j]);
        while i < na && a[i] <= x {
            i += 1;
        }
        while j < nb && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let n_eff = (na * nb) as f64 / (na + nb) as f64;
    ks_p_value(d, n_eff)
}

/// Whole-line integral at tight tolerance, centered at `center`.
pub fn integral(f: impl Fn(f64) -> f64, center: f64, scale: f64) -> f64 {
    let opts = QuadOptions::rel(1e-12).with_abs_tol(1e-300);
    integrate_real_line_with(f, center, scale, &opts).expect("quadrature").value
}

/// ∫ₐ^∞ f at tight tolerance.
pub fn tail_integral(f: impl Fn(f64) -> f64, a: f64, scale: f64) -> f64 {
    let opts = QuadOptions::rel(1e-12).with_abs_tol(1e-300);
    integrate_semi_infinite_with(f, a, scale, &opts).expect("quadrature").value
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

#[track_caller]
pub fn assert_rel(got: f64, want: f64, tol: f64) {
    assert!(rel_err(got, want) <= tol, "got {got}, want {want} (rel err {:e} > {tol:e})", rel_err(got, want));
}

#[track_caller]
pub fn assert_abs(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want} (abs err {:e} > {tol:e})", (got - want).abs());
}
