//! The normal–Cauchy NC(1) distribution.
//!
//! In standardized form the density is
//!
//! ```text
//! f(x) = c₁ · exp(−βx²/2) / (1 + (1 − β)x²),   0 ≤ β ≤ 1,
//! c₁   = √(1−β) · exp(−α/2) / (2π Φ(−√α)),      α = β/(1 − β),
//! ```
//!
//! and Y = μ + s·X. β = 0 is the standard Cauchy law and β = 1 the standard
//! normal. The law is a scale mixture: X = N / (√(1−β)·Z) with N standard
//! normal and Z a standard normal truncated below at √α.

use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::numerics::{integrate_semi_infinite_with, QuadOptions, CDF_REL_TOL};
use crate::random::RandomSource;
use crate::specfun::{log_std_normal_cdf, std_normal_cdf, LN_SQRT_2PI};
use crate::symmetric::{cdf_from_tail, quantile_from_tail, upper_tail, TailAnchor};

/// β at or above this value is treated as the exact normal limit.
pub const NORMAL_LIMIT_BETA: f64 = 1.0 - 1e-9;

/// Largest α at which closed-form moments are used.
pub(crate) const CLOSED_FORM_MAX_ALPHA: f64 = 20.0;

/// α = β/(1 − β). Returns +∞ at β = 1.
pub fn alpha_from_beta(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if beta == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(beta / (1.0 - beta))
}

/// β = α/(1 + α); α = +∞ maps to 1.
pub fn beta_from_alpha(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be nonnegative",
        });
    }
    if alpha == f64::INFINITY {
        return Ok(1.0);
    }
    Ok(alpha / (1.0 + alpha))
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

/// ln c₁(β), the log normalizing constant of the standardized density.
pub fn log_c1(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if beta >= NORMAL_LIMIT_BETA {
        return Ok(-LN_SQRT_2PI);
    }
    if beta == 0.0 {
        return Ok(-PI.ln());
    }
    let alpha = beta / (1.0 - beta);
    if alpha >= SERIES_MIN_ALPHA {
        return Ok(0.5 * beta.ln() - LN_SQRT_2PI + mills_terms(alpha).0);
    }
    Ok(0.5 * (-beta).ln_1p() - 0.5 * alpha - (2.0 * PI).ln() - log_std_normal_cdf(-alpha.sqrt()))
}

/// From this α on, ln c₁ and its derivatives use the asymptotic expansion
/// of the Mills ratio, which avoids the cancellation of terms of size α².
const SERIES_MIN_ALPHA: f64 = 80.0;

/// T(α) = −ln S(α) and its first two derivatives, where
/// S(α) = √α·Φ(−√α)/φ(√α) ~ Σₖ (−1)ᵏ(2k − 1)!!/αᵏ.
///
/// With this, ln c₁ = ½ln β − ln√(2π) + T(α).
fn mills_terms(alpha: f64) -> (f64, f64, f64) {
    let (mut s, mut s1, mut s2) = (1.0, 0.0, 0.0);
    let mut coef = 1.0; // (−1)ᵏ(2k − 1)!!
    let mut prev = f64::INFINITY;
    for k in 1..40 {
        let kf = k as f64;
        coef *= -(2.0 * kf - 1.0);
        let term = coef / alpha.powi(k);
        if term.abs() >= prev || term.abs() < 1e-18 {
            break;
        }
        prev = term.abs();
        s += term;
        s1 -= kf * term / alpha;
        s2 += kf * (kf + 1.0) * term / (alpha * alpha);
    }
    let d1 = s1 / s;
    (-s.ln(), -d1, -s2 / s + d1 * d1)
}

/// d ln c₁ / dβ.
pub fn d_log_c1(beta: f64) -> f64 {
    let om = 1.0 - beta;
    let alpha = beta / om;
    if alpha >= SERIES_MIN_ALPHA {
        let (_, t1, _) = mills_terms(alpha);
        return 0.5 / beta + t1 / (om * om);
    }
    let r = alpha.sqrt();
    let mills = crate::specfun::inverse_mills_ratio(r);
    -0.5 / om - 0.5 / (om * om) + mills / (2.0 * r * om * om)
}

/// d² ln c₁ / dβ².
pub fn d2_log_c1(beta: f64) -> f64 {
    let om = 1.0 - beta;
    let alpha = beta / om;
    if alpha >= SERIES_MIN_ALPHA {
        let (_, t1, t2) = mills_terms(alpha);
        return -0.5 / (beta * beta) + t2 / om.powi(4) + 2.0 * t1 / om.powi(3);
    }
    let r = alpha.sqrt();
    let m = crate::specfun::inverse_mills_ratio(r);
    // With q(α) = m/(2√α): dq/dα = m(m − r)/(4r²) − m/(4r³).
    let dq = m * (m - r) / (4.0 * r * r) - m / (4.0 * r * r * r);
    -0.5 / (om * om) - 1.0 / om.powi(3) + dq / om.powi(4) + m / (r * om.powi(3))
}

/// Location, scale and tail weight of an NC(1) law, with its normalizing
/// constant computed once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nc1Params {
    mu: f64,
    s: f64,
    beta: f64,
    log_c1: f64,
}

impl Nc1Params {
    pub fn new(mu: f64, s: f64, beta: f64) -> Result<Self> {
        check_finite("mu", mu)?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "scale must be positive and finite",
            });
        }
        Ok(Self {
            mu,
            s,
            beta,
            log_c1: log_c1(beta)?,
        })
    }

    pub fn standard(beta: f64) -> Result<Self> {
        Self::new(0.0, 1.0, beta)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> f64 {
        if self.beta == 1.0 {
            f64::INFINITY
        } else {
            self.beta / (1.0 - self.beta)
        }
    }

    /// Cached ln c₁.
    pub fn log_c1(&self) -> f64 {
        self.log_c1
    }

    pub fn is_normal_limit(&self) -> bool {
        self.beta >= NORMAL_LIMIT_BETA
    }

    pub(crate) fn log_pdf_std(&self, x: f64) -> f64 {
        if self.is_normal_limit() {
            return -LN_SQRT_2PI - 0.5 * x * x;
        }
        self.log_c1 - 0.5 * self.beta * x * x - ((1.0 - self.beta) * x * x).ln_1p()
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        self.log_pdf_std((y - self.mu) / self.s) - self.s.ln()
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    /// P(X > t) for the standardized variate, t ≥ 0.
    pub(crate) fn upper_tail_std(&self, t: f64) -> f64 {
        if self.is_normal_limit() {
            return std_normal_cdf(-t);
        }
        let point = 1.0 / (1.0 - self.beta).sqrt();
        let anchor = TailAnchor {
            point,
            tail: 0.5 * log_std_normal_cdf(-self.alpha().sqrt()).exp(),
        };
        upper_tail(|x| self.log_pdf_std(x).exp(), t, point, Some(anchor), self.beta)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        cdf_from_tail(|t| self.upper_tail_std(t), (y - self.mu) / self.s)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        let guess = (PI * (p - 0.5)).tan();
        let x = quantile_from_tail(|t| self.upper_tail_std(t), p, guess)?;
        Ok(self.mu + self.s * x)
    }

    /// One draw by the truncated-normal mixture (Robert's exponential
    /// majorizer for the mixing variable).
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        self.mu + self.s * sample_standard(self.beta, rng)
    }
}

/// Second and fourth central moments with the excess kurtosis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub m2: f64,
    pub m4: f64,
    pub excess_kurtosis: f64,
}

impl Moments {
    pub(crate) fn new(m2: f64, m4: f64) -> Self {
        Self {
            m2,
            m4,
            excess_kurtosis: m4 / (m2 * m2) - 3.0,
        }
    }

    /// Moments of μ + s·X given those of X.
    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.m2 * s * s, self.m4 * s.powi(4))
    }
}

/// Central moments of the standardized NC(1) law.
///
/// E(X²) = {c₁√(2π/β) − 1}/(1 − β) and
/// E(X⁴) = {c₁√(2π/β)(1 − 2β)/β + 1}/(1 − β)², integrated directly for
/// α > 20.
pub fn central_moments(beta: f64) -> Result<Moments> {
    check_beta(beta)?;
    if beta == 0.0 {
        return Err(Error::DivergentMoment("NC(1) moments diverge at beta = 0"));
    }
    if beta >= NORMAL_LIMIT_BETA {
        return Ok(Moments::new(1.0, 3.0));
    }
    let om = 1.0 - beta;
    if beta / om > CLOSED_FORM_MAX_ALPHA {
        // The closed form subtracts nearly equal terms as β → 1.
        let u = crate::nt::standard_moments(beta / om, 1.0)?;
        return Ok(Moments::new(u.m2 / om, u.m4 / (om * om)));
    }
    let u = (log_c1(beta)? + 0.5 * (2.0 * PI / beta).ln()).exp();
    let m2 = (u - 1.0) / om;
    let m4 = (u * (1.0 - 2.0 * beta) / beta + 1.0) / (om * om);
    Ok(Moments::new(m2, m4))
}

/// Moment-generating function E[exp(tX)] of the standardized law, by
/// quadrature over the mixing variable.
pub fn mgf(beta: f64, t: f64) -> Result<f64> {
    check_beta(beta)?;
    check_finite("t", t)?;
    if beta == 0.0 {
        return Err(Error::DivergentMoment("the mgf does not exist at beta = 0"));
    }
    if beta >= NORMAL_LIMIT_BETA {
        return Ok((0.5 * t * t).exp());
    }
    Ok(mixing_transform(beta, 0.5 * t * t / (1.0 - beta))?.exp())
}

/// Characteristic function E[cos(tX)] (real, since the law is symmetric).
pub fn char_fn(beta: f64, t: f64) -> Result<f64> {
    check_beta(beta)?;
    check_finite("t", t)?;
    if beta >= NORMAL_LIMIT_BETA {
        return Ok((-0.5 * t * t).exp());
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok(mixing_transform(beta, -0.5 * t * t / (1.0 - beta))?.exp())
}

/// ln of E_Z[exp(k/Z²)] for Z standard normal truncated below at √α.
fn mixing_transform(beta: f64, k: f64) -> Result<f64> {
    let alpha = beta / (1.0 - beta);
    let a = alpha.sqrt();
    // Exponent h(z) = k/z² − z²/2, shifted by its value at the lower limit
    // when that is finite.
    let h = |z: f64| {
        if k == 0.0 {
            -0.5 * z * z
        } else {
            k / (z * z) - 0.5 * z * z
        }
    };
    let h0 = if a > 0.0 { h(a) } else { 0.0 };
    let scale = 1.0 / (1.0 + a);
    let opts = QuadOptions::rel(CDF_REL_TOL).with_abs_tol(1e-300);
    let q = integrate_semi_infinite_with(|z| (h(z) - h0).exp(), a, scale, &opts)?;
    let log_norm = LN_SQRT_2PI + log_std_normal_cdf(-a);
    Ok(h0 + q.value.ln() - log_norm)
}

/// Draw from a standard normal truncated below at `a` ≥ 0 (Robert's
/// algorithm with an optimally scaled exponential majorizer).
pub fn sample_truncated_normal<R: RandomSource + ?Sized>(a: f64, rng: &mut R) -> f64 {
    let lambda = 0.5 * (a + (a * a + 4.0).sqrt());
    loop {
        let u = rng.uniform();
        let v = rng.uniform();
        let z = a - u.ln() / lambda;
        let rho = (-0.5 * (z - lambda) * (z - lambda)).exp();
        if v <= rho {
            return z;
        }
    }
}

/// Standardized NC(1) draw.
pub fn sample_standard<R: RandomSource + ?Sized>(beta: f64, rng: &mut R) -> f64 {
    if beta >= NORMAL_LIMIT_BETA {
        return rng.normal();
    }
    let a = (beta / (1.0 - beta)).sqrt();
    let z = sample_truncated_normal(a, rng);
    let x = rng.normal();
    x / ((1.0 - beta).sqrt() * z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded;

    #[test]
    fn alpha_beta_maps() {
        assert_eq!(alpha_from_beta(0.5).unwrap(), 1.0);
        assert_eq!(alpha_from_beta(0.0).unwrap(), 0.0);
        assert_eq!(beta_from_alpha(3.0).unwrap(), 0.75);
        assert_eq!(alpha_from_beta(1.0).unwrap(), f64::INFINITY);
        assert!(alpha_from_beta(1.5).is_err());
        for i in 0..1000 {
            let b = 0.999_999 * i as f64 / 999.0;
            let back = beta_from_alpha(alpha_from_beta(b).unwrap()).unwrap();
            assert!((back - b).abs() <= 1e-15 * b.max(1e-300), "{b}");
        }
    }

    #[test]
    fn constant_endpoints() {
        assert!((log_c1(0.0).unwrap() + PI.ln()).abs() < 1e-15);
        assert!((log_c1(1.0).unwrap() + LN_SQRT_2PI).abs() < 1e-15);
        let near = log_c1(0.999).unwrap();
        assert!(near.is_finite() && (near + LN_SQRT_2PI).abs() < 1e-3);
        // α ≈ 1e8: Φ(−√α) underflows in linear space.
        assert!(log_c1(1.0 - 1e-8).unwrap().is_finite());
    }

    #[test]
    fn log_pdf_limits_and_symmetry() {
        let cauchy = Nc1Params::standard(0.0).unwrap();
        assert!((cauchy.log_pdf(0.0) + PI.ln()).abs() < 1e-15);
        let normal = Nc1Params::standard(1.0).unwrap();
        assert!((normal.log_pdf(0.0) + LN_SQRT_2PI).abs() < 1e-15);
        let p = Nc1Params::new(1.5, 2.0, 0.37).unwrap();
        for &d in &[0.1, 1.0, 7.5, 40.0] {
            assert_eq!(p.log_pdf(1.5 + d), p.log_pdf(1.5 - d));
        }
    }

    #[test]
    fn tail_is_thinner_than_any_cauchy() {
        for &beta in &[0.05, 0.3, 0.9] {
            let p = Nc1Params::standard(beta).unwrap();
            let x = 50.0;
            assert!((p.log_pdf(x) + 0.25 * beta * x * x).exp() < 1e-10);
        }
    }

    #[test]
    fn cdf_median_and_beta_zero_anchor() {
        let p = Nc1Params::new(3.0, 2.0, 0.4).unwrap();
        assert_eq!(p.cdf(3.0), 0.5);
        let cauchy = Nc1Params::standard(0.0).unwrap();
        assert!((cauchy.cdf(1.0) - 0.75).abs() < 1e-12);
        assert!((cauchy.quantile(0.75).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(p.quantile(0.5).unwrap(), 3.0);
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
    }

    #[test]
    fn moments_reject_cauchy_and_match_normal() {
        assert!(matches!(central_moments(0.0), Err(Error::DivergentMoment(_))));
        assert_eq!(central_moments(1.0).unwrap(), Moments::new(1.0, 3.0));
        assert!(central_moments(1e-6).unwrap().excess_kurtosis > 1e3);
    }

    #[test]
    fn kurtosis_decreases_in_beta() {
        let mut last = f64::INFINITY;
        for i in 1..100 {
            let k = central_moments(i as f64 / 100.0).unwrap().excess_kurtosis;
            assert!(k < last && k >= 0.0);
            last = k;
        }
    }

    #[test]
    fn mgf_and_cf_limits() {
        assert!((mgf(0.4, 0.0).unwrap() - 1.0).abs() < 1e-9);
        assert!((mgf(1.0, 1.0).unwrap() - 0.5f64.exp()).abs() < 1e-15);
        assert!((mgf(0.4, 1.3).unwrap() - mgf(0.4, -1.3).unwrap()).abs() < 1e-15);
        assert!(mgf(0.0, 1.0).is_err());
        assert_eq!(char_fn(0.3, 0.0).unwrap(), 1.0);
        assert!((char_fn(1.0, 1.0).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        // Cauchy characteristic function e^{−|t|}
        for &t in &[0.5, 1.0, 3.0] {
            assert!((char_fn(0.0, t).unwrap() - (-t).exp()).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn truncated_normal_support() {
        let mut rng = seeded(1);
        for _ in 0..10_000 {
            assert!(sample_truncated_normal(2.0, &mut rng) >= 2.0);
        }
    }
}
