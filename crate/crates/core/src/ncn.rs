//! NC(n): a normal density times a t density with ν = 2n − 1 degrees of
//! freedom,
//!
//! ```text
//! f(x) = √(1−β) · cₙ(α) · exp(−βx²/2) / (1 + (1−β)x²)ⁿ.
//! ```
//!
//! The unscaled constant is cₙ(α) = 2ⁿ⁻¹(n−1)! e^{−α/2} / (√(2π) Iₙ(α)) with
//! Iₙ(α) = ∫_{√α}^∞ (z² − α)ⁿ⁻¹ e^{−z²/2} dz, which obeys a three-term
//! recurrence.

use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::nc1::{check_beta, Moments, CLOSED_FORM_MAX_ALPHA, NORMAL_LIMIT_BETA};
use crate::numerics::{integrate_semi_infinite_with, QuadOptions};
use crate::random::RandomSource;
use crate::specfun::{ln_gamma, log_std_normal_cdf, std_normal_cdf, LN_SQRT_2PI};
use crate::symmetric::{cdf_from_tail, quantile_from_tail, upper_tail};

/// Largest supported n.
pub const MAX_N: u32 = 10;

/// Relative disagreement between recurrence and quadrature above which the
/// quadrature value is used.
const RECURRENCE_CHECK_TOL: f64 = 1e-8;

fn check_n(n: u32) -> Result<()> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "degree must lie in 1..=10",
        });
    }
    Ok(())
}

/// Jₖ = Iₖ·e^{α/2} for k = 1..=n by the recurrence
/// Iₖ = (2k − 3 − α)Iₖ₋₁ + 2α(k − 2)Iₖ₋₂.
fn scaled_i_recurrence(n: u32, alpha: f64) -> Vec<f64> {
    let mut j = Vec::with_capacity(n as usize);
    let j1 = (LN_SQRT_2PI + log_std_normal_cdf(-alpha.sqrt()) + 0.5 * alpha).exp();
    j.push(j1);
    if n >= 2 {
        j.push(alpha.sqrt() + (1.0 - alpha) * j1);
    }
    for k in 3..=n as usize {
        let kf = k as f64;
        let next = (2.0 * kf - 3.0 - alpha) * j[k - 2] + 2.0 * alpha * (kf - 2.0) * j[k - 3];
        j.push(next);
    }
    j
}

/// Jₙ = Iₙ·e^{α/2} by direct quadrature, substituting z = √α + u.
pub(crate) fn scaled_i_quadrature(n: u32, alpha: f64) -> Result<f64> {
    let a = alpha.sqrt();
    let p = (n - 1) as i32;
    let f = |u: f64| {
        let w = u * (u + 2.0 * a); // z² − α
        w.powi(p) * (-0.5 * w).exp()
    };
    let nf = n as f64;
    let scale = 1.0 / (1.0 / (2.0 * nf).sqrt() + a / nf);
    let opts = QuadOptions::rel(1e-13).with_abs_tol(1e-300);
    Ok(integrate_semi_infinite_with(f, 0.0, scale, &opts)?.value)
}

/// ln Jₙ(α) = ln Iₙ(α) + α/2, recurrence cross-checked against quadrature.
fn ln_scaled_i(n: u32, alpha: f64) -> Result<f64> {
    let rec = *scaled_i_recurrence(n, alpha).last().expect("n >= 1");
    if n == 1 {
        return Ok(rec.ln());
    }
    let quad = scaled_i_quadrature(n, alpha)?;
    if rec > 0.0 && ((rec - quad) / quad).abs() <= RECURRENCE_CHECK_TOL {
        Ok(rec.ln())
    } else {
        Ok(quad.ln())
    }
}

/// Iₙ(α) = ∫_{√α}^∞ (z² − α)ⁿ⁻¹ e^{−z²/2} dz.
pub fn i_n(n: u32, alpha: f64) -> Result<f64> {
    check_n(n)?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be finite and nonnegative",
        });
    }
    Ok((ln_scaled_i(n, alpha)? - 0.5 * alpha).exp())
}

/// ln of the unscaled constant cₖ(α) normalizing exp(−αx²/2)/(1 + x²)ᵏ.
///
/// k = 0 is the normal constant and k = −1 normalizes (1 + x²)e^{−αx²/2};
/// both enter the moment formulas.
fn ln_unscaled_c(k: i32, alpha: f64) -> Result<f64> {
    match k {
        -1 => Ok(0.5 * (alpha / (2.0 * PI)).ln() - (1.0 / alpha).ln_1p()),
        0 => Ok(0.5 * (alpha / (2.0 * PI)).ln()),
        k if k >= 1 => {
            let n = k as u32;
            check_n(n)?;
            let kf = k as f64;
            Ok((kf - 1.0) * std::f64::consts::LN_2 + ln_gamma(kf) - LN_SQRT_2PI - ln_scaled_i(n, alpha)?)
        }
        _ => unreachable!("degree below -1"),
    }
}

/// ln of the constant normalizing the rescaled density
/// √(1−β)·cₙ·exp(−βx²/2)/(1 + (1−β)x²)ⁿ, i.e. ln(√(1−β)·cₙ(α)).
pub fn log_cn(n: u32, beta: f64) -> Result<f64> {
    check_n(n)?;
    check_beta(beta)?;
    if beta >= NORMAL_LIMIT_BETA {
        return Ok(-LN_SQRT_2PI);
    }
    if beta == 0.0 {
        return Ok(student_t_constant(n));
    }
    let alpha = beta / (1.0 - beta);
    Ok(0.5 * (-beta).ln_1p() + ln_unscaled_c(n as i32, alpha)?)
}

/// ln of Γ(n)/(√π Γ(n − 1/2)), the constant of (1 + x²)⁻ⁿ.
fn student_t_constant(n: u32) -> f64 {
    let nf = n as f64;
    ln_gamma(nf) - 0.5 * PI.ln() - ln_gamma(nf - 0.5)
}

/// Moments of X = U/√(1−β) from quadrature moments of the unscaled U.
/// Above α = 20 the constant-ratio formulas lose about α² ulps in E(X⁴).
fn quadrature_moments(n: u32, alpha: f64, om: f64) -> Result<Moments> {
    let u = crate::nt::standard_moments(alpha, n as f64)?;
    Ok(Moments::new(u.m2 / om, u.m4 / (om * om)))
}

/// Central moments of the standardized NC(n) law for any supported n.
///
/// With unscaled constants, E(U²) = cₙ/cₙ₋₁ − 1 and
/// E(U⁴) = cₙ/cₙ₋₂ − 2cₙ/cₙ₋₁ + 1; X = U/√(1−β). For α > 20 the moments
/// are integrated directly.
pub fn central_moments(n: u32, beta: f64) -> Result<Moments> {
    check_n(n)?;
    check_beta(beta)?;
    // At β = 0 the law is a t with 2n − 1 degrees of freedom.
    if beta == 0.0 && n <= 2 {
        return Err(Error::DivergentMoment("NC(1) and NC(2) kurtosis diverge at beta = 0"));
    }
    if beta >= NORMAL_LIMIT_BETA {
        return Ok(Moments::new(1.0, 3.0));
    }
    let alpha = beta / (1.0 - beta);
    let om = 1.0 - beta;
    if alpha > CLOSED_FORM_MAX_ALPHA {
        return quadrature_moments(n, alpha, om);
    }
    let k = n as i32;
    let cn = ln_unscaled_c(k, alpha)?;
    let r1 = (cn - ln_unscaled_c(k - 1, alpha)?).exp();
    let r2 = (cn - ln_unscaled_c(k - 2, alpha)?).exp();
    Ok(Moments::new((r1 - 1.0) / om, (r2 - 2.0 * r1 + 1.0) / (om * om)))
}

/// NC(2) moments in the published closed form:
/// E(X²) = (c₂/c₁ − 1)/(1 − β),
/// E(X⁴) = (1 − 2c₂/c₁)/(1 − β)² + √(2π/β)·c₂/(1 − β)^{3/2},
/// integrated directly for α > 20.
pub fn nc2_moments(beta: f64) -> Result<Moments> {
    check_beta(beta)?;
    if beta == 0.0 {
        return Err(Error::DivergentMoment("NC(2) kurtosis diverges at beta = 0"));
    }
    if beta >= NORMAL_LIMIT_BETA {
        return Ok(Moments::new(1.0, 3.0));
    }
    let alpha = beta / (1.0 - beta);
    let om = 1.0 - beta;
    if alpha > CLOSED_FORM_MAX_ALPHA {
        return quadrature_moments(2, alpha, om);
    }
    let ln_c1 = ln_unscaled_c(1, alpha)?;
    let ln_c2 = ln_unscaled_c(2, alpha)?;
    let ratio = (ln_c2 - ln_c1).exp();
    let m2 = (ratio - 1.0) / om;
    let m4 = (1.0 - 2.0 * ratio) / (om * om) + (2.0 * PI / beta).sqrt() * ln_c2.exp() / om.powf(1.5);
    Ok(Moments::new(m2, m4))
}

/// Parameters of an NC(n) law with its constant computed at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcnParams {
    n: u32,
    mu: f64,
    s: f64,
    beta: f64,
    log_cn: f64,
}

impl NcnParams {
    pub fn new(n: u32, mu: f64, s: f64, beta: f64) -> Result<Self> {
        check_finite("mu", mu)?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "scale must be positive and finite",
            });
        }
        Ok(Self {
            n,
            mu,
            s,
            beta,
            log_cn: log_cn(n, beta)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
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

    /// Degrees of freedom of the t factor, ν = 2n − 1.
    pub fn nu(&self) -> u32 {
        2 * self.n - 1
    }

    pub fn log_cn(&self) -> f64 {
        self.log_cn
    }

    pub fn is_normal_limit(&self) -> bool {
        self.beta >= NORMAL_LIMIT_BETA
    }

    pub(crate) fn log_pdf_std(&self, x: f64) -> f64 {
        if self.is_normal_limit() {
            return -LN_SQRT_2PI - 0.5 * x * x;
        }
        self.log_cn - 0.5 * self.beta * x * x - self.n as f64 * ((1.0 - self.beta) * x * x).ln_1p()
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        self.log_pdf_std((y - self.mu) / self.s) - self.s.ln()
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    fn upper_tail_std(&self, t: f64) -> f64 {
        if self.is_normal_limit() {
            return std_normal_cdf(-t);
        }
        let split = 1.0 / (1.0 - self.beta).sqrt();
        upper_tail(|x| self.log_pdf_std(x).exp(), t, split, None, self.beta)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        cdf_from_tail(|t| self.upper_tail_std(t), (y - self.mu) / self.s)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        let guess = (PI * (p - 0.5)).tan();
        let x = quantile_from_tail(|t| self.upper_tail_std(t), p, guess)?;
        Ok(self.mu + self.s * x)
    }

    pub fn moments(&self) -> Result<Moments> {
        Ok(central_moments(self.n, self.beta)?.scaled(self.s))
    }

    /// One draw by t-proposal rejection.
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sample_with_proposals(rng).0
    }

    /// A draw together with the number of t proposals it consumed.
    ///
    /// The t[2n−1] proposal is rescaled by 1/√((2n−1)(1−β)) and accepted with
    /// probability exp(−βx²/2).
    pub fn sample_with_proposals<R: RandomSource + ?Sized>(&self, rng: &mut R) -> (f64, u64) {
        if self.is_normal_limit() {
            return (self.mu + self.s * rng.normal(), 1);
        }
        let nu = self.nu() as f64;
        let rescale = 1.0 / (nu * (1.0 - self.beta)).sqrt();
        let mut proposals = 0;
        loop {
            proposals += 1;
            let x = sample_student_t(nu, rng) * rescale;
            let u = rng.uniform();
            if u < (-0.5 * self.beta * x * x).exp() {
                return (self.mu + self.s * x, proposals);
            }
        }
    }

    /// Probability that one t proposal is accepted: cₙ(0)/cₙ(α).
    pub fn acceptance_rate(&self) -> f64 {
        if self.is_normal_limit() {
            return 1.0;
        }
        (student_t_constant(self.n) + 0.5 * (-self.beta).ln_1p() - self.log_cn).exp()
    }
}

/// Standard Student-t draw with `nu` degrees of freedom by Bailey's polar
/// method.
pub fn sample_student_t<R: RandomSource + ?Sized>(nu: f64, rng: &mut R) -> f64 {
    loop {
        let u = 2.0 * rng.uniform() - 1.0;
        let v = 2.0 * rng.uniform() - 1.0;
        let w = u * u + v * v;
        if w > 0.0 && w <= 1.0 {
            // w^{−2/ν} − 1 without cancellation for large ν
            let c2 = (-2.0 * w.ln() / nu).exp_m1();
            return u * (nu * c2 / w).sqrt();
        }
    }
}
