//! The four-parameter N-t law
//!
//! ```text
//! f(x) = c(α, γ) · exp(−αx²/2) / (1 + x²)^γ,   Y = μ + s·X,
//! ```
//!
//! with real tail exponent γ = (ν + 1)/2. γ = n recovers NC(n) in its
//! unscaled form, α = 0 a rescaled Student t, γ = 0 the normal and γ < 0
//! short-tailed laws.

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{check_finite, Error, Result};
use crate::nc1::Moments;
use crate::ncn::sample_student_t;
use crate::numerics::{integrate, integrate_semi_infinite_with, QuadOptions, CONSTANT_REL_TOL};
use crate::random::RandomSource;
use crate::specfun::{bessel_k_scaled, ln_gamma_half_ratio};
use crate::symmetric::{cdf_from_tail, quantile_from_tail, upper_tail};

/// Grid size of the inversion table used for γ < 1/2.
const TABLE_POINTS: usize = 1024;

fn check_normalizable(alpha: f64, gamma: f64) -> Result<()> {
    check_finite("gamma", gamma)?;
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be finite and nonnegative",
        });
    }
    if alpha == 0.0 && gamma <= 0.5 {
        return Err(Error::NotNormalizable(format!(
            "alpha = 0 requires gamma > 1/2, got gamma = {gamma}"
        )));
    }
    Ok(())
}

/// Unnormalized log density −αx²/2 − γ ln(1 + x²).
fn log_kernel(alpha: f64, gamma: f64, x: f64) -> f64 {
    -0.5 * alpha * x * x - gamma * (x * x).ln_1p()
}

/// Location of the positive mode of the kernel (0 when unimodal).
fn kernel_mode(alpha: f64, gamma: f64) -> f64 {
    if alpha > 0.0 && gamma < -0.5 * alpha {
        (-2.0 * gamma / alpha - 1.0).sqrt()
    } else {
        0.0
    }
}

/// ∫ |x|ᵏ exp(kernel(x) − kernel(mode)) dx over the whole line.
fn shifted_kernel_moment(alpha: f64, gamma: f64, k: i32) -> Result<(f64, f64)> {
    let mode = kernel_mode(alpha, gamma);
    let h0 = log_kernel(alpha, gamma, mode);
    let scale = mode.max(1.0 / (alpha + 2.0 * gamma.max(0.0)).sqrt()).max(1e-3);
    let opts = QuadOptions::rel(CONSTANT_REL_TOL).with_abs_tol(1e-300);
    let f = |x: f64| x.powi(k) * (log_kernel(alpha, gamma, x) - h0).exp();
    let q = integrate_semi_infinite_with(f, 0.0, scale, &opts)?;
    Ok((2.0 * q.value, h0))
}

/// ln c(α, γ) by whole-line quadrature.
pub fn log_c_quadrature(alpha: f64, gamma: f64) -> Result<f64> {
    check_normalizable(alpha, gamma)?;
    let (integral, h0) = shifted_kernel_moment(alpha, gamma, 0)?;
    Ok(-(integral.ln() + h0))
}

/// ln c(α, γ), the log normalizing constant.
///
/// Closed forms cover γ = 0 (normal), α = 0 (Student t) and γ = 1/2
/// (c = e^{−α/4}/K₀(α/4)); everything else is integrated numerically.
pub fn log_c(alpha: f64, gamma: f64) -> Result<f64> {
    check_normalizable(alpha, gamma)?;
    if gamma == 0.0 {
        return Ok(0.5 * (alpha / (2.0 * PI)).ln());
    }
    if alpha == 0.0 {
        return Ok(ln_gamma_half_ratio(gamma - 0.5) - 0.5 * PI.ln());
    }
    if gamma == 0.5 {
        if let Ok(k) = bessel_k_scaled(0, 0.25 * alpha) {
            return Ok(-k.ln());
        }
    }
    log_c_quadrature(alpha, gamma)
}

/// Whether the density has a single mode at the origin.
///
/// d ln f/dx = −x{α + 2γ/(1 + x²)}, which keeps the sign of −x for all x
/// exactly when γ ≥ −α/2; below that the origin is a local minimum flanked
/// by two symmetric modes.
pub fn is_unimodal(alpha: f64, gamma: f64) -> bool {
    gamma >= -0.5 * alpha
}

/// Central moments of the standardized (μ = 0, s = 1) law.
pub fn standard_moments(alpha: f64, gamma: f64) -> Result<Moments> {
    check_normalizable(alpha, gamma)?;
    if alpha == 0.0 {
        // X = T/√ν with ν = 2γ − 1.
        let nu = 2.0 * gamma - 1.0;
        if nu <= 4.0 {
            return Err(Error::DivergentMoment(
                "fourth moment needs nu > 4 when alpha = 0",
            ));
        }
        return Ok(Moments::new(
            1.0 / (nu - 2.0),
            3.0 / ((nu - 2.0) * (nu - 4.0)),
        ));
    }
    if gamma == 0.0 {
        return Ok(Moments::new(1.0 / alpha, 3.0 / (alpha * alpha)));
    }
    let (z0, _) = shifted_kernel_moment(alpha, gamma, 0)?;
    let (z2, _) = shifted_kernel_moment(alpha, gamma, 2)?;
    let (z4, _) = shifted_kernel_moment(alpha, gamma, 4)?;
    Ok(Moments::new(z2 / z0, z4 / z0))
}

/// Cumulative table of G(x) = ∫₀ˣ f for inversion sampling.
#[derive(Debug)]
struct InversionTable {
    x: Vec<f64>,
    g: Vec<f64>,
}

/// Location, scale, truncation rate α and tail exponent γ of an N-t law.
#[derive(Clone)]
pub struct NtParams {
    mu: f64,
    s: f64,
    alpha: f64,
    gamma: f64,
    log_c: f64,
    table: Arc<OnceLock<InversionTable>>,
}

impl fmt::Debug for NtParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NtParams")
            .field("mu", &self.mu)
            .field("s", &self.s)
            .field("alpha", &self.alpha)
            .field("gamma", &self.gamma)
            .field("log_c", &self.log_c)
            .finish()
    }
}

impl PartialEq for NtParams {
    fn eq(&self, other: &Self) -> bool {
        self.mu == other.mu && self.s == other.s && self.alpha == other.alpha && self.gamma == other.gamma
    }
}

impl NtParams {
    pub fn new(mu: f64, s: f64, alpha: f64, gamma: f64) -> Result<Self> {
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
            alpha,
            gamma,
            log_c: log_c(alpha, gamma)?,
            table: Arc::new(OnceLock::new()),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// β = α/(1 + α).
    pub fn beta(&self) -> f64 {
        self.alpha / (1.0 + self.alpha)
    }

    /// ν = 2γ − 1.
    pub fn nu(&self) -> f64 {
        2.0 * self.gamma - 1.0
    }

    pub fn log_c(&self) -> f64 {
        self.log_c
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(self.alpha, self.gamma)
    }

    pub(crate) fn log_pdf_std(&self, x: f64) -> f64 {
        self.log_c + log_kernel(self.alpha, self.gamma, x)
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        self.log_pdf_std((y - self.mu) / self.s) - self.s.ln()
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    fn upper_tail_std(&self, t: f64) -> f64 {
        let split = kernel_mode(self.alpha, self.gamma).max(1.0);
        upper_tail(|x| self.log_pdf_std(x).exp(), t, split, None, self.alpha)
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
        Ok(standard_moments(self.alpha, self.gamma)?.scaled(self.s))
    }

    /// One draw.
    ///
    /// γ > 1/2 rejects t proposals with ν = 2γ − 1, γ = 0 is an exact normal
    /// draw and every other γ inverts a tabulated distribution function.
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        self.mu + self.s * self.sample_std(rng)
    }

    fn sample_std<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.gamma == 0.0 {
            return rng.normal() / self.alpha.sqrt();
        }
        if self.gamma > 0.5 {
            let nu = self.nu();
            let rescale = 1.0 / nu.sqrt();
            loop {
                let x = sample_student_t(nu, rng) * rescale;
                if rng.uniform() < (-0.5 * self.alpha * x * x).exp() {
                    return x;
                }
            }
        }
        self.sample_by_inversion(rng)
    }

    /// Inversion of the tabulated distribution function, refined by Newton
    /// steps on the exact density.
    pub fn sample_by_inversion<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        let table = self.table.get_or_init(|| self.build_table());
        let u = rng.uniform();
        let (target, sign) = if u < 0.5 { (0.5 - u, -1.0) } else { (u - 0.5, 1.0) };
        sign * self.invert_half(table, target)
    }

    fn build_table(&self) -> InversionTable {
        let mode = kernel_mode(self.alpha, self.gamma);
        let peak = self.log_pdf_std(mode);
        let mut xmax = mode + 1.0 / self.alpha.sqrt().max(1e-3);
        while self.log_pdf_std(xmax) > peak - 50.0 {
            xmax *= 1.5;
        }
        let pdf = |x: f64| self.log_pdf_std(x).exp();
        let mut x = Vec::with_capacity(TABLE_POINTS + 1);
        let mut g = Vec::with_capacity(TABLE_POINTS + 1);
        x.push(0.0);
        g.push(0.0);
        let h = xmax / TABLE_POINTS as f64;
        for i in 1..=TABLE_POINTS {
            let (a, b) = ((i - 1) as f64 * h, i as f64 * h);
            let piece = integrate(pdf, a, b, 1e-13).map(|q| q.value).unwrap_or(0.0);
            x.push(b);
            g.push(g[i - 1] + piece);
        }
        InversionTable { x, g }
    }

    fn invert_half(&self, table: &InversionTable, target: f64) -> f64 {
        let last = table.g.len() - 1;
        if target >= table.g[last] {
            return table.x[last];
        }
        let i = table.g.partition_point(|&g| g <= target).clamp(1, last) - 1;
        let (x0, x1) = (table.x[i], table.x[i + 1]);
        let (g0, g1) = (table.g[i], table.g[i + 1]);
        let pdf = |x: f64| self.log_pdf_std(x).exp();
        let mut x = x0 + (x1 - x0) * (target - g0) / (g1 - g0);
        for _ in 0..20 {
            let mass = if x > x0 {
                integrate(pdf, x0, x, 1e-13).map(|q| q.value).unwrap_or(0.0)
            } else {
                0.0
            };
            let step = (g0 + mass - target) / pdf(x);
            let next = (x - step).clamp(x0, x1);
            if (next - x).abs() <= 1e-14 * x1 {
                return next;
            }
            x = next;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc1;
    use crate::random::seeded;

    #[test]
    fn closed_forms_agree_with_quadrature() {
        for &a in &[0.5, 1.0, 2.0, 4.0] {
            let closed = log_c(a, 0.5).unwrap();
            let quad = log_c_quadrature(a, 0.5).unwrap();
            assert!((closed - quad).abs() < 1e-9, "alpha {a}");
            let normal = log_c(a, 0.0).unwrap();
            assert!((normal - log_c_quadrature(a, 0.0).unwrap()).abs() < 1e-10);
        }
        let cauchy = log_c(0.0, 1.0).unwrap();
        assert!((cauchy + PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn gamma_one_is_unscaled_nc1() {
        // ln c₁(β) carries √(1−β) from the rescaling to unit scale.
        for &b in &[0.1, 0.5, 0.9] {
            let a = b / (1.0 - b);
            let expected = nc1::log_c1(b).unwrap() - 0.5 * (1.0f64 - b).ln();
            assert!((log_c(a, 1.0).unwrap() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn non_normalizable_rejected() {
        assert!(NtParams::new(0.0, 1.0, 0.0, 0.5).is_err());
        assert!(NtParams::new(0.0, 1.0, -1.0, 2.0).is_err());
        assert!(NtParams::new(0.0, 1.0, 1.0, 2.0).is_ok());
    }

    #[test]
    fn unimodality_predicate() {
        assert!(is_unimodal(1.0, 0.6));
        assert!(is_unimodal(2.0, -1.0));
        assert!(!is_unimodal(2.0, -1.5));
    }

    #[test]
    fn accessors() {
        let p = NtParams::new(0.0, 1.0, 1.0, 1.5).unwrap();
        assert_eq!(p.nu(), 2.0);
        assert_eq!(p.beta(), 0.5);
    }

    #[test]
    fn inversion_hits_table_quantiles() {
        let p = NtParams::new(0.0, 1.0, 1.0, -0.5).unwrap();
        let mut rng = seeded(3);
        let draws: Vec<f64> = (0..2000).map(|_| p.sample(&mut rng)).collect();
        let below = draws.iter().filter(|&&x| x < 0.0).count() as f64 / 2000.0;
        assert!((below - 0.5).abs() < 0.05);
        let q = p.quantile(0.9).unwrap();
        assert!((p.cdf(q) - 0.9).abs() < 1e-9);
    }
}
