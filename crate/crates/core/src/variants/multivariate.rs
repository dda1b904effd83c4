use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::linalg::cholesky;
use crate::nc1::sample_truncated_normal;
use crate::random::RandomSource;
use crate::specfun::{exp_integral_e1, log_std_normal_cdf, LN_SQRT_2PI};

/// Multivariate NC law in p ∈ {2, 3} dimensions.
///
/// X | z ~ N(μ, V/z²) with mixing density g(z) = c_z e^{−z²/2}/z^{p−1} on
/// z ≥ √α, which integrates to
///
/// ```text
/// f(x) = c_z (2π)^{−p/2} |V|^{−1/2} exp{−α(1 + A)/2} / (1 + A),
/// A    = (x − μ)ᵀ V⁻¹ (x − μ).
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct MultiNcParams {
    alpha: f64,
    mu: Vec<f64>,
    v: Vec<f64>,
    chol: Vec<f64>,
    log_c: f64,
    log_cz: f64,
}

impl MultiNcParams {
    /// `v` is the p×p matrix in row-major order.
    pub fn new(alpha: f64, mu: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let p = mu.len();
        if !(p == 2 || p == 3) {
            return Err(Error::DimensionMismatch { expected: 2, got: p });
        }
        if v.len() != p * p {
            return Err(Error::DimensionMismatch {
                expected: p * p,
                got: v.len(),
            });
        }
        for &m in &mu {
            check_finite("mu", m)?;
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "must be positive and finite",
            });
        }
        for i in 0..p {
            for j in 0..i {
                if (v[i * p + j] - v[j * p + i]).abs() > 1e-12 * (v[i * p + j].abs() + v[j * p + i].abs()) {
                    return Err(Error::NotPositiveDefinite);
                }
            }
        }
        let chol = cholesky(&v, p)?;
        let log_det: f64 = (0..p).map(|i| 2.0 * chol[i * p + i].ln()).sum();
        let log_cz = log_mixing_constant(p, alpha)?;
        let log_c = log_cz - p as f64 * LN_SQRT_2PI - 0.5 * log_det;
        Ok(Self {
            alpha,
            mu,
            v,
            chol,
            log_c,
            log_cz,
        })
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    /// ln c_z, the log normalizer of the mixing density.
    pub fn log_mixing_constant(&self) -> f64 {
        self.log_cz
    }

    /// Mahalanobis form A = (x − μ)ᵀV⁻¹(x − μ) via the Cholesky factor.
    fn quadratic_form(&self, x: &[f64]) -> f64 {
        let p = self.dim();
        let mut w = [0.0; 3];
        let mut a = 0.0;
        for i in 0..p {
            let mut r = x[i] - self.mu[i];
            for (j, wj) in w.iter().enumerate().take(i) {
                r -= self.chol[i * p + j] * wj;
            }
            w[i] = r / self.chol[i * p + i];
            a += w[i] * w[i];
        }
        a
    }

    pub fn log_pdf(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let a = self.quadratic_form(x);
        Ok(self.log_c - 0.5 * self.alpha * (1.0 + a) - a.ln_1p())
    }

    pub fn pdf(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }

    /// E(1/z²) = {c_z e^{−α/2}/α^{p/2} − 1}/p, so that Σ = V·E(1/z²).
    pub fn covariance_multiplier(&self) -> f64 {
        let p = self.dim() as f64;
        ((self.log_cz - 0.5 * self.alpha - 0.5 * p * self.alpha.ln()).exp() - 1.0) / p
    }

    /// Covariance matrix, row-major.
    pub fn covariance(&self) -> Vec<f64> {
        let m = self.covariance_multiplier();
        self.v.iter().map(|v| v * m).collect()
    }

    /// Draws z from g by rejection against a truncated normal (acceptance
    /// (√α/z)^{p−1}), then x = μ + L·N/z.
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let p = self.dim();
        let a = self.alpha.sqrt();
        let z = loop {
            let z = sample_truncated_normal(a, rng);
            if rng.uniform() <= (a / z).powi(p as i32 - 1) {
                break z;
            }
        };
        let n: Vec<f64> = (0..p).map(|_| rng.normal()).collect();
        (0..p)
            .map(|i| {
                let ln: f64 = (0..=i).map(|j| self.chol[i * p + j] * n[j]).sum();
                self.mu[i] + ln / z
            })
            .collect()
    }
}

/// ln c_z: 2/E₁(α/2) for p = 2 and 1/{e^{−α/2}/√α − √(2π)Φ(−√α)} for p = 3.
fn log_mixing_constant(p: usize, alpha: f64) -> Result<f64> {
    match p {
        2 => Ok(std::f64::consts::LN_2 - exp_integral_e1(0.5 * alpha)?.ln()),
        3 => {
            let first = -0.5 * alpha - 0.5 * alpha.ln();
            let second = 0.5 * (2.0 * PI).ln() + log_std_normal_cdf(-alpha.sqrt());
            // ln(e^first − e^second) with first > second
            Ok(-(first + (-(second - first).exp()).ln_1p()))
        }
        _ => Err(Error::DimensionMismatch { expected: 2, got: p }),
    }
}
