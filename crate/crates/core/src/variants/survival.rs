use crate::error::{check_finite, Error, Result};
use crate::nc1::{check_beta, NORMAL_LIMIT_BETA};
use crate::numerics::{find_root, integrate, integrate_semi_infinite_with, QuadOptions, CDF_REL_TOL};
use crate::random::RandomSource;
use crate::specfun::ln_upper_incomplete_gamma;

/// Survival-tail law on x ≥ 0:
///
/// ```text
/// f(x) = c · exp(−βx) / {1 + (1 − β)x}^γ,
/// c    = (1 − β) e^{−a} a^{1−γ} / Γ(1 − γ, a),   a = β/(1 − β),
/// ```
///
/// applied to y/scale. β = 0 is Lomax, β = 1 exponential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvTailParams {
    beta: f64,
    gamma: f64,
    scale: f64,
    log_c: f64,
}

impl SurvTailParams {
    pub fn new(beta: f64, gamma: f64, scale: f64) -> Result<Self> {
        check_beta(beta)?;
        check_finite("gamma", gamma)?;
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: scale,
                reason: "must be positive and finite",
            });
        }
        Ok(Self {
            beta,
            gamma,
            scale,
            log_c: log_c(beta, gamma)?,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn log_c(&self) -> f64 {
        self.log_c
    }

    fn log_pdf_std(&self, x: f64) -> f64 {
        if x < 0.0 {
            return f64::NEG_INFINITY;
        }
        if self.beta >= NORMAL_LIMIT_BETA {
            return -x;
        }
        self.log_c - self.beta * x - self.gamma * ((1.0 - self.beta) * x).ln_1p()
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        self.log_pdf_std(y / self.scale) - self.scale.ln()
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    /// P(Y > y).
    pub fn sf(&self, y: f64) -> f64 {
        let x = y / self.scale;
        if x <= 0.0 {
            return 1.0;
        }
        if self.beta >= NORMAL_LIMIT_BETA {
            return (-x).exp();
        }
        let pdf = |t: f64| self.log_pdf_std(t).exp();
        if x < 1.0 {
            return 1.0 - integrate(pdf, 0.0, x, CDF_REL_TOL).map_or(f64::NAN, |q| q.value);
        }
        let rate = self.beta + self.gamma.max(0.0) * (1.0 - self.beta) / (1.0 + (1.0 - self.beta) * x);
        let scale = (1.0 / rate.max(1e-12)).min(1e6 * x);
        let opts = QuadOptions::rel(CDF_REL_TOL).with_abs_tol(1e-300);
        integrate_semi_infinite_with(pdf, x, scale, &opts).map_or(f64::NAN, |q| q.value)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        1.0 - self.sf(y)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain {
                function: "quantile (p in (0, 1))",
                value: p,
            });
        }
        let target = 1.0 - p;
        let mut hi = self.scale;
        while self.sf(hi) > target {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::Domain {
                    function: "quantile (bracket)",
                    value: p,
                });
            }
        }
        find_root(|y| self.sf(y) - target, 0.0, hi, 1e-12 * hi)
    }

    /// Draw by inverting the distribution function.
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        self.quantile(rng.uniform())
    }
}

/// ln c(β, γ) for the standardized survival-tail density.
pub(crate) fn log_c(beta: f64, gamma: f64) -> Result<f64> {
    if beta >= NORMAL_LIMIT_BETA {
        return Ok(0.0);
    }
    if beta == 0.0 {
        if gamma <= 1.0 {
            return Err(Error::NotNormalizable(format!(
                "beta = 0 requires gamma > 1, got gamma = {gamma}"
            )));
        }
        return Ok((gamma - 1.0).ln());
    }
    let a = beta / (1.0 - beta);
    Ok((-beta).ln_1p() - a + (1.0 - gamma) * a.ln() - ln_upper_incomplete_gamma(1.0 - gamma, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        let exp = SurvTailParams::new(1.0, 3.0, 1.0).unwrap();
        assert!((exp.pdf(0.7) - (-0.7f64).exp()).abs() < 1e-15);
        let lomax = SurvTailParams::new(0.0, 2.0, 1.0).unwrap();
        assert!((lomax.pdf(1.5) - 1.0 / 6.25).abs() < 1e-15);
        assert!((lomax.cdf(1.0) - 0.5).abs() < 1e-9);
        assert!(SurvTailParams::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        let p = SurvTailParams::new(0.4, 1.5, 2.0).unwrap();
        for &q in &[0.1, 0.5, 0.99] {
            let y = p.quantile(q).unwrap();
            assert!((p.cdf(y) - q).abs() < 1e-9);
        }
    }
}
