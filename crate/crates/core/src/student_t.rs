//! Location-scale Student t, the baseline the NC family is compared against.

use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::ncn::sample_student_t;
use crate::random::RandomSource;
use crate::specfun::ln_gamma_half_ratio;
use crate::symmetric::{cdf_from_tail, quantile_from_tail};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentTParams {
    mu: f64,
    s: f64,
    nu: f64,
    log_const: f64,
}

impl StudentTParams {
    pub fn new(mu: f64, s: f64, nu: f64) -> Result<Self> {
        check_finite("mu", mu)?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "scale must be positive and finite",
            });
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "nu",
                value: nu,
                reason: "degrees of freedom must be positive and finite",
            });
        }
        let log_const = ln_gamma_half_ratio(0.5 * nu) - 0.5 * (nu * PI).ln();
        Ok(Self { mu, s, nu, log_const })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        let x = (y - self.mu) / self.s;
        self.log_const - self.s.ln() - 0.5 * (self.nu + 1.0) * (x * x / self.nu).ln_1p()
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    /// P(T > t) = I_{ν/(ν+t²)}(ν/2, 1/2) / 2 for t ≥ 0.
    fn upper_tail_std(&self, t: f64) -> f64 {
        let x = self.nu / (self.nu + t * t);
        0.5 * statrs::function::beta::beta_reg(0.5 * self.nu, 0.5, x)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        cdf_from_tail(|t| self.upper_tail_std(t), (y - self.mu) / self.s)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        let guess = (PI * (p - 0.5)).tan();
        let x = quantile_from_tail(|t| self.upper_tail_std(t), p, guess)?;
        Ok(self.mu + self.s * x)
    }

    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        self.mu + self.s * sample_student_t(self.nu, rng)
    }

    /// Excess kurtosis 6/(ν − 4), infinite for ν ≤ 4.
    pub fn excess_kurtosis(&self) -> f64 {
        if self.nu > 4.0 {
            6.0 / (self.nu - 4.0)
        } else {
            f64::INFINITY
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_case() {
        let t = StudentTParams::new(0.0, 1.0, 1.0).unwrap();
        assert!((t.pdf(0.0) - 1.0 / PI).abs() < 1e-15);
        assert!((t.cdf(1.0) - 0.75).abs() < 1e-14);
        assert!((t.quantile(0.75).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(StudentTParams::new(0.0, 0.0, 3.0).is_err());
        assert!(StudentTParams::new(0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn kurtosis() {
        assert_eq!(StudentTParams::new(0.0, 1.0, 5.0).unwrap().excess_kurtosis(), 6.0);
        assert!(StudentTParams::new(0.0, 1.0, 3.0).unwrap().excess_kurtosis().is_infinite());
    }
}
