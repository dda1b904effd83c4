use crate::error::{check_finite, Error, Result};
use crate::nc1::{self, Nc1Params, NORMAL_LIMIT_BETA};
use crate::random::RandomSource;
use crate::specfun::exp_integral_e1_scaled;

/// Two-piece NC(1): scale `s1` left of the junction μ and `s2` right of it.
///
/// f(y) = 2k/(s₁+s₂) · g((y−μ)/sᵢ) with g the NC(1) kernel and k = c₁, so
/// density and first derivative are continuous at μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPieceParams {
    mu: f64,
    s1: f64,
    s2: f64,
    core: Nc1Params,
}

impl TwoPieceParams {
    pub fn new(mu: f64, s1: f64, s2: f64, beta: f64) -> Result<Self> {
        check_finite("mu", mu)?;
        for (name, s) in [("s1", s1), ("s2", s2)] {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    value: s,
                    reason: "scale must be positive and finite",
                });
            }
        }
        Ok(Self {
            mu,
            s1,
            s2,
            core: Nc1Params::standard(beta)?,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn s2(&self) -> f64 {
        self.s2
    }

    pub fn beta(&self) -> f64 {
        self.core.beta()
    }

    fn side_scale(&self, y: f64) -> f64 {
        if y <= self.mu {
            self.s1
        } else {
            self.s2
        }
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        let s = self.side_scale(y);
        // ln{2/(s₁+s₂)} + ln c₁ + kernel, written through the unit-scale pdf.
        std::f64::consts::LN_2 - (self.s1 + self.s2).ln() + self.core.log_pdf_std((y - self.mu) / s)
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    pub fn cdf(&self, y: f64) -> f64 {
        let total = self.s1 + self.s2;
        if y <= self.mu {
            2.0 * self.s1 / total * self.core.cdf((y - self.mu) / self.s1)
        } else {
            self.s1 / total + 2.0 * self.s2 / total * (self.core.cdf((y - self.mu) / self.s2) - 0.5)
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain {
                function: "quantile (p in (0, 1))",
                value: p,
            });
        }
        let below = self.prob_below_mu();
        let total = self.s1 + self.s2;
        if p <= below {
            let q = p * total / (2.0 * self.s1);
            Ok(self.mu + self.s1 * self.core.quantile(q)?)
        } else {
            let q = 0.5 + (p - below) * total / (2.0 * self.s2);
            Ok(self.mu + self.s2 * self.core.quantile(q.min(1.0 - f64::EPSILON))?)
        }
    }

    /// P(Y ≤ μ) = s₁/(s₁ + s₂).
    pub fn prob_below_mu(&self) -> f64 {
        self.s1 / (self.s1 + self.s2)
    }

    /// E(Y) = μ + k(s₂ − s₁)e^b E₁(b)/(1 − β) with b = β/{2(1 − β)}.
    pub fn mean(&self) -> Result<f64> {
        let beta = self.beta();
        if beta == 0.0 {
            return Err(Error::DivergentMoment("two-piece mean diverges at beta = 0"));
        }
        if beta >= NORMAL_LIMIT_BETA {
            let half_normal_mean = (2.0 / std::f64::consts::PI).sqrt();
            return Ok(self.mu + (self.s2 - self.s1) * half_normal_mean);
        }
        let om = 1.0 - beta;
        let b = beta / (2.0 * om);
        let k = self.core.log_c1().exp();
        Ok(self.mu + k * (self.s2 - self.s1) * exp_integral_e1_scaled(b)? / om)
    }

    /// E{(Y − μ)²} = (s₁³ + s₂³)/(s₁ + s₂) · E(X²) for X standard NC(1).
    pub fn second_moment_about_mu(&self) -> Result<f64> {
        let m2 = nc1::central_moments(self.beta())?.m2;
        Ok((self.s1.powi(3) + self.s2.powi(3)) / (self.s1 + self.s2) * m2)
    }

    /// Picks a side with probability s₁/(s₁+s₂), then scales a half NC(1)
    /// draw by that side's scale.
    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> f64 {
        let left = rng.uniform() < self.prob_below_mu();
        let x = nc1::sample_standard(self.beta(), rng).abs();
        if left {
            self.mu - self.s1 * x
        } else {
            self.mu + self.s2 * x
        }
    }
}
