//! The versioned JSON fit report.

use ncdist::dist::{DistParams, Family};
use ncdist::fit::FitResult;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

/// Parameter slots shared by all families; those a family lacks are null.
/// For nt, `beta` = α/(1 + α) and `nu` = 2γ − 1 are derived.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamSlots {
    pub mu: Option<f64>,
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<f64>,
    pub beta: Option<f64>,
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub n: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub schema: u32,
    pub family: String,
    pub params: ParamSlots,
    pub neg_log_likelihood: f64,
    /// Same slots as `params`; null when the observed information is not
    /// positive definite.
    pub std_errors: Option<ParamSlots>,
    pub converged: bool,
    pub n_obs: usize,
    pub seed: u64,
    pub restarts: usize,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

/// Places values ordered as `Family::param_names` into their slots.
fn slots(family: Family, v: &[f64]) -> ParamSlots {
    let f = |i: usize| finite(v[i]);
    let mut p = ParamSlots::default();
    match family {
        Family::StudentT => {
            (p.mu, p.s, p.nu) = (f(0), f(1), f(2));
        }
        Family::Nc1 | Family::Ncn(_) => {
            (p.mu, p.s, p.beta) = (f(0), f(1), f(2));
        }
        Family::Nt => {
            (p.mu, p.s, p.alpha, p.gamma) = (f(0), f(1), f(2), f(3));
        }
        Family::TwoPiece => {
            (p.mu, p.s, p.s2, p.beta) = (f(0), f(1), f(2), f(3));
        }
        Family::SurvTail => {
            (p.beta, p.gamma, p.s) = (f(0), f(1), f(2));
        }
    }
    p
}

impl FitReport {
    pub fn new(r: &FitResult, seed: u64) -> Self {
        let family = r.family;
        let mut params = slots(family, &r.params.values());
        let mut std_errors = r.std_errors.as_ref().map(|se| slots(family, se));
        match (&r.params, family) {
            (DistParams::Nt(p), _) => {
                params.beta = finite(p.beta());
                params.nu = finite(p.nu());
                if let (Some(se), Some((b, n))) = (std_errors.as_mut(), r.nt_beta_nu_std_errors()) {
                    se.beta = finite(b);
                    se.nu = finite(n);
                }
            }
            (_, Family::Nc1) => params.n = Some(1),
            (_, Family::Ncn(n)) => params.n = Some(n),
            _ => {}
        }
        Self {
            schema: SCHEMA,
            family: family.name().to_string(),
            params,
            neg_log_likelihood: r.neg_log_lik,
            std_errors,
            converged: r.converged,
            n_obs: r.n_obs,
            seed,
            restarts: r.restarts,
        }
    }

    /// Rebuilds the fitted distribution from the report.
    pub fn distribution(&self) -> Result<DistParams, CliError> {
        let family: Family = self.family.parse()?;
        let family = match (family, self.params.n) {
            (Family::Ncn(_), Some(1)) => Family::Nc1,
            (Family::Ncn(_), Some(n)) => Family::Ncn(n),
            (f, _) => f,
        };
        let p = &self.params;
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("report lacks params.{name}")));
        let values = match family {
            Family::StudentT => vec![need(p.mu, "mu")?, need(p.s, "s")?, need(p.nu, "nu")?],
            Family::Nc1 | Family::Ncn(_) => vec![need(p.mu, "mu")?, need(p.s, "s")?, need(p.beta, "beta")?],
            Family::Nt => vec![need(p.mu, "mu")?, need(p.s, "s")?, need(p.alpha, "alpha")?, need(p.gamma, "gamma")?],
            Family::TwoPiece => vec![need(p.mu, "mu")?, need(p.s, "s")?, need(p.s2, "s2")?, need(p.beta, "beta")?],
            Family::SurvTail => vec![need(p.beta, "beta")?, need(p.gamma, "gamma")?, need(p.s, "s")?],
        };
        Ok(DistParams::from_values(family, &values)?)
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("family              {}", self.family)];
        let p = &self.params;
        let se = self.std_errors.clone().unwrap_or_default();
        let named = [
            ("mu", p.mu, se.mu),
            ("s", p.s, se.s),
            ("s2", p.s2, se.s2),
            ("beta", p.beta, se.beta),
            ("nu", p.nu, se.nu),
            ("alpha", p.alpha, se.alpha),
            ("gamma", p.gamma, se.gamma),
        ];
        for (name, v, e) in named {
            if let Some(v) = v {
                let e = e.map(|e| format!("  (se {e:.6})")).unwrap_or_default();
                lines.push(format!("{name:<20}{v:.6}{e}"));
            }
        }
        if let Some(n) = p.n {
            lines.push(format!("{:<20}{n}", "n"));
        }
        lines.push(format!("{:<20}{:.4}", "-loglik", self.neg_log_likelihood));
        lines.push(format!("{:<20}{}", "converged", self.converged));
        lines.push(format!("{:<20}{}", "observations", self.n_obs));
        lines.push(format!("{:<20}{}", "seed", self.seed));
        lines.push(format!("{:<20}{}", "restarts", self.restarts));
        lines.join("\n")
    }
}
