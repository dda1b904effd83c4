//! Maximum-likelihood fitting with restarts, observed-information standard
//! errors and Hellinger-distance matching.

mod hellinger;
mod likelihood;
mod optimize;
mod start;

use rand_chacha::ChaCha20Rng;

use crate::dist::{DistParams, Family};
use crate::error::{Error, Result};
use crate::linalg::spd_inverse;
use crate::nt::NtParams;
use crate::random::{seeded, RandomSource, DEFAULT_SEED};
use optimize::{bfgs, nelder_mead, numeric_gradient, Objective};

pub use hellinger::{best_match_beta, hellinger_distance, BestMatch};
pub use likelihood::{nc1_grad_hess, neg_log_lik};
pub use start::{kurtosis_to_beta, start_values, DEFAULT_BETA, DEFAULT_NU};

/// Runs whose optimum is within this much of the best −ℓ count as agreeing.
pub const AGREEMENT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub seed: u64,
    /// Perturbed re-fits after the first run.
    pub n_restarts: usize,
    /// Bound on the largest gradient component of −ℓ/n in the optimizer's
    /// coordinates.
    pub tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            n_restarts: 5,
            tol: 1e-6,
        }
    }
}

/// Outcome of [`fit`].
#[derive(Debug, Clone)]
pub struct FitResult {
    pub family: Family,
    pub params: DistParams,
    pub neg_log_lik: f64,
    /// Start-value −ℓ of the first run.
    pub start_neg_log_lik: f64,
    /// Standard errors ordered as [`Family::param_names`]; absent when the
    /// observed information is not positive definite.
    pub std_errors: Option<Vec<f64>>,
    /// Observed information −∂²ℓ in the natural parameters, row-major.
    pub info_matrix: Option<Vec<f64>>,
    pub converged: bool,
    pub grad_norm: f64,
    pub n_obs: usize,
    /// Optimizer runs after the first: the perturbed restarts plus, for
    /// N-t, the run started from the t fit.
    pub restarts: usize,
    /// Runs, the first included, whose optimum is within
    /// [`AGREEMENT_TOL`] of the best −ℓ.
    pub restarts_agreeing: usize,
}

impl FitResult {
    pub fn param_names(&self) -> &'static [&'static str] {
        self.family.param_names()
    }

    /// Standard error of β = α/(1 + α) and of ν = 2γ − 1 for an N-t fit, by
    /// the delta method.
    pub fn nt_beta_nu_std_errors(&self) -> Option<(f64, f64)> {
        let (DistParams::Nt(p), Some(se)) = (&self.params, &self.std_errors) else {
            return None;
        };
        let a = p.alpha();
        Some((se[2] / ((1.0 + a) * (1.0 + a)), 2.0 * se[3]))
    }
}

/// Square roots of the diagonal of the inverse information matrix.
pub fn std_errors(info: &[f64], p: usize) -> Result<Vec<f64>> {
    if info.len() != p * p {
        return Err(Error::DimensionMismatch {
            expected: p * p,
            got: info.len(),
        });
    }
    let cov = spd_inverse(info, p)?;
    Ok((0..p).map(|i| cov[i * p + i].sqrt()).collect())
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

fn logistic(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

/// Unconstrained coordinates: ln for scales, ν and α; logit for β; γ and μ
/// as is.
fn to_theta(family: Family, v: &[f64]) -> Vec<f64> {
    match family {
        Family::StudentT => vec![v[0], v[1].ln(), v[2].ln()],
        Family::Nc1 | Family::Ncn(_) => vec![v[0], v[1].ln(), logit(v[2])],
        Family::Nt => vec![v[0], v[1].ln(), v[2].ln(), v[3]],
        Family::TwoPiece => vec![v[0], v[1].ln(), v[2].ln(), logit(v[3])],
        Family::SurvTail => unreachable!("not fitted"),
    }
}

fn from_theta(family: Family, t: &[f64]) -> Vec<f64> {
    match family {
        Family::StudentT => vec![t[0], t[1].exp(), t[2].exp()],
        Family::Nc1 | Family::Ncn(_) => vec![t[0], t[1].exp(), logistic(t[2])],
        Family::Nt => vec![t[0], t[1].exp(), t[2].exp(), t[3]],
        Family::TwoPiece => vec![t[0], t[1].exp(), t[2].exp(), logistic(t[3])],
        Family::SurvTail => unreachable!("not fitted"),
    }
}

/// d(natural)/dθ, which is diagonal.
fn jacobian(family: Family, v: &[f64]) -> Vec<f64> {
    match family {
        Family::StudentT => vec![1.0, v[1], v[2]],
        Family::Nc1 | Family::Ncn(_) => vec![1.0, v[1], v[2] * (1.0 - v[2])],
        Family::Nt => vec![1.0, v[1], v[2], 1.0],
        Family::TwoPiece => vec![1.0, v[1], v[2], v[3] * (1.0 - v[3])],
        Family::SurvTail => unreachable!("not fitted"),
    }
}

/// Index of the tail parameter used to break exact ties.
fn tail_index(family: Family) -> usize {
    match family {
        Family::TwoPiece => 3,
        _ => 2,
    }
}

/// −ℓ/n of standardized data as a function of θ.
struct ScaledNll<'a> {
    family: Family,
    data: &'a [f64],
}

impl ScaledNll<'_> {
    fn params(&self, theta: &[f64]) -> Option<DistParams> {
        if theta.iter().any(|t| !t.is_finite() || t.abs() > 50.0) {
            return None;
        }
        DistParams::from_values(self.family, &from_theta(self.family, theta)).ok()
    }
}

impl Objective for ScaledNll<'_> {
    fn value(&self, theta: &[f64]) -> f64 {
        match self.params(theta) {
            Some(p) => {
                let v = neg_log_lik(&p, self.data) / self.data.len() as f64;
                if v.is_finite() {
                    v
                } else {
                    f64::INFINITY
                }
            }
            None => f64::INFINITY,
        }
    }

    fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        if let (Family::Nc1, Some(DistParams::Nc1(p))) = (self.family, self.params(theta)) {
            if p.beta() > 0.0 && !p.is_normal_limit() {
                let (g, _) = nc1_grad_hess(&p, self.data);
                let j = jacobian(self.family, &[p.mu(), p.s(), p.beta()]);
                let n = self.data.len() as f64;
                return (0..3).map(|i| -g[i] * j[i] / n).collect();
            }
        }
        numeric_gradient(self, theta)
    }
}

/// Central-difference Hessian of an objective.
fn numeric_hessian<O: Objective>(obj: &O, x: &[f64]) -> Vec<f64> {
    let p = x.len();
    let h: Vec<f64> = x.iter().map(|v| 1e-4 * (1.0 + v.abs())).collect();
    let f0 = obj.value(x);
    let mut out = vec![0.0; p * p];
    let mut xp = x.to_vec();
    let at = |xp: &mut Vec<f64>, moves: &[(usize, f64)]| {
        for &(i, d) in moves {
            xp[i] += d;
        }
        let v = obj.value(xp);
        for &(i, d) in moves {
            xp[i] -= d;
        }
        v
    };
    for i in 0..p {
        let fp = at(&mut xp, &[(i, h[i])]);
        let fm = at(&mut xp, &[(i, -h[i])]);
        out[i * p + i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for j in 0..i {
            let fpp = at(&mut xp, &[(i, h[i]), (j, h[j])]);
            let fpm = at(&mut xp, &[(i, h[i]), (j, -h[j])]);
            let fmp = at(&mut xp, &[(i, -h[i]), (j, h[j])]);
            let fmm = at(&mut xp, &[(i, -h[i]), (j, -h[j])]);
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            out[i * p + j] = v;
            out[j * p + i] = v;
        }
    }
    out
}

/// One optimizer run: BFGS, a simplex polish, then BFGS again from the
/// polished point.
fn run_once(obj: &ScaledNll<'_>, theta0: &[f64], tol: f64) -> optimize::Minimum {
    let first = bfgs(obj, theta0, tol, 400);
    let (x_nm, f_nm) = nelder_mead(obj, &first.x, 0.02, 400 * theta0.len());
    let start = if f_nm < first.f { x_nm } else { first.x.clone() };
    let second = bfgs(obj, &start, tol, 200);
    if second.f <= first.f {
        second
    } else {
        first
    }
}

/// Affine map between the data and its standardized copy.
#[derive(Debug, Clone, Copy)]
struct Standardize {
    center: f64,
    spread: f64,
}

impl Standardize {
    /// Natural parameters of the original data from those of the
    /// standardized data, and back.
    fn to_original(&self, family: Family, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        out[0] = self.center + self.spread * v[0];
        for i in self.scale_indices(family) {
            out[i] = self.spread * v[i];
        }
        out
    }

    fn to_standard(&self, family: Family, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        out[0] = (v[0] - self.center) / self.spread;
        for i in self.scale_indices(family) {
            out[i] = v[i] / self.spread;
        }
        out
    }

    fn scale_indices(&self, family: Family) -> Vec<usize> {
        match family {
            Family::TwoPiece => vec![1, 2],
            _ => vec![1],
        }
    }
}

/// Fits `family` by maximum likelihood.
///
/// The data are standardized internally; the first run starts from
/// [`start_values`] and each restart perturbs the best parameters found so
/// far by up to ±20 % (seeded). For N-t the fitted t law, which is the α = 0
/// boundary of the N-t family, is always a candidate, so the N-t optimum is
/// never worse than the t optimum.
pub fn fit(family: Family, data: &[f64], opts: &FitOptions) -> Result<FitResult> {
    if family == Family::SurvTail {
        return Err(Error::InvalidParameter {
            name: "family",
            value: f64::NAN,
            reason: "the survival-tail law is evaluation-only",
        });
    }
    let k = family.param_names().len();
    let needed = 10.max(k + 1);
    if data.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: data.len(),
        });
    }
    if let Some(&bad) = data.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "observation",
            value: bad,
            reason: "observations must be finite",
        });
    }
    let start = start_values(family, data)?;
    let n = data.len() as f64;
    let center = data.iter().sum::<f64>() / n;
    let spread = (data.iter().map(|y| (y - center).powi(2)).sum::<f64>() / n).sqrt();
    let std = Standardize { center, spread };
    let z: Vec<f64> = data.iter().map(|y| (y - center) / spread).collect();
    let obj = ScaledNll { family, data: &z };
    let grad_tol = opts.tol;

    let mut starts = vec![to_theta(family, &std.to_standard(family, &start.values()))];
    let mut t_fit = None;
    if family == Family::Nt {
        // Near-boundary start taken from the t fit.
        let t = fit(Family::StudentT, data, opts)?;
        let tv = std.to_standard(Family::StudentT, &t.params.values());
        let nu = tv[2];
        starts.push(to_theta(family, &[tv[0], tv[1] * nu.sqrt(), 1e-3, 0.5 * (nu + 1.0)]));
        t_fit = Some(t);
    }

    let mut runs: Vec<optimize::Minimum> = starts.iter().map(|s| run_once(&obj, s, grad_tol)).collect();
    let mut rng: ChaCha20Rng = seeded(opts.seed);
    for _ in 0..opts.n_restarts {
        let best = best_run(family, &runs);
        let base = from_theta(family, &best.x);
        let perturbed: Vec<f64> = base
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let e = 0.2 * (2.0 * rng.uniform() - 1.0);
                if i == 0 {
                    v + e * base[1]
                } else {
                    v * (1.0 + e)
                }
            })
            .map(|v| v.clamp(-1e6, 1e6))
            .collect();
        let mut perturbed = perturbed;
        clamp_unit_params(family, &mut perturbed);
        runs.push(run_once(&obj, &to_theta(family, &perturbed), grad_tol));
    }
    let best = best_run(family, &runs).clone();
    let agreeing = runs.iter().filter(|r| (r.f - best.f).abs() * n <= AGREEMENT_TOL).count();

    let nat = std.to_original(family, &from_theta(family, &best.x));
    let mut params = DistParams::from_values(family, &nat)?;
    let mut nll = neg_log_lik(&params, data);
    let mut converged = best.grad_norm <= grad_tol;
    let mut grad_norm = best.grad_norm;
    let mut on_boundary = false;

    if let Some(t) = &t_fit {
        let tv = t.params.values();
        let boundary = NtParams::new(tv[0], tv[1] * tv[2].sqrt(), 0.0, 0.5 * (tv[2] + 1.0))?;
        let boundary_nll = neg_log_lik(&DistParams::Nt(boundary.clone()), data);
        if boundary_nll < nll {
            params = DistParams::Nt(boundary);
            nll = boundary_nll;
            converged = t.converged;
            grad_norm = t.grad_norm;
            on_boundary = true;
        }
    }

    let info = if on_boundary {
        None
    } else {
        observed_information(&obj, family, &params, &best.x, data, &std)
    };
    let std_errors = info.as_ref().and_then(|m| std_errors(m, k).ok());
    let start_nll = neg_log_lik(&start, data);

    Ok(FitResult {
        family,
        params,
        neg_log_lik: nll,
        start_neg_log_lik: start_nll,
        std_errors,
        info_matrix: info,
        converged,
        grad_norm,
        n_obs: data.len(),
        restarts: runs.len() - 1,
        restarts_agreeing: agreeing,
    })
}

fn clamp_unit_params(family: Family, v: &mut [f64]) {
    let unit = match family {
        Family::Nc1 | Family::Ncn(_) => Some(2),
        Family::TwoPiece => Some(3),
        _ => None,
    };
    if let Some(i) = unit {
        v[i] = v[i].clamp(1e-6, 1.0 - 1e-6);
    }
}

/// Lowest −ℓ; exact ties go to the smaller tail parameter.
fn best_run(family: Family, runs: &[optimize::Minimum]) -> &optimize::Minimum {
    let ti = tail_index(family);
    runs.iter()
        .min_by(|a, b| a.f.total_cmp(&b.f).then(a.x[ti].total_cmp(&b.x[ti])))
        .expect("at least one run")
}

/// −∂²ℓ in the natural parameters of the original data: analytic for
/// NC(1), otherwise a numeric Hessian in θ mapped through the diagonal
/// Jacobian (exact at a stationary point).
fn observed_information(
    obj: &ScaledNll<'_>,
    family: Family,
    params: &DistParams,
    theta: &[f64],
    data: &[f64],
    std: &Standardize,
) -> Option<Vec<f64>> {
    let k = theta.len();
    if let DistParams::Nc1(p) = params {
        if p.beta() > 0.0 && !p.is_normal_limit() {
            let (_, h) = nc1_grad_hess(p, data);
            return Some(h.iter().map(|v| -v).collect());
        }
    }
    let n = data.len() as f64;
    let h_theta = numeric_hessian(obj, theta);
    let nat_std = from_theta(family, theta);
    let j = jacobian(family, &nat_std);
    // Natural parameters of the original data scale μ and the scales by the
    // spread of the data.
    let mut d = vec![1.0; k];
    d[0] = std.spread;
    for i in std.scale_indices(family) {
        d[i] = std.spread;
    }
    let mut info = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            info[a * k + b] = n * h_theta[a * k + b] / (j[a] * d[a] * j[b] * d[b]);
        }
    }
    if info.iter().all(|v| v.is_finite()) {
        Some(info)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc1;

    #[test]
    fn identity_information_gives_unit_errors() {
        let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        assert_eq!(std_errors(&id, 3).unwrap(), vec![1.0, 1.0, 1.0]);
        assert!(std_errors(&[1.0, 2.0, 2.0, 1.0], 2).is_err());
    }

    #[test]
    fn constant_data_is_degenerate() {
        assert!(matches!(
            fit(Family::Nc1, &[2.0; 30], &FitOptions::default()),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn recovers_nc1_parameters() {
        let mut rng = seeded(11);
        let data: Vec<f64> = (0..2000).map(|_| 3.0 + 2.0 * nc1::sample_standard(0.3, &mut rng)).collect();
        let r = fit(Family::Nc1, &data, &FitOptions::default()).unwrap();
        assert!(r.converged, "{r:?}");
        let v = r.params.values();
        let se = r.std_errors.unwrap();
        assert!((v[0] - 3.0).abs() < 4.0 * se[0]);
        assert!((v[1] - 2.0).abs() < 4.0 * se[1]);
        assert!((v[2] - 0.3).abs() < 4.0 * se[2]);
    }
}
