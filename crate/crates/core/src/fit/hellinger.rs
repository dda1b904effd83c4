use crate::error::Result;
use crate::nc1::Nc1Params;
use crate::numerics::{integrate_real_line_with, minimize_scalar, QuadOptions};
use crate::student_t::StudentTParams;

/// H = √(1 − ∫√(f·g)) for two normalized log densities.
///
/// `center` and `scale` locate the bulk of the mass for the quadrature map.
pub fn hellinger_distance<F, G>(log_f: F, log_g: G, center: f64, scale: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let opts = QuadOptions::rel(1e-11).with_abs_tol(1e-300);
    let affinity = integrate_real_line_with(|x| (0.5 * (log_f(x) + log_g(x))).exp(), center, scale, &opts)?.value;
    Ok((1.0 - affinity).max(0.0).sqrt())
}

/// The NC(1) law closest in Hellinger distance to a Student t target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestMatch {
    pub beta: f64,
    pub scale: f64,
    pub distance: f64,
}

fn nc1_vs_t(target: &StudentTParams, beta: f64, scale: f64) -> f64 {
    let Ok(nc) = Nc1Params::new(target.mu(), scale, beta) else {
        return f64::INFINITY;
    };
    hellinger_distance(|y| nc.log_pdf(y), |y| target.log_pdf(y), target.mu(), target.s()).unwrap_or(f64::INFINITY)
}

/// Scale minimizing the distance at fixed β.
fn best_scale(target: &StudentTParams, beta: f64) -> (f64, f64) {
    let ln_s0 = target.s().ln();
    let (ln_s, h) = minimize_scalar(|ls| nc1_vs_t(target, beta, ls.exp()), ln_s0 - 3.0, ln_s0 + 3.0, 1e-9);
    (ln_s.exp(), h)
}

/// Minimizes the Hellinger distance to `target` over (β, s), with the
/// location fixed at the target's: an outer search over β and an inner one
/// over ln s.
pub fn best_match_beta(target: &StudentTParams) -> BestMatch {
    let (beta, distance) = minimize_scalar(|b| best_scale(target, b).1, 0.0, 1.0, 1e-8);
    // Brent never evaluates the ends; compare them explicitly.
    let mut best = BestMatch {
        beta,
        scale: best_scale(target, beta).0,
        distance,
    };
    for end in [0.0, 1.0] {
        let (scale, d) = best_scale(target, end);
        if d < best.distance {
            best = BestMatch {
                beta: end,
                scale,
                distance: d,
            };
        }
    }
    best
}
