//! Distribution function and quantile machinery shared by the symmetric
//! standardized densities (NC(1), NC(n), N-t, Student t).

use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate, integrate_semi_infinite_with, QuadOptions, CDF_REL_TOL};

/// A known value of the upper tail G(t) = P(X > t), used to shorten the
/// integration range.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailAnchor {
    pub point: f64,
    pub tail: f64,
}

/// Upper tail probability P(X > t) for t ≥ 0 of a symmetric density.
///
/// `tail_rate` approximates how fast the density decays past `t`; it sets the
/// scale of the semi-infinite mapping.
pub(crate) fn upper_tail<F>(pdf: F, t: f64, split: f64, anchor: Option<TailAnchor>, tail_rate: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(t >= 0.0);
    let opts = QuadOptions::rel(CDF_REL_TOL).with_abs_tol(1e-300);
    if let Some(anchor) = anchor {
        if t >= anchor.point {
            let scale = t / (1.0 + tail_rate * t * t);
            return quad_value(integrate_semi_infinite_with(&pdf, t, scale.max(1e-3), &opts));
        }
        if t > 0.5 * anchor.point {
            return anchor.tail + quad_value(integrate(&pdf, t, anchor.point, CDF_REL_TOL));
        }
    } else if t >= split {
        let scale = t / (1.0 + tail_rate * t * t);
        return quad_value(integrate_semi_infinite_with(&pdf, t, scale.max(1e-3), &opts));
    }
    if t == 0.0 {
        return 0.5;
    }
    0.5 - quad_value(integrate(&pdf, 0.0, t, CDF_REL_TOL))
}

fn quad_value(r: Result<crate::numerics::QuadResult>) -> f64 {
    match r {
        Ok(q) => q.value,
        Err(Error::Quadrature { estimate, .. }) => estimate,
        Err(_) => f64::NAN,
    }
}

/// P(X ≤ x) from the upper-tail function of a symmetric standardized law.
pub(crate) fn cdf_from_tail<G: Fn(f64) -> f64>(tail: G, x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    if x >= 0.0 {
        1.0 - tail(x)
    } else {
        tail(-x)
    }
}

/// Standardized quantile: solves G(t) = min(p, 1 − p) starting from `guess`.
pub(crate) fn quantile_from_tail<G: Fn(f64) -> f64>(tail: G, p: f64, guess: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            function: "quantile (p in (0, 1))",
            value: p,
        });
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let target = p.min(1.0 - p);
    let mut hi = guess.abs().max(1e-3);
    let mut lo = 0.0;
    let mut iter = 0;
    while tail(hi) > target {
        lo = hi;
        hi *= 2.0;
        iter += 1;
        if iter > 200 {
            return Err(Error::Domain {
                function: "quantile (bracket)",
                value: p,
            });
        }
    }
    let t = find_root(|t| tail(t) - target, lo, hi, 1e-13 * hi.max(1.0))?;
    Ok(if p > 0.5 { t } else { -t })
}
