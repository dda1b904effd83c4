use crate::dist::DistParams;
use crate::nc1::{d2_log_c1, d_log_c1, Nc1Params};

/// −ℓ = −Σ ln f(yᵢ). Normalizing constants are cached in the parameter
/// record, so each is evaluated once per call.
pub fn neg_log_lik(params: &DistParams, data: &[f64]) -> f64 {
    if let DistParams::Nc1(p) = params {
        return nc1_neg_log_lik(p, data);
    }
    -data.iter().map(|&y| params.log_pdf(y)).sum::<f64>()
}

/// −ℓ = −n ln c₁ + n ln s + Σ{βxᵢ²/2 + ln Dᵢ}, Dᵢ = 1 + (1 − β)xᵢ².
fn nc1_neg_log_lik(p: &Nc1Params, data: &[f64]) -> f64 {
    if p.is_normal_limit() {
        return -data.iter().map(|&y| p.log_pdf(y)).sum::<f64>();
    }
    let (beta, s, mu) = (p.beta(), p.s(), p.mu());
    let n = data.len() as f64;
    let body: f64 = data
        .iter()
        .map(|&y| {
            let x = (y - mu) / s;
            0.5 * beta * x * x + ((1.0 - beta) * x * x).ln_1p()
        })
        .sum();
    n * (s.ln() - p.log_c1()) + body
}

/// Gradient and Hessian (row-major 3×3) of the NC(1) log-likelihood ℓ in
/// (μ, s, β). Requires 0 < β < 1.
///
/// Each term is ln c₁(β) − ln s + φ(w, β) with w = (y − μ)²/s² and
/// φ = −βw/2 − ln{1 + (1 − β)w}; derivatives follow by the chain rule.
pub fn nc1_grad_hess(p: &Nc1Params, data: &[f64]) -> ([f64; 3], [f64; 9]) {
    let (mu, s, beta) = (p.mu(), p.s(), p.beta());
    let om = 1.0 - beta;
    let n = data.len() as f64;
    let mut g = [0.0, -n / s, n * d_log_c1(beta)];
    let mut h = [0.0; 9];
    h[4] = n / (s * s);
    h[8] = n * d2_log_c1(beta);
    for &y in data {
        let r = y - mu;
        let w = r * r / (s * s);
        let d = 1.0 + om * w;
        let phi_w = -0.5 * beta - om / d;
        let phi_ww = om * om / (d * d);
        let phi_b = -0.5 * w + w / d;
        let phi_bb = w * w / (d * d);
        let phi_wb = -0.5 + 1.0 / d - om * w / (d * d);
        let w_m = -2.0 * r / (s * s);
        let w_s = -2.0 * w / s;
        let w_mm = 2.0 / (s * s);
        let w_ms = 4.0 * r / (s * s * s);
        let w_ss = 6.0 * w / (s * s);
        g[0] += phi_w * w_m;
        g[1] += phi_w * w_s;
        g[2] += phi_b;
        h[0] += phi_ww * w_m * w_m + phi_w * w_mm;
        h[1] += phi_ww * w_m * w_s + phi_w * w_ms;
        h[2] += phi_wb * w_m;
        h[4] += phi_ww * w_s * w_s + phi_w * w_ss;
        h[5] += phi_wb * w_s;
        h[8] += phi_bb;
    }
    h[3] = h[1];
    h[6] = h[2];
    h[7] = h[5];
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{seeded, RandomSource};

    #[test]
    fn matches_sum_of_log_densities() {
        let p = Nc1Params::new(0.3, 1.7, 0.4).unwrap();
        let mut rng = seeded(9);
        let data: Vec<f64> = (0..100).map(|_| 3.0 * rng.normal()).collect();
        let direct = -data.iter().map(|&y| p.log_pdf(y)).sum::<f64>();
        let fast = neg_log_lik(&DistParams::Nc1(p), &data);
        assert!(((fast - direct) / direct).abs() < 1e-12);
    }
}
