use crate::error::{Error, Result};
use crate::specfun::bessel_k_scaled;

/// ln f(y) for f(y) = {e^{−α/4}/K₀(α/4)} · e^{−αy²/2}/√(1 + y²), the N-t law
/// at γ = 1/2.
pub fn blurred_t_half_log_pdf(alpha: f64, y: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be positive and finite",
        });
    }
    // e^{α/4}K₀(α/4) is the scaled Bessel function.
    let log_c = -bessel_k_scaled(0, 0.25 * alpha)?.ln();
    Ok(log_c - 0.5 * alpha * y * y - 0.5 * (y * y).ln_1p())
}
