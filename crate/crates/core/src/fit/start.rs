use crate::data::sample_moments;
use crate::dist::{DistParams, Family};
use crate::error::{Error, Result};
use crate::numerics::find_root;
use crate::{nc1, ncn};

/// Interval the kurtosis inversion clamps to.
const BETA_MIN: f64 = 1e-4;
const BETA_MAX: f64 = 1.0 - 1e-4;

/// Tail weight used when the sample kurtosis cannot be inverted.
pub const DEFAULT_BETA: f64 = 0.2;
/// Degrees of freedom used as the starting value for t-type tails.
pub const DEFAULT_NU: f64 = 5.0;

fn nc_kurtosis(n: u32, beta: f64) -> f64 {
    let m = if n == 1 {
        nc1::central_moments(beta)
    } else {
        ncn::central_moments(n, beta)
    };
    m.map_or(f64::NAN, |m| m.excess_kurtosis)
}

/// β of the NC(n) law whose excess kurtosis equals `kappa`, clamped to
/// [1e-4, 1 − 1e-4] when `kappa` lies outside the attainable range.
pub fn kurtosis_to_beta(n: u32, kappa: f64) -> f64 {
    let k_lo = nc_kurtosis(n, BETA_MAX);
    let k_hi = nc_kurtosis(n, BETA_MIN);
    if !(kappa > k_lo) {
        return BETA_MAX;
    }
    if kappa >= k_hi {
        return BETA_MIN;
    }
    // The curve spans many decades near β = 0, so solve in ln κ.
    find_root(|b| nc_kurtosis(n, b).ln() - kappa.ln(), BETA_MIN, BETA_MAX, 1e-12).unwrap_or(DEFAULT_BETA)
}

/// Sample mean and standard deviation (divisor n).
fn mean_sd(data: &[f64]) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    let var = data.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n;
    if !(var > 0.0) {
        return Err(Error::DegenerateData("all observations are equal"));
    }
    Ok((mean, var.sqrt()))
}

/// Tail weight suggested by the sample kurtosis: the kurtosis-curve inverse
/// for n ≥ 10, else [`DEFAULT_BETA`].
fn start_beta(n: u32, data: &[f64]) -> f64 {
    if data.len() < 10 {
        return DEFAULT_BETA;
    }
    match sample_moments(data) {
        Ok(m) if m.excess_kurtosis.is_finite() => kurtosis_to_beta(n, m.excess_kurtosis),
        _ => DEFAULT_BETA,
    }
}

/// Starting parameters: sample mean and standard deviation for location and
/// scale, tail weight from the sample kurtosis, ν = 5.
pub fn start_values(family: Family, data: &[f64]) -> Result<DistParams> {
    let (mu, sd) = mean_sd(data)?;
    let values = match family {
        Family::StudentT => vec![mu, sd, DEFAULT_NU],
        Family::Nc1 => vec![mu, sd, start_beta(1, data)],
        Family::Ncn(n) => vec![mu, sd, start_beta(n, data)],
        Family::Nt => {
            let alpha = DEFAULT_BETA / (1.0 - DEFAULT_BETA);
            vec![mu, sd, alpha, 0.5 * (DEFAULT_NU + 1.0)]
        }
        Family::TwoPiece => vec![mu, sd, sd, start_beta(1, data)],
        Family::SurvTail => {
            return Err(Error::InvalidParameter {
                name: "family",
                value: f64::NAN,
                reason: "the survival-tail law is evaluation-only",
            })
        }
    };
    DistParams::from_values(family, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_round_trip_and_clamps() {
        let k = nc1::central_moments(0.4).unwrap().excess_kurtosis;
        assert!((kurtosis_to_beta(1, k) - 0.4).abs() < 1e-9);
        assert_eq!(kurtosis_to_beta(1, 1e-12), BETA_MAX);
        assert_eq!(kurtosis_to_beta(1, 1e12), BETA_MIN);
        let k3 = ncn::central_moments(3, 0.3).unwrap().excess_kurtosis;
        assert!((kurtosis_to_beta(3, k3) - 0.3).abs() < 1e-8);
    }

    #[test]
    fn tiny_samples_fall_back() {
        let p = start_values(Family::Nc1, &[1.0, 2.0, 4.0, 8.0, 9.0]).unwrap();
        assert_eq!(p.values()[2], DEFAULT_BETA);
        assert!(start_values(Family::Nc1, &[3.0; 20]).is_err());
    }
}
