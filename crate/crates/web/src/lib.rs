//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns plain numbers so the page needs no glue
//! beyond what wasm-bindgen generates. Errors come back as strings.

use ncdist::dist::{DistParams, Family};
use ncdist::fit::best_match_beta;
use ncdist::ncn;
use ncdist::random::seeded;
use ncdist::student_t::StudentTParams;
use wasm_bindgen::prelude::*;

fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 || !(from < to) {
        return Err("need at least 2 points and from < to".into());
    }
    let h = (to - from) / (points - 1) as f64;
    Ok((0..points).map(|i| from + i as f64 * h).collect())
}

fn family(n_degree: u32) -> Family {
    if n_degree <= 1 {
        Family::Nc1
    } else {
        Family::Ncn(n_degree)
    }
}

/// Evenly spaced abscissae of [`pdf_curve`].
#[wasm_bindgen]
pub fn x_grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>, String> {
    grid(from, to, points)
}

/// NC(n) density with unit scale on `points` values spanning [from, to].
#[wasm_bindgen]
pub fn pdf_curve(n_degree: u32, beta: f64, from: f64, to: f64, points: usize) -> Result<Vec<f64>, String> {
    let d = DistParams::from_values(family(n_degree), &[0.0, 1.0, beta]).map_err(|e| e.to_string())?;
    Ok(grid(from, to, points)?.into_iter().map(|x| d.pdf(x)).collect())
}

/// Student t density with location 0.
#[wasm_bindgen]
pub fn t_pdf_curve(nu: f64, scale: f64, from: f64, to: f64, points: usize) -> Result<Vec<f64>, String> {
    let t = StudentTParams::new(0.0, scale, nu).map_err(|e| e.to_string())?;
    Ok(grid(from, to, points)?.into_iter().map(|x| t.pdf(x)).collect())
}

/// NC(1) closest in Hellinger distance to t(ν): `[beta, scale, distance]`.
#[wasm_bindgen]
pub fn best_match(nu: f64) -> Result<Vec<f64>, String> {
    let t = StudentTParams::new(0.0, 1.0, nu).map_err(|e| e.to_string())?;
    let m = best_match_beta(&t);
    Ok(vec![m.beta, m.scale, m.distance])
}

/// Excess kurtosis of NC(n) at β = 0.01, 0.02, …, 0.99. Infinite values
/// (none on this grid) would come back as +∞.
#[wasm_bindgen]
pub fn kurtosis_curve(n_degree: u32) -> Result<Vec<f64>, String> {
    (1..=99)
        .map(|i| {
            ncn::central_moments(n_degree.max(1), i as f64 / 100.0)
                .map(|m| m.excess_kurtosis)
                .map_err(|e| e.to_string())
        })
        .collect()
}

/// Draws `count` NC(n) variates with unit scale and returns a density
/// histogram over `bins` equal cells on [from, to]; draws outside the range
/// are dropped from the counts but not from the normalization.
#[wasm_bindgen]
pub fn sample_histogram(
    n_degree: u32,
    beta: f64,
    count: usize,
    seed: u32,
    bins: usize,
    from: f64,
    to: f64,
) -> Result<Vec<f64>, String> {
    if bins == 0 || !(from < to) || count == 0 {
        return Err("need bins > 0, count > 0 and from < to".into());
    }
    let d = DistParams::from_values(family(n_degree), &[0.0, 1.0, beta]).map_err(|e| e.to_string())?;
    let mut rng = seeded(seed as u64);
    let width = (to - from) / bins as f64;
    let mut h = vec![0.0; bins];
    for _ in 0..count {
        let x = d.sample(&mut rng).map_err(|e| e.to_string())?;
        if x >= from && x < to {
            h[((x - from) / width) as usize] += 1.0;
        }
    }
    let norm = count as f64 * width;
    Ok(h.into_iter().map(|c| c / norm).collect())
}
