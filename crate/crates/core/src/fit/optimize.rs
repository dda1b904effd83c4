//! Unconstrained minimization: BFGS with a backtracking line search followed
//! by a Nelder–Mead polish.

/// A smooth objective on ℝᵖ. Infeasible points should return +∞.
pub(crate) trait Objective {
    fn value(&self, x: &[f64]) -> f64;

    /// Central-difference gradient unless overridden.
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        numeric_gradient(self, x)
    }
}

pub(crate) fn numeric_gradient<O: Objective + ?Sized>(obj: &O, x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        let h = 1e-5 * (1.0 + x[i].abs());
        xp[i] = x[i] + h;
        let fp = obj.value(&xp);
        xp[i] = x[i] - h;
        let fm = obj.value(&xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

pub(crate) fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m: f64, x| m.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad_norm: f64,
}

/// Longest step, in any coordinate, a single line search may take.
const MAX_STEP: f64 = 2.0;

pub(crate) fn bfgs<O: Objective>(obj: &O, x0: &[f64], grad_tol: f64, max_iter: usize) -> Minimum {
    let p = x0.len();
    let mut x = x0.to_vec();
    let mut f = obj.value(&x);
    let mut g = obj.gradient(&x);
    let mut h = identity(p);
    let mut stalls = 0;
    for _ in 0..max_iter {
        if norm_inf(&g) <= grad_tol || !f.is_finite() {
            break;
        }
        let mut dir: Vec<f64> = (0..p).map(|i| -dot(&h[i * p..(i + 1) * p], &g)).collect();
        let mut slope = dot(&dir, &g);
        if !(slope < 0.0) {
            h = identity(p);
            dir = g.iter().map(|v| -v).collect();
            slope = dot(&dir, &g);
        }
        let longest = norm_inf(&dir);
        let mut step = if longest > MAX_STEP { MAX_STEP / longest } else { 1.0 };
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + step * d).collect();
            let ft = obj.value(&trial);
            if ft.is_finite() && ft <= f + 1e-4 * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fnew)) = accepted else {
            break;
        };
        let gn = obj.gradient(&xn);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            update_inverse_hessian(&mut h, &s, &y, sy);
        }
        stalls = if f - fnew <= 1e-15 * (1.0 + f.abs()) { stalls + 1 } else { 0 };
        x = xn;
        f = fnew;
        g = gn;
        if stalls >= 3 {
            break;
        }
    }
    Minimum {
        grad_norm: norm_inf(&g),
        x,
        f,
    }
}

fn identity(p: usize) -> Vec<f64> {
    let mut h = vec![0.0; p * p];
    for i in 0..p {
        h[i * p + i] = 1.0;
    }
    h
}

/// H ← (I − ρsyᵀ)H(I − ρysᵀ) + ρssᵀ with ρ = 1/sᵀy.
fn update_inverse_hessian(h: &mut [f64], s: &[f64], y: &[f64], sy: f64) {
    let p = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..p).map(|i| dot(&h[i * p..(i + 1) * p], y)).collect();
    let yhy = dot(y, &hy);
    for i in 0..p {
        for j in 0..p {
            h[i * p + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

/// Nelder–Mead simplex search started from `x0` with edge length `size`.
pub(crate) fn nelder_mead<O: Objective>(obj: &O, x0: &[f64], size: f64, max_iter: usize) -> (Vec<f64>, f64) {
    let p = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(p + 1);
    simplex.push((x0.to_vec(), obj.value(x0)));
    for i in 0..p {
        let mut v = x0.to_vec();
        v[i] += size;
        let f = obj.value(&v);
        simplex.push((v, f));
    }
    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    for _ in 0..max_iter {
        order(&mut simplex);
        let (best, worst) = (simplex[0].1, simplex[p].1);
        if (worst - best).abs() <= 1e-14 * (1.0 + best.abs()) {
            break;
        }
        let centroid: Vec<f64> = (0..p)
            .map(|j| simplex[..p].iter().map(|v| v.0[j]).sum::<f64>() / p as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[p].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(1.0);
        let fr = obj.value(&xr);
        if fr < best {
            let xe = along(2.0);
            let fe = obj.value(&xe);
            simplex[p] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[p - 1].1 {
            simplex[p] = (xr, fr);
        } else {
            let xc = if fr < worst { along(0.5) } else { along(-0.5) };
            let fc = obj.value(&xc);
            if fc < worst.min(fr) {
                simplex[p] = (xc, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    for (vj, bj) in v.0.iter_mut().zip(&x_best) {
                        *vj = bj + 0.5 * (*vj - bj);
                    }
                    v.1 = obj.value(&v.0);
                }
            }
        }
    }
    order(&mut simplex);
    simplex.swap_remove(0)
}
