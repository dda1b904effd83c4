//! Adaptive quadrature and one-dimensional root finding / minimization.
//!
//! Quadrature is globally adaptive 7/15-point Gauss–Kronrod with bisection of
//! the panel carrying the largest error estimate. Infinite ranges are mapped
//! onto [0, 1) with x = a + L·t/(1 − t).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default relative tolerance for normalizing constants.
pub const CONSTANT_REL_TOL: f64 = 1e-10;
/// Default relative tolerance for distribution functions and moments.
pub const CDF_REL_TOL: f64 = 1e-8;

const ABS_FLOOR: f64 = 1e-300;
const MAX_PANELS: usize = 4000;

// Kronrod abscissae, Kronrod weights and the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Value of a definite integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// Tolerance controls for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: CDF_REL_TOL,
            abs_tol: ABS_FLOOR,
            max_panels: MAX_PANELS,
        }
    }
}

impl QuadOptions {
    pub fn rel(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// Adaptive integration over a finite list of breakpoints; panels between
/// consecutive breakpoints seed the heap.
pub fn integrate_breakpoints<F>(f: F, points: &[f64], opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    assert!(points.len() >= 2, "need at least two breakpoints");
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let nonfinite = |p: &Panel| Error::Quadrature {
        estimate: p.value,
        abs_error: f64::INFINITY,
    };
    for w in points.windows(2) {
        if w[1] > w[0] {
            let p = gauss_kronrod_15(&f, w[0], w[1]);
            if !p.value.is_finite() {
                return Err(nonfinite(&p));
            }
            evaluations += 15;
            value += p.value;
            error += p.error;
            heap.push(p);
        }
    }
    // Panels too narrow to split; their error is final.
    let mut frozen_error = 0.0;
    let mut frozen_value = 0.0;
    loop {
        let tol = (opts.rel_tol * value.abs()).max(opts.abs_tol);
        if error <= tol {
            break;
        }
        if heap.len() >= opts.max_panels || error - frozen_error <= 0.0 {
            return Err(Error::Quadrature {
                estimate: value,
                abs_error: error,
            });
        }
        let Some(worst) = heap.pop() else {
            // Every panel is frozen: the tolerance is below roundoff.
            return Err(Error::Quadrature {
                estimate: value,
                abs_error: error,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) < 1e3 * f64::EPSILON * (worst.a.abs() + worst.b.abs())
        {
            frozen_error += worst.error;
            frozen_value += worst.value;
            continue;
        }
        let left = gauss_kronrod_15(&f, worst.a, mid);
        let right = gauss_kronrod_15(&f, mid, worst.b);
        for p in [&left, &right] {
            if !p.value.is_finite() {
                return Err(nonfinite(p));
            }
        }
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // Resum to shed accumulated cancellation in the running totals.
            value = heap.iter().map(|p| p.value).sum::<f64>() + frozen_value;
            error = heap.iter().map(|p| p.error).sum::<f64>() + frozen_error;
        }
    }
    if !value.is_finite() {
        return Err(Error::Quadrature {
            estimate: value,
            abs_error: error,
        });
    }
    Ok(QuadResult {
        value,
        abs_error_estimate: error.max(0.0),
        evaluations,
    })
}

/// ∫ₐᵇ f(x) dx to relative tolerance `rel_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    integrate_breakpoints(f, &[a, b], &QuadOptions::rel(rel_tol))
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain {
            function: "integrate (finite limits)",
            value: if a.is_finite() { b } else { a },
        });
    }
    if !(a < b) {
        return Err(Error::Domain {
            function: "integrate (a < b)",
            value: a,
        });
    }
    Ok(())
}

/// ∫ₐ^∞ f(x) dx with the mapping x = a + t/(1 − t).
pub fn integrate_semi_infinite<F>(f: F, a: f64, rel_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_with(f, a, 1.0, &QuadOptions::rel(rel_tol))
}

/// ∫ₐ^∞ f(x) dx with x = a + scale·t/(1 − t); `scale` should be of the order
/// of the width of the integrand's bulk.
pub fn integrate_semi_infinite_with<F>(
    f: F,
    a: f64,
    scale: f64,
    opts: &QuadOptions,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() {
        return Err(Error::Domain {
            function: "integrate_semi_infinite",
            value: a,
        });
    }
    let g = |t: f64| {
        let om = 1.0 - t;
        let x = a + scale * t / om;
        if !x.is_finite() {
            return 0.0;
        }
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * scale / (om * om)
        }
    };
    integrate_breakpoints(g, &[0.0, 0.5, 1.0], opts)
}

/// ∫_{−∞}^{∞} f(x) dx, split at zero into two semi-infinite pieces.
pub fn integrate_real_line<F>(f: F, rel_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_real_line_with(f, 0.0, 1.0, &QuadOptions::rel(rel_tol))
}

/// Whole-line integral split at `center`, with mapping scale `scale`.
pub fn integrate_real_line_with<F>(
    f: F,
    center: f64,
    scale: f64,
    opts: &QuadOptions,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    // Both halves share one heap so the tolerance applies to the total.
    let g = |t: f64| {
        // t ∈ (−1, 1): x = center + scale·t/(1 − |t|)
        let om = 1.0 - t.abs();
        let x = center + scale * t / om;
        if !x.is_finite() {
            return 0.0;
        }
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * scale / (om * om)
        }
    };
    integrate_breakpoints(g, &[-1.0, -0.5, 0.0, 0.5, 1.0], opts)
}

/// Root of `f` in [lo, hi] by Brent's method (bisection safeguarding secant
/// and inverse-quadratic steps). The iterate never leaves the bracket.
pub fn find_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NotBracketed { lo, hi });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..500 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Ok(b)
}

/// Minimum of a unimodal `f` on [lo, hi] by Brent's parabolic/golden-section
/// search. Returns `(argmin, min)`.
pub fn minimize_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (lo, hi);
    let mut x = a + CGOLD * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..500 {
        let xm = 0.5 * (a + b);
        let tol1 = tol * x.abs() + 1e-12;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}
