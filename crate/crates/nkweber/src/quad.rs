//! Quadrature oracles: adaptive tanh-sinh on real intervals and complex rays.
//!
//! These back every derived-value test in the crate, so they stay
//! independent of the special-function evaluators: the only inputs are the
//! integrand closure and a decay class for infinite tails.
//!
//! The environment variable `WEBER_NK_MAX_EVALS` caps the number of
//! integrand evaluations per call (default 4,000,000).

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::{cx, Error, Result};

/// Value, absolute error estimate and work counter for one integral.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub n_evals: usize,
}

/// Decay class of an integrand on a semi-infinite interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// |f| ~ exp(-c s²) for large s.
    Gaussian,
    /// |f| ~ exp(-c s).
    Exponential,
}

fn max_evals() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("WEBER_NK_MAX_EVALS")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(4_000_000)
    })
}

struct Counter {
    n: usize,
    cap: usize,
}

impl Counter {
    fn new() -> Self {
        Counter { n: 0, cap: max_evals() }
    }
    fn bump(&mut self, k: usize) -> Result<()> {
        self.n += k;
        if self.n > self.cap {
            Err(Error::NoConverge(format!(
                "quadrature exceeded {} integrand evaluations",
                self.cap
            )))
        } else {
            Ok(())
        }
    }
}

/// One tanh-sinh pass over [-1, 1] at step h; returns the h-weighted sum.
/// `f01` maps the standard variable to the integrand value.
fn tanh_sinh_level(
    f01: &dyn Fn(f64) -> Complex64,
    h: f64,
    only_odd: bool,
    counter: &mut Counter,
) -> Result<Complex64> {
    const T_MAX: f64 = 3.8;
    let mut sum = cx(0.0, 0.0);
    let mut k = if only_odd { 1 } else { 0 };
    let step = if only_odd { 2 } else { 1 };
    loop {
        let t = k as f64 * h;
        if t > T_MAX {
            break;
        }
        let u = 0.5 * std::f64::consts::PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * std::f64::consts::PI * t.cosh() / u.cosh().powi(2);
        if w < 1e-300 {
            break;
        }
        let mut term = f01(x) * w;
        if k > 0 {
            term += f01(-x) * w;
            counter.bump(2)?;
        } else {
            counter.bump(1)?;
        }
        if term.re.is_finite() && term.im.is_finite() {
            sum += term;
        }
        k += step;
    }
    Ok(sum * h)
}

/// Tanh-sinh on a finite panel with level refinement; bisects when the
/// doubled-refinement estimate stalls above the target.
fn panel(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol_abs: f64,
    depth: usize,
    counter: &mut Counter,
) -> Result<(Complex64, f64)> {
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    let f01 = move |x: f64| f(c + d * x);
    let mut h = 0.5;
    let mut total = tanh_sinh_level(&f01, h, false, counter)?;
    let mut prev_err = f64::INFINITY;
    for _level in 0..7 {
        h *= 0.5;
        let refined = 0.5 * total + tanh_sinh_level(&f01, h, true, counter)?;
        let err = (refined - total).norm() * d.abs();
        total = refined;
        if err <= tol_abs || err <= 1e-15 * total.norm() * d.abs() {
            return Ok((total * d, err.max(1e-16 * total.norm() * d.abs())));
        }
        // Refinement stalling on a smooth panel means the feature is
        // unresolved at this width; split instead of burning more levels.
        if err > prev_err && depth < 40 {
            break;
        }
        prev_err = err;
    }
    if depth >= 40 {
        return Err(Error::NoConverge(format!("tanh-sinh failed on [{a}, {b}]")));
    }
    let (l, el) = panel(f, a, c, 0.6 * tol_abs, depth + 1, counter)?;
    let (r, er) = panel(f, c, b, 0.6 * tol_abs, depth + 1, counter)?;
    Ok((l + r, el + er))
}

/// ∫_a^b f(t) dt for finite a < b, to (mostly relative) tolerance `tol`.
pub fn quad_finite(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let mut counter = Counter::new();
    // Cheap scale probe so tol can act relative to the integrand size.
    let probes = 17;
    let mut scale: f64 = 0.0;
    for i in 0..probes {
        let x = a + (b - a) * (i as f64 + 0.5) / probes as f64;
        scale = scale.max(f(x).norm());
    }
    counter.bump(probes as usize)?;
    let tol_abs = tol * (scale * (b - a).abs()).max(1e-300);
    let (value, abs_err) = panel(&f, a, b, tol_abs, 0, &mut counter)?;
    Ok(QuadratureResult { value, abs_err, n_evals: counter.n })
}

/// ∫_a^b f(t) dt, where b may be +∞ with the declared tail decay.
///
/// An infinite tail is truncated where |f| falls below 1e-16 of the running
/// peak; the finite remainder is integrated panel-wise.
pub fn quad_interval(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    tail: Tail,
) -> Result<QuadratureResult> {
    if b.is_finite() {
        return quad_finite(f, a, b, tol);
    }
    let mut counter = Counter::new();
    // Scan for the peak and the truncation point.
    let mut peak: f64 = 0.0;
    let mut t_cut = None;
    let mut s = 0.25;
    let step_growth = match tail {
        Tail::Gaussian => 1.18,
        Tail::Exponential => 1.25,
    };
    let mut below = 0;
    while s < 1e6 {
        let v = f(a + s).norm();
        counter.bump(1)?;
        peak = peak.max(v);
        if peak > 0.0 && v < 1e-16 * peak {
            below += 1;
            if below >= 3 {
                t_cut = Some(a + s);
                break;
            }
        } else {
            below = 0;
        }
        s *= step_growth;
    }
    if peak == 0.0 {
        // Identically zero along the scan; report a clean zero.
        return Ok(QuadratureResult { value: cx(0.0, 0.0), abs_err: 0.0, n_evals: counter.n });
    }
    let t_end = t_cut.ok_or_else(|| {
        Error::NoConverge("tail truncation point not found before s = 1e6".into())
    })?;
    // Panels of geometrically growing width resolve the head without
    // wasting points on the far tail.
    let mut edges = vec![a];
    let mut w = 0.5_f64.min((t_end - a) / 8.0).max(1e-3);
    let mut x = a;
    while x + w < t_end {
        x += w;
        edges.push(x);
        w *= 1.6;
    }
    edges.push(t_end);
    let tol_abs = tol * (peak * (t_end - a)).max(1e-300) / edges.len() as f64;
    let mut value = cx(0.0, 0.0);
    let mut abs_err = 0.0;
    for pair in edges.windows(2) {
        let (v, e) = panel(&f, pair[0], pair[1], tol_abs, 0, &mut counter)?;
        value += v;
        abs_err += e;
    }
    Ok(QuadratureResult { value, abs_err, n_evals: counter.n })
}

/// Contour integral ∫ f(t) dt along t = start + s·direction, s ∈ [0, ∞),
/// for an integrand that decays like a Gaussian along the ray. The result
/// includes the direction Jacobian.
pub fn quad_ray(
    f: impl Fn(Complex64) -> Complex64,
    start: Complex64,
    direction: Complex64,
    tol: f64,
) -> Result<QuadratureResult> {
    let dir = direction / direction.norm();
    let g = |s: f64| f(start + s * dir);
    let r = quad_interval(g, 0.0, f64::INFINITY, tol, Tail::Gaussian)?;
    Ok(QuadratureResult { value: r.value * dir, abs_err: r.abs_err, n_evals: r.n_evals })
}

/// Sum of a slowly alternating series by iterated averaging (Euler
/// transform). Returns the accelerated sum and an error estimate.
pub fn euler_sum(terms: &[Complex64]) -> (Complex64, f64) {
    assert!(!terms.is_empty());
    let mut row: Vec<Complex64> = Vec::with_capacity(terms.len());
    let mut acc = cx(0.0, 0.0);
    for &t in terms {
        acc += t;
        row.push(acc);
    }
    let mut best = *row.last().unwrap();
    let mut best_err = f64::INFINITY;
    let mut prev_head = row[row.len() / 2];
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
        let head = row[row.len() / 2];
        let err = (head - prev_head).norm();
        if err < best_err {
            best_err = err;
            best = head;
        }
        prev_head = head;
    }
    (best, best_err)
}

/// Integrate f over [a, ∞) when f oscillates with algebraic decay, given a
/// function producing the k-th segmentation point (typically zeros of the
/// oscillation). Segment integrals are summed with Euler acceleration.
pub fn quad_oscillatory(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    segment_end: impl Fn(usize) -> f64,
    tol: f64,
    max_segments: usize,
) -> Result<QuadratureResult> {
    let mut terms: Vec<Complex64> = Vec::new();
    let mut lo = a;
    let mut n_evals = 0;
    let mut prev = cx(f64::INFINITY, 0.0);
    let mut best_err = f64::INFINITY;
    let mut best = cx(0.0, 0.0);
    for k in 0..max_segments {
        let hi = segment_end(k);
        if hi <= lo {
            continue;
        }
        let r = quad_finite(&f, lo, hi, tol.min(1e-11))?;
        n_evals += r.n_evals;
        terms.push(r.value);
        lo = hi;
        if terms.len() >= 6 {
            let (s, e) = euler_sum(&terms);
            let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
            if (s - prev).norm() + e < best_err {
                best_err = (s - prev).norm() + e;
                best = s;
            }
            if e <= tol * scale.max(best.norm())
                && (s - prev).norm() <= tol * best.norm().max(scale)
            {
                return Ok(QuadratureResult { value: s, abs_err: e, n_evals });
            }
            prev = s;
        }
    }
    if best_err.is_finite() {
        Ok(QuadratureResult { value: best, abs_err: best_err, n_evals })
    } else {
        Err(Error::NoConverge("oscillatory sum did not stabilize".into()))
    }
}
