//! Parabolic cylinder functions: U(a,z) for complex parameter and argument,
//! the rotated solutions W_j(a,z) and U_j(a,z), and the real Weber pair
//! W(a,±x) with its complex extension.
//!
//! U is evaluated by one of three routes, picked for stability:
//!
//! * Maclaurin series near the origin, inside the radius where the
//!   even/odd-basis cancellation still leaves ~13 digits;
//! * the Poincaré expansion for |z| beyond an anchor radius where its
//!   optimal truncation is at machine level (the anchor radius grows with
//!   the parameter so the turning points stay well inside);
//! * Taylor stepping of the defining ODE between those two regions, along
//!   paths on which |U| never decays in the direction of travel, so the
//!   complementary solution cannot take over. Radial inward steps cover the
//!   sector |arg z| ≲ π/4 where U is recessive; elsewhere the path first
//!   comes inward inside that sector and then swings along a circular arc,
//!   on which |U| grows monotonically toward the target.
//!
//! Large |z| with arg z near ±π is refused; the connection formulas in
//! [`crate::nield`] are the supported route there.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gamma::{gamma, log_gamma, phi2 as phi2_fn, recip_gamma};
use crate::{cx, Error, EvalResult, Method, Result};

const SQRT_PI: f64 = 1.7724538509055160273;

/// Parameter bundle: a and the scaled parameter u = 2a used by the
/// large-parameter machinery.
#[derive(Debug, Clone, Copy)]
pub struct WeberParams {
    pub a: f64,
    pub u: f64,
}

impl WeberParams {
    pub fn from_a(a: f64) -> Self {
        WeberParams { a, u: 2.0 * a }
    }
    pub fn from_u(u: f64) -> Self {
        WeberParams { a: 0.5 * u, u }
    }
}

/// Constants of the real-line Weber pair: k, ρ and φ₂.
#[derive(Debug, Clone, Copy)]
pub struct WAuxConstants {
    pub k: f64,
    pub rho: f64,
    pub phi2: f64,
}

/// k, ρ, φ₂ for W(a,±x). The k form used here is stable for every a.
pub fn w_aux(a: f64) -> WAuxConstants {
    // k = e^{-πa} / (1 + √(1 + e^{-2πa})), algebraically equal to
    // √(1+e^{2πa}) − e^{πa} but free of overflow for a ≥ 0.
    let k = if a >= 0.0 {
        (-PI * a).exp() / (1.0 + (1.0 + (-2.0 * PI * a).exp()).sqrt())
    } else {
        (1.0 + (2.0 * PI * a).exp()).sqrt() - (PI * a).exp()
    };
    let phi2 = phi2_fn(a);
    WAuxConstants { k, rho: 0.5 * phi2 + PI / 8.0, phi2 }
}

/// (W(a,0), W'(a,0)) from the gamma-modulus closed forms.
pub fn w_origin(a: f64) -> (f64, f64) {
    let (m14, m34) = crate::gamma::gamma_quarter_abs(a);
    let w0 = 2f64.powf(-0.75) * (m14 / m34).sqrt();
    let dw0 = -(2f64.powf(-0.25)) * (m34 / m14).sqrt();
    (w0, dw0)
}

/// (U(w,0), U'(w,0)) for complex parameter w.
pub fn u_origin(w: Complex64) -> (Complex64, Complex64) {
    let half_log2 = 0.5 * std::f64::consts::LN_2;
    let p0 = (-(w * half_log2) - 0.25 * std::f64::consts::LN_2).exp();
    let p1 = (-(w * half_log2) + 0.25 * std::f64::consts::LN_2).exp();
    (
        SQRT_PI * p0 * recip_gamma(0.5 * w + 0.75),
        -SQRT_PI * p1 * recip_gamma(0.5 * w + 0.25),
    )
}

// --- route radii -----------------------------------------------------------

/// Maclaurin radius: keep the even/odd-basis cancellation e^{r²/2 + 2√|w| r}
/// under e^7 (three digits lost).
fn series_radius(w_abs: f64) -> f64 {
    let s = 2.0 * w_abs.sqrt();
    // positive root of r²/2 + s r − 7 = 0
    (-s + (s * s + 14.0).sqrt()).max(0.3)
}

/// Anchor radius where the Poincaré expansion is reliably at ≤1e-12.
fn anchor_radius(w_abs: f64) -> f64 {
    (9.0f64).max(1.1 * 2.0 * w_abs.sqrt() + 7.0)
}

// --- Maclaurin route --------------------------------------------------------

/// Series solution of y'' = (z²/4 + w) y seeded by the origin values.
/// Returns (U, U', error estimate).
fn u_maclaurin(w: Complex64, z: Complex64) -> Result<(Complex64, Complex64, f64)> {
    let (c0, c1) = u_origin(w);
    let mut c = vec![cx(0.0, 0.0); 460];
    c[0] = c0;
    c[1] = c1;
    let mut val = c0 + c1 * z;
    let mut der = c1;
    let mut peak = val.norm();
    let mut zn = z * z; // z^{n+2} entering each pass below
    let mut znm1 = z; // z^{n+1}
    let mut small = 0;
    for n in 0..456 {
        let prev = if n >= 2 { c[n - 2] } else { cx(0.0, 0.0) };
        c[n + 2] = (w * c[n] + 0.25 * prev) / ((n as f64 + 1.0) * (n as f64 + 2.0));
        let t = c[n + 2] * zn;
        val += t;
        der += (n as f64 + 2.0) * c[n + 2] * znm1;
        peak = peak.max(val.norm());
        if t.norm() < 1e-17 * val.norm().max(1e-300) {
            small += 1;
            if small >= 6 && n > 8 {
                let err = 1e-16 * peak + t.norm();
                return Ok((val, der, err));
            }
        } else {
            small = 0;
        }
        zn *= z;
        znm1 *= z;
    }
    Err(Error::NoConverge("pcf series exceeded 456 terms".into()))
}

// --- Poincaré route ---------------------------------------------------------

/// U(w,z) ~ e^{-z²/4} z^{-w-1/2} Σ (-1)^s (w+1/2)_{2s} / (s! (2z²)^s),
/// truncated at the smallest term. Returns (U, U', err, n_terms).
fn u_poincare(w: Complex64, z: Complex64) -> Result<(Complex64, Complex64, f64, u32)> {
    let expo = -0.25 * z * z - (w + 0.5) * z.ln();
    if expo.re > 700.0 {
        return Err(Error::Overflow(format!("U overflows at z = {z}")));
    }
    let pref = if expo.re < -740.0 { cx(0.0, 0.0) } else { expo.exp() };
    let z2inv = 1.0 / (2.0 * z * z);
    let mut t = cx(1.0, 0.0);
    let mut s_val = cx(0.0, 0.0);
    let mut s_der = cx(0.0, 0.0);
    let mut smallest = f64::INFINITY;
    let mut n_used = 0u32;
    for s in 0..200 {
        let tn = t.norm();
        if tn > smallest {
            break;
        }
        smallest = tn;
        n_used = s as u32;
        s_val += t;
        s_der += t * (-0.5 * z + (-(w + 0.5) - 2.0 * s as f64) / z);
        let sf = s as f64;
        t *= -(w + 0.5 + 2.0 * sf) * (w + 1.5 + 2.0 * sf) * z2inv / (sf + 1.0);
        if t.norm() < 1e-18 {
            smallest = t.norm();
            break;
        }
    }
    let err = (smallest.min(1e-18) + 1e-15 * s_val.norm()) * pref.norm();
    Ok((pref * s_val, pref * s_der, err, n_used))
}

// --- ODE Taylor stepping -----------------------------------------------------

/// One Taylor step of y'' = (z²/4 + w) y from z0 by h.
fn u_taylor_step(
    w: Complex64,
    z0: Complex64,
    f: Complex64,
    df: Complex64,
    h: Complex64,
) -> (Complex64, Complex64) {
    const N: usize = 38;
    let q0 = 0.25 * z0 * z0 + w;
    let mut c = [cx(0.0, 0.0); N];
    c[0] = f;
    c[1] = df;
    for k in 0..N - 2 {
        let cm1 = if k >= 1 { c[k - 1] } else { cx(0.0, 0.0) };
        let cm2 = if k >= 2 { c[k - 2] } else { cx(0.0, 0.0) };
        c[k + 2] = (q0 * c[k] + 0.5 * z0 * cm1 + 0.25 * cm2)
            / ((k as f64 + 1.0) * (k as f64 + 2.0));
    }
    let mut val = cx(0.0, 0.0);
    let mut der = cx(0.0, 0.0);
    for k in (0..N).rev() {
        val = val * h + c[k];
        if k >= 1 {
            der = der * h + c[k] * k as f64;
        }
    }
    (val, der)
}

/// Step (U, U') along a straight segment from `from` to `to`.
fn step_segment(
    w: Complex64,
    from: Complex64,
    to: Complex64,
    mut f: Complex64,
    mut df: Complex64,
) -> (Complex64, Complex64) {
    let len = (to - from).norm();
    if len == 0.0 {
        return (f, df);
    }
    let dir = (to - from) / len;
    let mut done = 0.0;
    while done < len {
        let z0 = from + done * dir;
        let q = (0.25 * z0 * z0 + w).norm().sqrt();
        let h = (5.0 / (1.0 + q)).min(len - done);
        let (nf, ndf) = u_taylor_step(w, z0, f, df, h * dir);
        f = nf;
        df = ndf;
        done += h;
    }
    (f, df)
}

/// How far left of the imaginary axis the horizontal bridge may reach: the
/// complementary solution regains e^{x²/2} relative weight over that
/// overshoot, so this caps the noise amplification at ~e^{15}·eps ≈ 1e-10.
const MAX_LEFT_REACH: f64 = 5.5;

/// Bridge evaluation between the series and anchor radii: build a path on
/// which |U| never decays in the direction of travel, then Taylor-step.
fn u_stepped(w: Complex64, z: Complex64) -> Result<(Complex64, Complex64, f64)> {
    let r = z.norm();
    let theta = z.arg();
    let anchor_r = anchor_radius(w.norm());
    if theta.abs() <= PI / 4.0 + 0.03 {
        // Recessive sector: straight inward along the ray; U grows inward.
        let start = anchor_r * z / r;
        let (f0, df0, e0, _) = u_poincare(w, start)?;
        let (f, df) = step_segment(w, start, z, f0, df0);
        let gain = (f.norm() / f0.norm().max(1e-300)).max(1.0);
        return Ok((f, df, (e0 + 1e-14 * f0.norm()) * gain));
    }
    if z.re < -MAX_LEFT_REACH {
        return Err(Error::Domain(
            "pcf_u unsupported this far into Re z < 0 at mid |z|; use connection formulas"
                .into(),
        ));
    }
    // Off the recessive sector: march leftward along the horizontal line
    // Im t = Im z from a Poincaré anchor in the good sector. Along that
    // line |e^{-t²/4}| = e^{(y² - x²)/4} grows until x = 0, so the
    // complementary solution stays suppressed; the short overshoot into
    // x < 0 is bounded by MAX_LEFT_REACH.
    let y0 = z.im;
    let x_start = y0.abs().max((anchor_r * anchor_r - y0 * y0).max(0.0).sqrt());
    let start = cx(x_start, y0);
    let (f0, df0, e0, _) = u_poincare(w, start)?;
    let (f, df) = step_segment(w, start, z, f0, df0);
    let gain = (f.norm() / f0.norm().max(1e-300)).max(1.0);
    let mut err = (e0 + 1e-14 * f0.norm()) * gain;
    if z.re < 0.0 {
        err *= (0.5 * z.re * z.re).min(40.0).exp();
    }
    Ok((f, df, err))
}

/// U(w, z) together with its z-derivative, for complex parameter w.
///
/// Refuses |z| beyond the series radius when arg z is within 0.02 of ±π
/// (use the connection formulas instead), |w| > 60 and |z| > 200.
pub fn pcf_u_full(w: Complex64, z: Complex64) -> Result<(EvalResult, EvalResult)> {
    if w.norm() > 60.0 {
        return Err(Error::Domain("pcf_u supports |a| <= 60".into()));
    }
    if z.norm() > 200.0 {
        return Err(Error::Domain("pcf_u supports |z| <= 200".into()));
    }
    let r = z.norm();
    let rs = series_radius(w.norm());
    if r <= rs {
        let (f, df, err) = u_maclaurin(w, z)?;
        return Ok((
            EvalResult::new(f, err, Method::Series),
            EvalResult::new(df, err * (1.0 + df.norm() / f.norm().max(1e-300)), Method::Series),
        ));
    }
    if z.arg().abs() > 0.75 * PI + 0.02 {
        return Err(Error::Domain(
            "pcf_u unsupported for large |z| with arg z near ±π; use connection formulas".into(),
        ));
    }
    if w.re < -1.0 && z.arg().abs() > 0.5 * PI + 0.05 {
        // For substantially negative real parameter the reflected Stokes
        // multiplier ~1/Γ(1/2+w) is enormous; stay in the safe half-plane.
        return Err(Error::Domain(
            "pcf_u with Re a < -1 supports |arg z| <= π/2 only".into(),
        ));
    }
    if r >= anchor_radius(w.norm()) {
        let (f, df, err, n) = u_poincare(w, z)?;
        return Ok((
            EvalResult::new(f, err, Method::Asymptotic(n)),
            EvalResult::new(df, err * (1.0 + df.norm() / f.norm().max(1e-300)), Method::Asymptotic(n)),
        ));
    }
    let (f, df, err) = u_stepped(w, z)?;
    Ok((
        EvalResult::new(f, err, Method::Asymptotic(0)),
        EvalResult::new(df, err * (1.0 + df.norm() / f.norm().max(1e-300)), Method::Asymptotic(0)),
    ))
}

/// U(a, z) for complex parameter and argument.
pub fn pcf_u(a: Complex64, z: Complex64) -> Result<EvalResult> {
    pcf_u_full(a, z).map(|(v, _)| v)
}

/// Rotated homogeneous Weber solutions W_j(a,z) = U((−1)^j ia, (−i)^j z e^{−iπ/4}).
pub fn w_j_full(a: f64, z: Complex64, j: u8) -> Result<(EvalResult, EvalResult)> {
    if j > 3 {
        return Err(Error::Domain("w_j takes j in 0..=3".into()));
    }
    let w = cx(0.0, if j % 2 == 0 { a } else { -a });
    let rot = match j {
        0 => Complex64::from_polar(1.0, -PI / 4.0),
        1 => Complex64::from_polar(1.0, -3.0 * PI / 4.0),
        2 => Complex64::from_polar(1.0, 3.0 * PI / 4.0),
        _ => Complex64::from_polar(1.0, PI / 4.0),
    };
    let (v, d) = pcf_u_full(w, z * rot)?;
    // chain rule for the derivative in z
    Ok((v, EvalResult::new(d.value * rot, d.abs_err, d.method)))
}

pub fn w_j(a: f64, z: Complex64, j: u8) -> Result<EvalResult> {
    w_j_full(a, z, j).map(|(v, _)| v)
}

/// U_j(a,z) = U((−1)^j a, (−i)^j z) for j ∈ {0, 1, 3}.
pub fn u_j_full(a: f64, z: Complex64, j: u8) -> Result<(EvalResult, EvalResult)> {
    let (sgn, rot) = match j {
        0 => (1.0, cx(1.0, 0.0)),
        1 => (-1.0, cx(0.0, -1.0)),
        3 => (-1.0, cx(0.0, 1.0)),
        _ => return Err(Error::Domain("u_j takes j in {0, 1, 3}".into())),
    };
    let (v, d) = pcf_u_full(cx(sgn * a, 0.0), z * rot)?;
    Ok((v, EvalResult::new(d.value * rot, d.abs_err, d.method)))
}

pub fn u_j(a: f64, z: Complex64, j: u8) -> Result<EvalResult> {
    u_j_full(a, z, j).map(|(v, _)| v)
}

/// Maclaurin series for W(a,·) itself, seeded by the exact origin values:
/// no assembly through W₀/W₃, hence no e^{πa}-scale cancellation at small
/// arguments. Returns (W, W', err).
fn w_series(a: f64, z: Complex64) -> (Complex64, Complex64, f64) {
    let (w0, dw0) = w_origin(a);
    let mut c = vec![cx(0.0, 0.0); 460];
    c[0] = cx(w0, 0.0);
    c[1] = cx(dw0, 0.0);
    let mut val = c[0] + c[1] * z;
    let mut der = c[1];
    let mut peak = val.norm();
    let mut zn = z * z;
    let mut znm1 = z;
    let mut small = 0;
    for n in 0..456 {
        let prev = if n >= 2 { c[n - 2] } else { cx(0.0, 0.0) };
        // y'' = (a − z²/4) y
        c[n + 2] = (a * c[n] - 0.25 * prev) / ((n as f64 + 1.0) * (n as f64 + 2.0));
        let t = c[n + 2] * zn;
        val += t;
        der += (n as f64 + 2.0) * c[n + 2] * znm1;
        peak = peak.max(val.norm());
        if t.norm() < 1e-17 * val.norm().max(1e-300) {
            small += 1;
            if small >= 6 && n > 8 {
                break;
            }
        } else {
            small = 0;
        }
        zn *= z;
        znm1 *= z;
    }
    (val, der, 1e-16 * peak)
}

/// W(a, z) for complex z via the W₀/W₃ combination (small |z| goes through
/// the direct series). Returns the complex value; use [`w_real`] on the
/// real line.
pub fn w_complex(a: f64, z: Complex64) -> Result<EvalResult> {
    if z.norm() <= series_radius(a.abs()) {
        let (v, _, err) = w_series(a, z);
        return Ok(EvalResult::new(v, err, Method::Series));
    }
    let aux = w_aux(a);
    let pref = (0.5 * aux.k).sqrt() * (0.25 * PI * a).exp();
    let e_rho = Complex64::from_polar(1.0, aux.rho);
    let w0 = w_j(a, z, 0)?;
    let w3 = w_j(a, z, 3)?;
    let value = pref * (e_rho * w0.value + e_rho.conj() * w3.value);
    let err = pref * (w0.abs_err + w3.abs_err);
    Ok(EvalResult::new(value, err, Method::Connection))
}

/// W(a, −z) assembled from W₀(a,z), W₃(a,z) (the reflected combination;
/// small |z| goes through the direct series at −z).
pub fn w_complex_neg(a: f64, z: Complex64) -> Result<EvalResult> {
    if z.norm() <= series_radius(a.abs()) {
        let (v, _, err) = w_series(a, -z);
        return Ok(EvalResult::new(v, err, Method::Series));
    }
    let aux = w_aux(a);
    let pref = (0.5 / aux.k).sqrt() * (0.25 * PI * a).exp();
    let e_rho = Complex64::from_polar(1.0, aux.rho);
    let w0 = w_j(a, z, 0)?;
    let w3 = w_j(a, z, 3)?;
    let value = cx(0.0, -1.0) * pref * (e_rho * w0.value - e_rho.conj() * w3.value);
    let err = pref * (w0.abs_err + w3.abs_err);
    Ok(EvalResult::new(value, err, Method::Connection))
}

/// W(a, x) on the real line: real-valued by construction; the imaginary
/// residue is asserted below 1e-10 relative before being discarded.
pub fn w_real(a: f64, x: f64) -> Result<EvalResult> {
    let r = if x >= 0.0 {
        w_complex(a, cx(x, 0.0))?
    } else {
        w_complex_neg(a, cx(-x, 0.0))?
    };
    let scale = r.value.norm().max(1e-300);
    if r.value.im.abs() > 1e-10 * scale + 1e3 * r.abs_err {
        return Err(Error::NoConverge(format!(
            "w_real imaginary residue {:.3e} exceeds 1e-10 of |value| {:.3e}",
            r.value.im, scale
        )));
    }
    Ok(EvalResult::new(cx(r.value.re, 0.0), r.abs_err, r.method))
}

/// W'(a, x) on the real line (same assembly, derivative components).
pub fn w_real_deriv(a: f64, x: f64) -> Result<EvalResult> {
    if x.abs() <= series_radius(a.abs()) {
        let (_, d, err) = w_series(a, cx(x, 0.0));
        return Ok(EvalResult::new(cx(d.re, 0.0), err, Method::Series));
    }
    let aux = w_aux(a);
    let e_rho = Complex64::from_polar(1.0, aux.rho);
    if x >= 0.0 {
        let pref = (0.5 * aux.k).sqrt() * (0.25 * PI * a).exp();
        let (_, d0) = w_j_full(a, cx(x, 0.0), 0)?;
        let (_, d3) = w_j_full(a, cx(x, 0.0), 3)?;
        let value = pref * (e_rho * d0.value + e_rho.conj() * d3.value);
        Ok(EvalResult::new(cx(value.re, 0.0), pref * (d0.abs_err + d3.abs_err), Method::Connection))
    } else {
        // d/dx W(a,x) = −d/dz [W(a,−z)] at z = −x
        let pref = (0.5 / aux.k).sqrt() * (0.25 * PI * a).exp();
        let (_, d0) = w_j_full(a, cx(-x, 0.0), 0)?;
        let (_, d3) = w_j_full(a, cx(-x, 0.0), 3)?;
        let value = -(cx(0.0, -1.0) * pref * (e_rho * d0.value - e_rho.conj() * d3.value));
        Ok(EvalResult::new(cx(value.re, 0.0), pref * (d0.abs_err + d3.abs_err), Method::Connection))
    }
}
