//! Airy functions Ai, Bi, the rotated solutions Ai_l, and the Scorer
//! function Hi, all for complex argument.
//!
//! Scheme for Ai: Maclaurin series for |z| ≤ 4.5 (cancellation there costs
//! at most ~5 digits of the 16 available), Poincaré asymptotics for
//! |z| ≥ 9.5 where their optimal truncation is at machine level, and in
//! between a Taylor stepping of the Airy ODE inward along the ray from an
//! asymptotic anchor at |z| = 9.5. Stepping toward the origin follows the
//! growing direction of Ai in its recessive sector, so the bridge does not
//! amplify relative error. Arguments with |arg z| > 2π/3 go through the
//! standard rotation connections, whose rotated arguments land back inside
//! the covered sector.
//!
//! Hi uses its Maclaurin series for |z| ≤ 7.5, the inverse-power expansion
//! in the decay sector, Bi minus the complementary series in the growth
//! sector, and quadrature of the defining integral in the two thin wedges
//! around the Stokes rays arg z = ±π/3.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gamma::gamma;
use crate::quad::{quad_interval, Tail};
use crate::{cx, Error, Result};

/// Function value together with its z-derivative.
#[derive(Debug, Clone, Copy)]
pub struct AiryPair {
    pub f: Complex64,
    pub df: Complex64,
}

const SERIES_RADIUS: f64 = 4.5;
const ANCHOR_RADIUS: f64 = 9.5;

/// ξ = (2/3) z^{3/2}, principal branch.
fn xi(z: Complex64) -> Complex64 {
    2.0 / 3.0 * z * z.sqrt()
}

/// Maclaurin series: Ai = c1 f − c2 g, Bi = √3 (c1 f + c2 g) where f, g are
/// the standard even/odd Airy basis. Returns ((f, f'), (g, g')).
fn airy_basis_series(z: Complex64) -> ((Complex64, Complex64), (Complex64, Complex64)) {
    let z3 = z * z * z;
    // f = Σ 3^k (1/3)_k z^{3k} / (3k)!
    let mut term = cx(1.0, 0.0);
    let mut f = term;
    let mut fd = cx(0.0, 0.0); // f' = Σ ... z^{3k-1} * 3k/(...)
    for k in 1..120 {
        let kf = k as f64;
        term *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        f += term;
        fd += term * (3.0 * kf) / z;
        if term.norm() < 1e-18 * f.norm() {
            break;
        }
    }
    // g = Σ 3^k (2/3)_k z^{3k+1} / (3k+1)!
    let mut term = z;
    let mut g = term;
    let mut gd = cx(1.0, 0.0);
    for k in 1..120 {
        let kf = k as f64;
        term *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        g += term;
        gd += term * (3.0 * kf + 1.0) / z;
        if term.norm() < 1e-18 * g.norm() {
            break;
        }
    }
    if z.norm() == 0.0 {
        fd = cx(0.0, 0.0);
        gd = cx(1.0, 0.0);
    }
    ((f, fd), (g, gd))
}

fn airy_constants() -> (f64, f64) {
    // c1 = Ai(0) = 3^{-2/3}/Γ(2/3), c2 = -Ai'(0) = 3^{-1/3}/Γ(1/3)
    let g23 = gamma(cx(2.0 / 3.0, 0.0)).unwrap().re;
    let g13 = gamma(cx(1.0 / 3.0, 0.0)).unwrap().re;
    (3f64.powf(-2.0 / 3.0) / g23, 3f64.powf(-1.0 / 3.0) / g13)
}

fn ai_series(z: Complex64) -> AiryPair {
    let (c1, c2) = airy_constants();
    let ((f, fd), (g, gd)) = airy_basis_series(z);
    AiryPair { f: c1 * f - c2 * g, df: c1 * fd - c2 * gd }
}

fn bi_series(z: Complex64) -> AiryPair {
    let (c1, c2) = airy_constants();
    let ((f, fd), (g, gd)) = airy_basis_series(z);
    let s3 = 3f64.sqrt();
    AiryPair { f: s3 * (c1 * f + c2 * g), df: s3 * (c1 * fd + c2 * gd) }
}

/// Poincaré expansion of Ai, Ai' for |arg z| ≤ π − δ, truncated at the
/// smallest term. Accurate to ~e^{-2|ξ|} relative, i.e. machine level for
/// |z| ≳ 9.
fn ai_asym(z: Complex64) -> Result<AiryPair> {
    let xi = xi(z);
    if -xi.re > 700.0 {
        return Err(Error::Overflow(format!("Ai overflows at z = {z}")));
    }
    let mut u = 1.0f64; // u_k
    let mut v = 1.0f64; // v_k
    let mut su = cx(1.0, 0.0);
    let mut sv = cx(1.0, 0.0);
    let mut w = cx(1.0, 0.0); // (-1/ξ)^k
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        w *= -1.0 / xi;
        let tu = u * w.norm();
        if tu > last {
            break; // smallest term reached
        }
        last = tu;
        su += u * w;
        sv += v * w;
        if tu < 1e-18 {
            break;
        }
    }
    let amp = (-xi).exp() / (2.0 * PI.sqrt());
    let z14 = z.powf(0.25);
    Ok(AiryPair { f: amp / z14 * su, df: -amp * z14 * sv })
}

/// Taylor stepping of w'' = z w from `(f, df)` at `z0` to `z0 + h`.
fn airy_taylor_step(z0: Complex64, p: AiryPair, h: Complex64) -> AiryPair {
    const N: usize = 34;
    let mut c = [cx(0.0, 0.0); N];
    c[0] = p.f;
    c[1] = p.df;
    for k in 0..N - 2 {
        let prev = if k == 0 { cx(0.0, 0.0) } else { c[k - 1] };
        c[k + 2] = (z0 * c[k] + prev) / ((k as f64 + 1.0) * (k as f64 + 2.0));
    }
    let mut f = cx(0.0, 0.0);
    let mut df = cx(0.0, 0.0);
    for k in (0..N).rev() {
        f = f * h + c[k];
        if k >= 1 {
            df = df * h + c[k] * k as f64;
        }
    }
    // df accumulated Σ k c_k h^{k-1} via one fewer Horner multiply
    AiryPair { f, df }
}

/// Ai on the covered sector |arg z| ≲ 2π/3: series, bridge, or asymptotics.
///
/// The bridge direction follows stability: where Ai is recessive
/// (|arg z| ≲ π/3) it grows inward, so stepping in from an asymptotic
/// anchor damps contamination; where it is dominant it grows outward, so
/// the stepping starts from a series anchor inside the disk instead.
fn ai_core(z: Complex64) -> Result<AiryPair> {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        return Ok(ai_series(z));
    }
    if r >= ANCHOR_RADIUS {
        return ai_asym(z);
    }
    let dir = z / r;
    if z.arg().abs() <= PI / 3.0 + 0.05 {
        let mut at = ANCHOR_RADIUS;
        let mut p = ai_asym(dir * ANCHOR_RADIUS)?;
        while at - r > 1e-12 {
            let h = 0.8f64.min(at - r);
            p = airy_taylor_step(dir * at, p, -dir * h);
            at -= h;
        }
        Ok(p)
    } else {
        let start = SERIES_RADIUS - 0.05;
        let mut at = start;
        let mut p = ai_series(dir * start);
        while r - at > 1e-12 {
            let h = 0.8f64.min(r - at);
            p = airy_taylor_step(dir * at, p, dir * h);
            at += h;
        }
        Ok(p)
    }
}

/// Ai(z) and Ai'(z).
pub fn airy(z: Complex64) -> Result<AiryPair> {
    if z.norm() > 1e4 {
        return Err(Error::Domain("airy supports |z| <= 1e4".into()));
    }
    let mut p = if z.arg().abs() <= 2.0 * PI / 3.0 + 1e-12 {
        ai_core(z)?
    } else {
        // Ai(z) = e^{πi/3} Ai(z e^{-2πi/3}) + e^{-πi/3} Ai(z e^{2πi/3});
        // both rotated arguments are inside the covered sector here.
        let rm = cx(0.0, -2.0 * PI / 3.0).exp();
        let rp = cx(0.0, 2.0 * PI / 3.0).exp();
        let pm = ai_core(z * rm)?;
        let pp = ai_core(z * rp)?;
        let em = cx(0.0, PI / 3.0).exp();
        let ep = cx(0.0, -PI / 3.0).exp();
        AiryPair {
            f: em * pm.f + ep * pp.f,
            df: em * rm * pm.df + ep * rp * pp.df,
        }
    };
    if z.im == 0.0 {
        p.f.im = 0.0;
        p.df.im = 0.0;
    }
    Ok(p)
}

/// Bi(z) and Bi'(z), through the rotation connection.
pub fn bairy(z: Complex64) -> Result<AiryPair> {
    if z.norm() > 1e4 {
        return Err(Error::Domain("bairy supports |z| <= 1e4".into()));
    }
    if z.norm() <= SERIES_RADIUS {
        let mut p = bi_series(z);
        if z.im == 0.0 {
            p.f.im = 0.0;
            p.df.im = 0.0;
        }
        return Ok(p);
    }
    // Bi(z) = e^{-πi/6} Ai_1(z) + e^{πi/6} Ai_{-1}(z)
    let p1 = airy_rot(z, 1)?;
    let pm1 = airy_rot(z, -1)?;
    let e1 = cx(0.0, -PI / 6.0).exp();
    let e2 = cx(0.0, PI / 6.0).exp();
    let mut p = AiryPair {
        f: e1 * p1.f + e2 * pm1.f,
        df: e1 * p1.df + e2 * pm1.df,
    };
    if z.im == 0.0 {
        p.f.im = 0.0;
        p.df.im = 0.0;
    }
    Ok(p)
}

/// Rotated Airy solution Ai_l(z) = Ai(z e^{-2πil/3}) for l ∈ {-1, 0, 1},
/// with its z-derivative (chain factor included, so Ai_l solves w'' = zw).
pub fn airy_rot(z: Complex64, l: i32) -> Result<AiryPair> {
    match l {
        0 => airy(z),
        1 | -1 => {
            let rot = cx(0.0, -2.0 * PI * l as f64 / 3.0).exp();
            let p = airy(z * rot)?;
            Ok(AiryPair { f: p.f, df: rot * p.df })
        }
        _ => Err(Error::Domain("airy_rot takes l in {-1, 0, 1}".into())),
    }
}

// ---------------------------------------------------------------------------
// Scorer Hi

const HI_SERIES_RADIUS: f64 = 7.5;
const STOKES_GUARD: f64 = 0.12;

fn hi_series(z: Complex64) -> AiryPair {
    // Hi(z)  = (3^{-2/3}/π) Σ Γ((k+1)/3) (3^{1/3} z)^k / k!
    // Hi'(z) = (3^{-1/3}/π) Σ Γ((k+2)/3) (3^{1/3} z)^k / k!
    let g13 = gamma(cx(1.0 / 3.0, 0.0)).unwrap().re;
    let g23 = gamma(cx(2.0 / 3.0, 0.0)).unwrap().re;
    // Γ((k+1)/3) for k ≡ 0,1,2 (mod 3) cycles through the sequences seeded
    // by Γ(1/3), Γ(2/3), Γ(1).
    let mut ga = [g13, g23, 1.0]; // Γ((k+1)/3) at k = 0,1,2
    let mut gb = [g23, 1.0, g13 * (1.0 / 3.0)]; // Γ((k+2)/3) at k = 0,1,2
    let c = 3f64.powf(1.0 / 3.0);
    let mut pow = cx(1.0, 0.0); // (3^{1/3} z)^k / k!
    let mut s = cx(0.0, 0.0);
    let mut sd = cx(0.0, 0.0);
    for k in 0..400 {
        let m = k % 3;
        let term = ga[m] * pow;
        let termd = gb[m] * pow;
        s += term;
        sd += termd;
        if pow.norm() * ga[m].max(gb[m]) < 1e-18 * s.norm().max(1e-300) && k > 4 {
            break;
        }
        // advance the gamma ladders: Γ(x+1) = x Γ(x)
        ga[m] *= (k as f64 + 1.0) / 3.0;
        gb[m] *= (k as f64 + 2.0) / 3.0;
        pow *= c * z / (k as f64 + 1.0);
    }
    AiryPair {
        f: 3f64.powf(-2.0 / 3.0) / PI * s,
        df: 3f64.powf(-1.0 / 3.0) / PI * sd,
    }
}

/// Σ (3k)!/(k!(3z³)^k) and Σ (3k+1)!/(k!(3z³)^k), truncated at the smallest
/// term; also reports that term's size relative to the leading one.
fn factorial_series(z3: Complex64) -> (Complex64, Complex64, f64) {
    let w = 3.0 * z3;
    let mut t = cx(1.0, 0.0); // (3k)!/(k! w^k)
    let mut s0 = cx(0.0, 0.0);
    let mut s1 = cx(0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut tail = 1.0f64;
    for k in 0..40 {
        let tn = t.norm();
        if tn > last {
            tail = tn;
            break;
        }
        s0 += t;
        s1 += t * (3.0 * k as f64 + 1.0);
        tail = tn;
        last = tn;
        let kf = k as f64;
        t *= (3.0 * kf + 1.0) * (3.0 * kf + 2.0) * (3.0 * kf + 3.0) / ((kf + 1.0) * w);
        if t.norm() < 1e-18 {
            tail = t.norm();
            break;
        }
    }
    (s0, s1, tail)
}

fn hi_inverse_power(z: Complex64) -> AiryPair {
    let (s0, s1, _) = factorial_series(z * z * z);
    AiryPair {
        f: -s0 / (PI * z),
        df: s1 / (PI * z * z),
    }
}

fn gi_inverse_power(z: Complex64) -> AiryPair {
    let (s0, s1, _) = factorial_series(z * z * z);
    AiryPair {
        f: s0 / (PI * z),
        df: -s1 / (PI * z * z),
    }
}

fn hi_quadrature(z: Complex64) -> Result<AiryPair> {
    // Hi(z) = (1/π) ∫_0^∞ exp(−t³/3 + zt) dt; the integrand decays like
    // e^{−t³/3} past the saddle, which the Gaussian tail class covers.
    let max_exp = if z.re > 0.0 { 2.0 / 3.0 * z.re.powf(1.5) } else { 0.0 };
    if max_exp > 690.0 {
        return Err(Error::Overflow(format!("Hi overflows at z = {z}")));
    }
    let f = quad_interval(
        |t| (cx(-t * t * t / 3.0, 0.0) + z * t).exp(),
        0.0,
        f64::INFINITY,
        1e-12,
        Tail::Gaussian,
    )?;
    let fd = quad_interval(
        |t| t * (cx(-t * t * t / 3.0, 0.0) + z * t).exp(),
        0.0,
        f64::INFINITY,
        1e-12,
        Tail::Gaussian,
    )?;
    Ok(AiryPair { f: f.value / PI, df: fd.value / PI })
}

/// Scorer function Hi(z) and Hi'(z).
pub fn scorer_hi(z: Complex64) -> Result<AiryPair> {
    if z.norm() > 1e4 {
        return Err(Error::Domain("scorer_hi supports |z| <= 1e4".into()));
    }
    let mut p = scorer_hi_inner(z)?;
    if z.im == 0.0 {
        p.f.im = 0.0;
        p.df.im = 0.0;
    }
    Ok(p)
}

fn scorer_hi_inner(z: Complex64) -> Result<AiryPair> {
    if z.norm() <= HI_SERIES_RADIUS {
        return Ok(hi_series(z));
    }
    let a = z.arg().abs();
    if a >= PI / 3.0 + STOKES_GUARD {
        // Decay sector: check that the divergent tail actually reached a
        // useful level before trusting it.
        let (_, _, tail) = factorial_series(z * z * z);
        if tail < 1e-9 {
            return Ok(hi_inverse_power(z));
        }
        return hi_quadrature(z);
    }
    if a <= PI / 3.0 - STOKES_GUARD {
        // Growth sector: Hi = Bi − Gi-complement.
        let (_, _, tail) = factorial_series(z * z * z);
        if tail < 1e-9 {
            let b = bairy(z)?;
            let g = gi_inverse_power(z);
            return Ok(AiryPair { f: b.f - g.f, df: b.df - g.df });
        }
        return hi_quadrature(z);
    }
    hi_quadrature(z)
}
