//! Olver-scaled Gauss hypergeometric series at argument 1/2 and the X(a),
//! Y(a) functionals built from it.
//!
//! Only |z| ≤ 0.7 is supported: every use in this crate has z = 1/2, where
//! the series ratio is ~1/2 and sixty-odd terms reach machine tail.

use num_complex::Complex64;

use crate::gamma::{log_gamma, recip_gamma};
use crate::{cx, Error, Result};

/// X(a) and Y(a): the real and imaginary functionals of
/// (1−2ia)⁻¹ F(1/2, 1; 5/4 − ia/2; 1/2).
///
/// `x_val` is evaluated through the closed gamma form (stable for large a),
/// `y_val` through the direct series.
#[derive(Debug, Clone, Copy)]
pub struct XYPair {
    pub x_val: f64,
    pub y_val: f64,
}

const MAX_TERMS: usize = 500;

/// Olver's scaled hypergeometric function
/// 𝐅(a,b;c;z) = Σ (a)_s (b)_s z^s / (Γ(c+s) s!), entire in c.
///
/// Stops once three consecutive terms fall below 1e-17 of the partial sum;
/// errors if 500 terms do not reach that tail.
pub fn olver_f(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() > 0.7 {
        return Err(Error::Domain("olver_f supports |z| <= 0.7 only".into()));
    }
    let mut sum = cx(0.0, 0.0);
    let mut poch = cx(1.0, 0.0); // (a)_s (b)_s z^s / s!
    let mut small = 0;
    for s in 0..MAX_TERMS {
        let term = poch * recip_gamma(c + s as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        let sf = s as f64;
        poch *= (a + sf) * (b + sf) * z / (sf + 1.0);
    }
    Err(Error::NoConverge("olver_f tail criterion not met in 500 terms".into()))
}

/// Unscaled Gauss series F(a,b;c;z) = Σ (a)_s (b)_s z^s / ((c)_s s!).
/// Same convergence regime as [`olver_f`].
pub fn gauss_f(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() > 0.7 {
        return Err(Error::Domain("gauss_f supports |z| <= 0.7 only".into()));
    }
    let mut sum = cx(0.0, 0.0);
    let mut term = cx(1.0, 0.0);
    let mut small = 0;
    for s in 0..MAX_TERMS {
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        let sf = s as f64;
        term *= (a + sf) * (b + sf) * z / ((c + sf) * (sf + 1.0));
    }
    Err(Error::NoConverge("gauss_f tail criterion not met in 500 terms".into()))
}

/// F(1/2, 1; 5/4 − ia/2; 1/2), the series every X/Y quantity hangs off.
pub(crate) fn f_half(a: f64) -> Complex64 {
    gauss_f(cx(0.5, 0.0), cx(1.0, 0.0), cx(1.25, -0.5 * a), cx(0.5, 0.0))
        .expect("argument 1/2 always converges")
}

/// X(a) from the closed form |Γ(1/4 + ia/2)|² / (4√(2π)) and Y(a) from the
/// direct series. The direct real-part route for X cancels catastrophically
/// for large a and is kept only as a cross-check (`x_direct`).
pub fn xy(a: f64) -> XYPair {
    let lg = log_gamma(cx(0.25, 0.5 * a)).expect("1/4 + ia/2 is off the cut");
    let x_val = (2.0 * lg.re).exp() / (4.0 * (2.0 * std::f64::consts::PI).sqrt());
    let y_val = ((1.0 / cx(1.0, -2.0 * a)) * f_half(a)).im;
    XYPair { x_val, y_val }
}

/// Re{(1−2ia)⁻¹ F(1/2,1;5/4−ia/2;1/2)}: the unstable direct route to X(a).
pub fn x_direct(a: f64) -> f64 {
    ((1.0 / cx(1.0, -2.0 * a)) * f_half(a)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use std::f64::consts::PI;

    #[test]
    fn olver_f_at_zero_argument() {
        // Only s = 0 survives: 𝐅(1/2, 1; c; 0) = 1/Γ(c).
        for &c in &[cx(1.25, -3.0), cx(0.5, 0.0), cx(-2.0, 0.0)] {
            let f = olver_f(cx(0.5, 0.0), cx(1.0, 0.0), c, cx(0.0, 0.0)).unwrap();
            assert!((f - recip_gamma(c)).norm() < 1e-14);
        }
    }

    #[test]
    fn olver_f_matches_brute_force_summation() {
        // Long direct summation with fresh reciprocal gammas. 120 terms put
        // the tail at ~2^-120; beyond ~170 the Pochhammer product overflows.
        let (a, b, c, z) = (cx(0.5, 0.0), cx(1.0, 0.0), cx(1.25, 0.0), cx(0.5, 0.0));
        let mut brute = cx(0.0, 0.0);
        let mut poch = cx(1.0, 0.0);
        for s in 0..120 {
            brute += poch * recip_gamma(c + s as f64);
            let sf = s as f64;
            poch *= (a + sf) * (b + sf) * z / (sf + 1.0);
        }
        let f = olver_f(a, b, c, z).unwrap();
        assert!((f - brute).norm() / brute.norm() < 1e-14);
    }

    #[test]
    fn olver_f_doubling_term_cap_is_stable() {
        // The tail criterion leaves < 1e-13 relative behind at z = 1/2.
        let f = olver_f(cx(0.5, 0.0), cx(1.0, 0.0), cx(1.25, -5.0), cx(0.5, 0.0)).unwrap();
        let mut long = cx(0.0, 0.0);
        let mut poch = cx(1.0, 0.0);
        for s in 0..120 {
            long += poch * recip_gamma(cx(1.25, -5.0) + s as f64);
            let sf = s as f64;
            poch *= (cx(0.5, 0.0) + sf) * (cx(1.0, 0.0) + sf) * cx(0.5, 0.0) / (sf + 1.0);
        }
        assert!((f - long).norm() / long.norm() < 1e-13);
    }

    #[test]
    fn paper_value_large_a() {
        // e^{−πi/4}/Γ(3/4 + 10i) · 𝐅(1/2,1;5/4−10i;1/2): the real part is
        // ~7e11 while the imaginary part is −0.1262 — the classic unstable
        // extraction. The real part is fine to compute directly.
        let a = 20.0;
        let g = gamma(cx(0.75, 0.5 * a)).unwrap();
        let f = olver_f(cx(0.5, 0.0), cx(1.0, 0.0), cx(1.25, -0.5 * a), cx(0.5, 0.0)).unwrap();
        let v = cx(0.0, -PI / 4.0).exp() / g * f;
        assert!((v.re / 7.0167e11 - 1.0).abs() < 5e-4, "re = {:e}", v.re);
        // Stable imaginary part: Im = −(2/π)(e^{πa/2} X − e^{−πa/2} Y).
        let p = xy(a);
        let im_stable =
            -(2.0 / PI) * ((0.5 * PI * a).exp() * p.x_val - (-0.5 * PI * a).exp() * p.y_val);
        assert!((im_stable / -0.1262 - 1.0).abs() < 5e-4, "im = {im_stable}");
    }

    #[test]
    fn xy_at_zero() {
        let p = xy(0.0);
        // Real series at a = 0 has zero imaginary part.
        assert!(p.y_val.abs() < 1e-15);
        let g14 = gamma(cx(0.25, 0.0)).unwrap().re;
        assert!((p.x_val - g14 * g14 / (4.0 * (2.0 * PI).sqrt())).abs() < 1e-13);
    }

    #[test]
    fn y_large_a_series() {
        // Y(a) ~ Σ y_{2k+1} a^{−2k−1}, y₁ = 1/2, y₃ = 1/4, y₅ = 7/8, y₇ = 139/16.
        let a: f64 = 20.0;
        let approx = 0.5 / a + 0.25 / a.powi(3) + 0.875 / a.powi(5) + (139.0 / 16.0) / a.powi(7);
        assert!((xy(a).y_val - approx).abs() < 1e-6);
    }

    #[test]
    fn y_antisymmetry() {
        assert!((xy(-3.0).y_val + xy(3.0).y_val).abs() < 1e-14);
    }

    #[test]
    fn x_closed_form_vs_direct() {
        // Moderate a: the unstable route still has digits to compare.
        for &a in &[0.0, 1.0, 5.0] {
            let p = xy(a);
            assert!(
                (p.x_val - x_direct(a)).abs() / p.x_val < 1e-8,
                "a = {a}: {} vs {}",
                p.x_val,
                x_direct(a)
            );
        }
    }

    #[test]
    fn connection_identity_12ff() {
        // F(1/2,1;5/4−ia/2;1/2) rebuilt from the reflected-parameter series
        // plus the gamma-modulus term, across a ∈ [0, 30].
        for k in 0..=10 {
            let a = 3.0 * k as f64;
            let lhs = f_half(a);
            let f_conj =
                gauss_f(cx(0.5, 0.0), cx(1.0, 0.0), cx(1.25, 0.5 * a), cx(0.5, 0.0)).unwrap();
            let m = cx(1.0, -2.0 * a) / cx(1.0, 2.0 * a);
            let lg = log_gamma(cx(0.25, 0.5 * a)).unwrap();
            let g2 = (2.0 * lg.re).exp();
            let rhs = -m * f_conj + cx(1.0, -2.0 * a) * g2 / (2.0 * (2.0 * PI).sqrt());
            assert!(
                (lhs - rhs).norm() / lhs.norm() < 1e-8,
                "12ff failed at a = {a}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn x_asymptotic_decay() {
        // X(a) ~ (√π/2) e^{−πa/2} / √a within 5% for a ≥ 10.
        for &a in &[10.0, 20.0, 40.0] {
            let approx = 0.5 * PI.sqrt() * (-0.5 * PI * a).exp() / a.sqrt();
            assert!((xy(a).x_val / approx - 1.0).abs() < 0.05, "a = {a}");
        }
    }
}
