//! Complex gamma function and helpers.
//!
//! `gamma` is a fixed Lanczos kernel (15 hard-coded coefficients, good to
//! roughly 1e-13 relative over the ranges used here) with reflection for
//! `Re z < 1/2`. `log_gamma` keeps the imaginary part continuous by walking a
//! recurrence ladder instead of taking principal values, which is what the
//! phase `φ₂ = arg Γ(1/2 + ia)` needs. `stirling_gamma` is the classical
//! divergent series, kept as an independent cross-check.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{cx, Error, Result};

/// Lanczos g parameter (607/128) for the 15-coefficient kernel below.
const LANCZOS_G: f64 = 4.7421875;

const LANCZOS_C: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Stirling series coefficients g_k; g_0 = 1, g_1 = 1/12.
pub const STIRLING_G: [(i64, i64); 8] = [
    (1, 1),
    (1, 12),
    (1, 288),
    (-139, 51840),
    (-571, 2488320),
    (163879, 209018880),
    (5246819, 75246796800),
    (-534703531, 902961561600),
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn lanczos_sum(z: Complex64) -> Complex64 {
    // A_g(z) with z >= 1/2 convention: c0 + sum c_k / (z - 1 + k)
    let mut s = cx(LANCZOS_C[0], 0.0);
    for (k, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        s += c / (z + (k as f64 - 1.0));
    }
    s
}

/// Γ(z) for complex z. Reflection is used for `Re z < 1/2`.
///
/// Errors at the poles (nonpositive integers) and when |Γ| overflows the
/// double range.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma pole at z = {z}")));
    }
    let g = if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let s = (PI * z).sin();
        if s.norm() == 0.0 {
            return Err(Error::Pole(format!("gamma pole at z = {z}")));
        }
        PI / (s * gamma_kernel(1.0 - z))
    } else {
        gamma_kernel(z)
    };
    if !g.re.is_finite() || !g.im.is_finite() {
        return Err(Error::Overflow(format!("gamma overflow at z = {z}")));
    }
    Ok(g)
}

fn gamma_kernel(z: Complex64) -> Complex64 {
    let t = z + (LANCZOS_G - 0.5);
    let s = lanczos_sum(z);
    (2.0 * PI).sqrt() * t.powc(z - 0.5) * (-t).exp() * s
}

/// 1/Γ(z); zero at the poles, never errors for finite z.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return cx(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1−z) / π
        (PI * z).sin() * gamma_kernel(1.0 - z) / PI
    } else {
        let g = gamma_kernel(z);
        1.0 / g
    }
}

/// ln Γ(z) with imaginary part continuous along paths avoiding (−∞, 0].
///
/// For `Re z` large enough the direct log of the Lanczos form is used (its
/// pieces stay in the right half-plane, so the principal logs are already
/// continuous). Smaller arguments walk up with `ln Γ(z) = ln Γ(z+n) − Σ Log(z+k)`;
/// each `z+k` has positive real part, so no winding is lost.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::Domain(
            "log_gamma branch cut on the nonpositive real axis".into(),
        ));
    }
    if z.re >= 0.5 {
        return Ok(log_gamma_core(z));
    }
    // Ladder up across the strip; z+k stays off (−∞,0] because Im z ≠ 0.
    let n = (0.5 - z.re).ceil() as usize;
    let mut acc = cx(0.0, 0.0);
    for k in 0..n {
        acc += (z + k as f64).ln();
    }
    Ok(log_gamma_core(z + n as f64) - acc)
}

fn log_gamma_core(z: Complex64) -> Complex64 {
    let t = z + (LANCZOS_G - 0.5);
    let s = lanczos_sum(z);
    // For Re z >= 1/2 both t and s live in the right half-plane; the
    // imaginary part of the sum below is continuous in z there.
    0.5 * (2.0 * PI).ln() + (z - 0.5) * t.ln() - t + s.ln()
}

/// Truncated Stirling series Γ(z) ≈ e^{−z} z^z (2π/z)^{1/2} Σ g_k z^{−k}.
///
/// `n_terms` counts the g_k retained (max 8). Requires |z| ≥ 5 away from the
/// negative axis.
pub fn stirling_gamma(z: Complex64, n_terms: usize) -> Result<Complex64> {
    if z.norm() < 5.0 {
        return Err(Error::Domain("stirling_gamma needs |z| >= 5".into()));
    }
    if z.re < 0.0 && z.im.abs() < 1e-8 {
        return Err(Error::Domain(
            "stirling_gamma invalid near the negative real axis".into(),
        ));
    }
    let n = n_terms.min(STIRLING_G.len());
    let mut sum = cx(0.0, 0.0);
    let mut zk = cx(1.0, 0.0);
    for &(num, den) in STIRLING_G.iter().take(n) {
        sum += (num as f64 / den as f64) / zk;
        zk *= z;
    }
    Ok((-z).exp() * z.powc(z) * (2.0 * PI / z).sqrt() * sum)
}

/// (|Γ(1/4 + ia/2)|, |Γ(3/4 + ia/2)|), computed through `log_gamma` so that
/// large |a| underflows gracefully rather than loses digits.
pub fn gamma_quarter_abs(a: f64) -> (f64, f64) {
    let m14 = log_gamma(cx(0.25, 0.5 * a)).map(|l| l.re.exp());
    let m34 = log_gamma(cx(0.75, 0.5 * a)).map(|l| l.re.exp());
    // 1/4 and 3/4 are off the cut for every finite a, so unwrap is safe.
    (m14.unwrap(), m34.unwrap())
}

/// arg Γ(1/2 + ia), zero at a = 0 and continuous in a.
pub fn phi2(a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    log_gamma(cx(0.5, a)).map(|l| l.im).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;

    const SQRT_PI: f64 = 1.7724538509055160273;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(cx(1.0, 0.0)).unwrap(), cx(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma(cx(0.5, 0.0)).unwrap(), cx(SQRT_PI, 0.0)) < 1e-14);
        assert!(rel(gamma(cx(5.0, 0.0)).unwrap(), cx(24.0, 0.0)) < 1e-14);
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let g = gamma(cx(0.5, 1.5)).unwrap();
        let target = PI / (1.5 * PI).cosh();
        assert!((g.norm_sqr() - target).abs() / target < 1e-12);
    }

    #[test]
    fn gamma_reflection_and_recurrence() {
        // Deterministic pseudo-random grid off the integers.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let z = cx(8.0 * next() - 4.0 + 0.31, 6.0 * next() - 3.0 + 0.17);
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (PI * z).sin() / PI;
            assert!(
                (lhs - 1.0).norm() < 1e-10,
                "reflection failed at {z}: {lhs}"
            );
            let g1 = gamma(z + 1.0).unwrap();
            let g0 = gamma(z).unwrap();
            assert!(rel(g1, z * g0) < 1e-11, "recurrence failed at {z}");
        }
    }

    #[test]
    fn gamma_pole_and_overflow() {
        assert!(matches!(gamma(cx(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(cx(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(cx(200.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn log_gamma_values_and_branch() {
        assert!(log_gamma(cx(2.0, 0.0)).unwrap().norm() < 1e-13);
        let lg = log_gamma(cx(0.5, 0.0)).unwrap();
        assert!((lg.re - SQRT_PI.ln()).abs() < 1e-13 && lg.im.abs() < 1e-13);
        // exp(log_gamma) = gamma on Re z > 0
        for &z in &[cx(3.2, 1.0), cx(0.7, -2.0), cx(12.0, 40.0), cx(0.25, 10.0)] {
            assert!(rel(log_gamma(z).unwrap().exp(), gamma(z).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn phi2_continuity() {
        // φ₂(0) = 0, and small steps in a never jump by ~2π.
        assert_eq!(phi2(0.0), 0.0);
        let mut prev = 0.0;
        let mut a = 0.0;
        while a < 12.0 {
            a += 0.05;
            let p = phi2(a);
            assert!((p - prev).abs() < 0.5, "phi2 jump at a = {a}");
            prev = p;
        }
        // arg Γ(1/2+ia) ~ a ln a − a grows for large a; a principal-value
        // implementation would have wrapped back into (−π, π] long before 12.
        assert!(phi2(12.0) > phi2(6.0));
        assert!(phi2(12.0) > std::f64::consts::PI);
    }

    #[test]
    fn stirling_matches_lanczos() {
        // Truncation error is the first omitted term: g_2/z^2 ≈ 8.7e-6 at
        // z = 20 with two terms, machine-level once six terms are kept.
        let z = cx(20.0, 0.0);
        assert!(rel(stirling_gamma(z, 2).unwrap(), gamma(z).unwrap()) < 2e-5);
        assert!(rel(stirling_gamma(z, 6).unwrap(), gamma(z).unwrap()) < 1e-10);
        let z = cx(10.0, 10.0);
        assert!(rel(stirling_gamma(z, 4).unwrap(), gamma(z).unwrap()) < 1e-8);
        assert!(rel(stirling_gamma(z, 6).unwrap(), gamma(z).unwrap()) < 1e-10);
        assert!(stirling_gamma(cx(1.0, 0.0), 4).is_err());
    }

    #[test]
    fn stirling_table_head() {
        assert_eq!(STIRLING_G[0], (1, 1));
        assert_eq!(STIRLING_G[1], (1, 12));
    }

    #[test]
    fn quarter_abs_identities() {
        // a = 0 reduces to real gammas.
        let (m14, m34) = gamma_quarter_abs(0.0);
        assert!((m14 - gamma(cx(0.25, 0.0)).unwrap().re).abs() < 1e-12);
        assert!((m34 - gamma(cx(0.75, 0.0)).unwrap().re).abs() < 1e-12);
        // e^{πa} m14 m34 / (2√π) = e^{πa/2} (π/(1+e^{−2πa}))^{1/2} at a = 3.
        let a = 3.0;
        let (m14, m34) = gamma_quarter_abs(a);
        let lhs = (PI * a).exp() * m14 * m34 / (2.0 * SQRT_PI);
        let rhs = (0.5 * PI * a).exp() * (PI / (1.0 + (-2.0 * PI * a).exp())).sqrt();
        assert!((lhs - rhs).abs() / rhs < 1e-12);
        // Large a stays finite and matches direct moduli.
        let a = 20.0;
        let (m14, m34) = gamma_quarter_abs(a);
        assert!(m14.is_finite() && m14 > 0.0);
        let d14 = gamma(cx(0.25, 10.0)).unwrap().norm();
        let d34 = gamma(cx(0.75, 10.0)).unwrap().norm();
        assert!((m14 - d14).abs() / d14 < 1e-12);
        assert!((m34 - d34).abs() / d34 < 1e-12);
    }
}
