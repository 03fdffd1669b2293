//! Adaptive Runge-Kutta integration of y'' + q(z) y = r(z) along complex
//! polyline paths. This is the second verification oracle next to
//! [`crate::quad`]; the coefficient functions are closures, so it shares no
//! code with the evaluators it checks.
//!
//! Dormand-Prince 5(4) embedded pair with step control, hard-capped at 1e6
//! steps.

use num_complex::Complex64;

use crate::{cx, Error, Result};

/// A polyline in the complex plane together with the local error tolerance.
#[derive(Debug, Clone)]
pub struct OdePath {
    pub waypoints: Vec<Complex64>,
    pub tolerance: f64,
}

impl OdePath {
    /// Straight path on the real axis from 0 to x.
    pub fn real_line(x: f64, tolerance: f64) -> Self {
        OdePath { waypoints: vec![cx(0.0, 0.0), cx(x, 0.0)], tolerance }
    }

    pub fn new(waypoints: Vec<Complex64>, tolerance: f64) -> Self {
        OdePath { waypoints, tolerance }
    }
}

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy)]
struct State {
    y: Complex64,
    dy: Complex64,
}

/// Solve y'' + q(z) y = r(z) along `path`, starting from y, y' at the first
/// waypoint. Returns (y, y') at the last waypoint.
pub fn ode_integrate(
    coeff_q: impl Fn(Complex64) -> Complex64,
    rhs: impl Fn(Complex64) -> Complex64,
    y0: Complex64,
    dy0: Complex64,
    path: &OdePath,
) -> Result<(Complex64, Complex64)> {
    if path.waypoints.len() < 2 {
        return Err(Error::Domain("ode path needs at least two waypoints".into()));
    }
    let tol = path.tolerance.max(1e-14);
    let mut state = State { y: y0, dy: dy0 };
    let mut steps_left: usize = 1_000_000;
    for seg in path.waypoints.windows(2) {
        let (z0, z1) = (seg[0], seg[1]);
        let len = (z1 - z0).norm();
        if len == 0.0 {
            return Err(Error::Domain("consecutive waypoints coincide".into()));
        }
        let dir = (z1 - z0) / len;
        // Derivative of (y, y') with respect to arclength s.
        let f = |s: f64, st: &State| {
            let z = z0 + s * dir;
            let ddy = rhs(z) - coeff_q(z) * st.y;
            (st.dy * dir, ddy * dir)
        };
        let mut s = 0.0;
        let mut h = (len / 16.0).min(0.1).max(1e-8);
        let mut k = [(cx(0.0, 0.0), cx(0.0, 0.0)); 7];
        let (d0, d1) = f(0.0, &state);
        k[0] = (d0, d1);
        while s < len {
            if steps_left == 0 {
                return Err(Error::NoConverge("ode step budget (1e6) exhausted".into()));
            }
            steps_left -= 1;
            if s + h > len {
                h = len - s;
            }
            for i in 0..6 {
                let mut yy = state.y;
                let mut dd = state.dy;
                for (j, kj) in k.iter().enumerate().take(i + 1) {
                    yy += h * A[i][j] * kj.0;
                    dd += h * A[i][j] * kj.1;
                }
                let st = State { y: yy, dy: dd };
                let c = match i {
                    0 => 0.2,
                    1 => 0.3,
                    2 => 0.8,
                    3 => 8.0 / 9.0,
                    _ => 1.0,
                };
                k[i + 1] = f(s + c * h, &st);
            }
            let mut ynew = state.y;
            let mut dynew = state.dy;
            let mut ey = cx(0.0, 0.0);
            let mut ed = cx(0.0, 0.0);
            for (j, kj) in k.iter().enumerate() {
                ynew += h * B[j] * kj.0;
                dynew += h * B[j] * kj.1;
                ey += h * E[j] * kj.0;
                ed += h * E[j] * kj.1;
            }
            let scale_y = tol * (1.0 + state.y.norm().max(ynew.norm()));
            let scale_d = tol * (1.0 + state.dy.norm().max(dynew.norm()));
            let err = (ey.norm() / scale_y).max(ed.norm() / scale_d);
            if err <= 1.0 {
                s += h;
                state = State { y: ynew, dy: dynew };
                k[0] = k[6]; // FSAL
                if err < 1e-30 {
                    h *= 5.0;
                } else {
                    h *= (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
                }
            } else {
                h *= (0.9 * err.powf(-0.2)).clamp(0.05, 0.9);
                if h < 1e-13 * len {
                    return Err(Error::NoConverge("ode step size collapsed".into()));
                }
                let (d0, d1) = f(s, &state);
                k[0] = (d0, d1);
            }
        }
        // Re-seed the FSAL derivative for the next segment's direction.
        if path.waypoints.len() > 2 {
            let (d0, d1) = f(len, &state);
            k[0] = (d0, d1);
            let _ = (d0, d1);
        }
    }
    Ok((state.y, state.dy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2};

    #[test]
    fn sine_quarter_period() {
        // y'' + y = 0, y(0) = 0, y'(0) = 1 → (sin, cos) at π/2.
        let (y, dy) = ode_integrate(
            |_| cx(1.0, 0.0),
            |_| cx(0.0, 0.0),
            cx(0.0, 0.0),
            cx(1.0, 0.0),
            &OdePath::real_line(FRAC_PI_2, 1e-12),
        )
        .unwrap();
        assert!((y.re - 1.0).abs() < 1e-10 && dy.norm() < 1e-10);
    }

    #[test]
    fn exponential_growth() {
        // y'' = y, y(0) = y'(0) = 1 → e^x.
        let (y, dy) = ode_integrate(
            |_| cx(-1.0, 0.0),
            |_| cx(0.0, 0.0),
            cx(1.0, 0.0),
            cx(1.0, 0.0),
            &OdePath::real_line(1.0, 1e-12),
        )
        .unwrap();
        assert!((y.re - E).abs() < 1e-10 && (dy.re - E).abs() < 1e-10);
    }

    #[test]
    fn path_independence() {
        // Entire coefficients: two homotopic paths to the same endpoint agree.
        let q = |z: Complex64| z * z * 0.25 - 1.5;
        let r = |_| cx(-1.0, 0.0);
        let end = cx(2.0, 1.0);
        let tol = 1e-11;
        let p1 = OdePath::new(vec![cx(0.0, 0.0), end], tol);
        let p2 = OdePath::new(vec![cx(0.0, 0.0), cx(0.0, 1.2), cx(2.0, 1.2), end], tol);
        let (y1, d1) = ode_integrate(q, r, cx(0.0, 0.0), cx(0.0, 0.0), &p1).unwrap();
        let (y2, d2) = ode_integrate(q, r, cx(0.0, 0.0), cx(0.0, 0.0), &p2).unwrap();
        assert!((y1 - y2).norm() <= 10.0 * tol * (1.0 + y1.norm()));
        assert!((d1 - d2).norm() <= 10.0 * tol * (1.0 + d1.norm()));
    }

    #[test]
    fn rejects_degenerate_paths() {
        let p = OdePath::new(vec![cx(0.0, 0.0), cx(0.0, 0.0)], 1e-10);
        assert!(ode_integrate(|_| cx(1.0, 0.0), |_| cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), &p).is_err());
    }
}
