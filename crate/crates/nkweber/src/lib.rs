//! Nield-Kuznetsov and Weber parabolic cylinder functions.
//!
//! This crate evaluates the parametric Nield-Kuznetsov functions `N_W(a,x)`
//! and `N̂_W(a,z)` (particular solutions of the inhomogeneous Weber equation
//! `y'' + (x²/4 − a)y = −1`), the Weber parabolic cylinder functions
//! `U(a,z)`, `W(a,±x)` and the rotated solutions `W_j(a,z)`, together with
//!
//! * connection formulas and origin values joining all of the above,
//! * uniform asymptotic expansions for large parameter built from Airy and
//!   Scorer functions (turning-point theory),
//! * Laplace transforms of `W(a,±t)` and `U(a,t)` in closed form and as
//!   uniform expansions, and
//! * independent verification oracles (tanh-sinh quadrature on complex rays
//!   and adaptive Runge-Kutta integration of the defining ODEs).
//!
//! Everything is double precision. Each evaluation returns an [`EvalResult`]
//! carrying the value, an absolute error estimate and a tag naming the method
//! that produced it.
//!
//! The `examples/` directory contains one runnable example per capability;
//! the thin `nkweber` binary exposes grid evaluation, coefficient tables,
//! region boundaries and the verification suite.


pub mod airy;
pub mod gamma;
pub mod hypergeom;




pub mod nield;
pub mod ode;
pub mod quad;
pub mod ratpoly;
pub mod turning;
pub mod weber;





mod result;

pub use num_complex::Complex64;
pub use result::{EvalResult, Error, Method, Result};

/// Convenience constructor for a complex number.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
