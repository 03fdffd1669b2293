use std::fmt;

use num_complex::Complex64;

/// How a value was produced. Carried on every [`EvalResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Convergent power series (Maclaurin/Taylor, possibly ODE-stepped).
    Series,
    /// Truncated asymptotic expansion; the payload is the truncation index.
    Asymptotic(u32),
    /// Adaptive numerical quadrature.
    Quadrature,
    /// Assembled through a connection formula from other evaluations.
    Connection,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Series => write!(f, "series"),
            Method::Asymptotic(n) => write!(f, "asymptotic({n})"),
            Method::Quadrature => write!(f, "quadrature"),
            Method::Connection => write!(f, "connection"),
        }
    }
}

/// A computed value with an absolute error estimate and a method tag.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex64,
    /// Estimated absolute error of `value`.
    pub abs_err: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: Complex64, abs_err: f64, method: Method) -> Self {
        EvalResult { value, abs_err, method }
    }

    /// Real part, for functions that are real-valued by construction.
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A documented precondition was violated; the message names it.
    Domain(String),
    /// Evaluation at or too close to a pole of the function.
    Pole(String),
    /// Result exceeds double range; reported instead of returning infinity.
    Overflow(String),
    /// An iterative scheme failed to meet its tail criterion.
    NoConverge(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Pole(m) => write!(f, "pole error: {m}"),
            Error::Overflow(m) => write!(f, "overflow: {m}"),
            Error::NoConverge(m) => write!(f, "no convergence: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
