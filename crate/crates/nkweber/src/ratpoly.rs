//! Exact rational-coefficient polynomials, just enough machinery for the
//! turning-point coefficient recursions (products, derivatives, term-wise
//! antiderivatives, exact evaluation at rational points and at β = i).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cx;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense polynomial with exact rational coefficients; `coeffs[k]` multiplies x^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        RatPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &Rat) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * Rat::from(BigInt::from(k)));
        }
        RatPoly::from_coeffs(out)
    }

    /// Term-wise antiderivative with zero constant term.
    pub fn antiderivative(&self) -> RatPoly {
        let mut out = vec![Rat::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rat::from(BigInt::from(k + 1)));
        }
        RatPoly::from_coeffs(out)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact value at x = i for a polynomial with only even powers
    /// (i^{2k} = (−1)^k keeps everything rational).
    pub fn eval_at_i_even(&self) -> Rat {
        let mut acc = Rat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            assert!(k % 2 == 0, "eval_at_i_even needs even powers only");
            if (k / 2) % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = cx(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn is_odd_function(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    pub fn is_even_function(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Human-readable form like "5/24 x^3 + 1/4 x", highest power first.
    pub fn pretty(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coeff = if mag == Rat::from(BigInt::from(1)) && k > 0 {
                String::new()
            } else {
                format!("{mag} ")
            };
            let term = match k {
                0 => format!("{mag}"),
                1 => format!("{coeff}{var}"),
                _ => format!("{coeff}{var}^{k}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{term}") } else { term });
            } else {
                parts.push(format!("{} {term}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of float conversions for huge ints.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
