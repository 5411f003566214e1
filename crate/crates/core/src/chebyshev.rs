//! Chebyshev polynomials of the second kind in exact integer arithmetic.
//!
//! For integer `k ≥ 1` the odd polynomial `U_{2k-1}` is stored as
//! `U_{2k-1}(x) = x (u_0 + u_1 x² + … + u_{k-1} x^{2k-2})`, and at
//! `x = cosh θ` it satisfies `U_{2k-1}(cosh θ) = sinh(2kθ) / sinh θ`.
//! Putting `θ = x/2` gives the rearrangement `sinh(kx)/sinh(x/2)`
//! used by the spectral integrands.
//!
//! The determinant product rule expresses `det P_{2k}(d)` through powers
//! `v_j(k) = (-1)^{k-1} (-1)^j u_j(k) / 2^{2j+1}` of `det P_2(d - 2j)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hyperbolic::ln_sinh;

/// Above this argument the log-space evaluation switches from the
/// polynomial to the hyperbolic ratio.
pub const POLYNOMIAL_LIMIT: f64 = 1.5;

/// Exact odd-power coefficients of `U_{2k-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddChebyshev {
    k: u32,
    u: Vec<BigInt>,
    // Coefficients of U_{2k-1}(1 + z) in powers of z. All positive, since
    // every root of U_n lies in (-1, 1).
    shifted: Vec<f64>,
    odd: Vec<f64>,
}

impl OddChebyshev {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `u[j]` is the coefficient of `x^{2j+1}`.
    pub fn u(&self) -> &[BigInt] {
        &self.u
    }

    /// Degree of the polynomial, `2k - 1`.
    pub fn degree(&self) -> u32 {
        2 * self.k - 1
    }

    /// `U_{2k-1}(y)` by Horner's rule.
    ///
    /// For `|y| ≥ 1` the polynomial is evaluated in the shifted variable
    /// `|y| - 1`, where every coefficient is positive and no cancellation
    /// occurs; inside `(-1, 1)` the odd monomial form is used directly.
    pub fn eval(&self, y: f64) -> f64 {
        if y >= 1.0 {
            self.eval_above_one(y - 1.0)
        } else if y <= -1.0 {
            -self.eval_above_one(-y - 1.0)
        } else {
            let y2 = y * y;
            y * self.odd.iter().rev().fold(0.0, |acc, &c| acc * y2 + c)
        }
    }

    /// `U_{2k-1}(1 + z)` for `z ≥ 0`.
    ///
    /// Taking `z` directly avoids the cancellation in forming `y - 1` when
    /// the caller can compute it accurately (e.g. `cosh t - 1 = 2 sinh²(t/2)`).
    pub fn eval_above_one(&self, z: f64) -> f64 {
        self.shifted.iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }

    /// `ln U_{2k-1}(cosh t)` for `t ≥ 0`, finite for arbitrarily large `t`.
    pub fn ln_eval_cosh(&self, t: f64) -> f64 {
        let t = t.abs();
        if t.cosh() <= POLYNOMIAL_LIMIT {
            let half = (0.5 * t).sinh();
            self.eval_above_one(2.0 * half * half).ln()
        } else {
            ln_sinh(2.0 * f64::from(self.k) * t) - ln_sinh(t)
        }
    }
}

/// Exact powers `v_j(k)` of the determinant product rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRule {
    k: u32,
    v: Vec<BigInt>,
}

impl ProductRule {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `v[j]` is the power of `det P_2(d - 2j)`.
    pub fn v(&self) -> &[BigInt] {
        &self.v
    }

    /// The powers as floating-point weights. Exact while `v[j] < 2^53`.
    pub fn weights(&self) -> Vec<f64> {
        self.v
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// The powers as machine integers, if they all fit.
    pub fn powers_u64(&self) -> Option<Vec<u64>> {
        self.v.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for ProductRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}(d) ~", 2 * self.k)?;
        for (j, v) in self.v.iter().enumerate() {
            let power = if v.is_one() {
                String::new()
            } else {
                format!("^{v}")
            };
            if j == 0 {
                write!(f, " P_2{power}(d)")?;
            } else {
                write!(f, " P_2{power}(d-{})", 2 * j)?;
            }
        }
        Ok(())
    }
}

/// Full monomial coefficients of `U_n` via `U_{n+1} = 2x U_n - U_{n-1}`.
fn chebyshev_u_monomials(n: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut curr: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(2)];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); curr.len() + 1];
        for (i, c) in curr.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, p) in prev.iter().enumerate() {
            next[i] -= p;
        }
        prev = curr;
        curr = next;
    }
    curr
}

/// Taylor shift: coefficients of `p(1 + z)` from those of `p(x)`.
fn shift_to_one(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut out = coeffs.to_vec();
    let n = out.len();
    // Repeated synthetic division by (x - 1).
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let carry = out[j + 1].clone();
            out[j] += carry;
        }
    }
    out
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// Odd-form coefficients of `U_{2k-1}`.
pub fn u_coefficients(k: u32) -> Result<OddChebyshev> {
    check_order(k)?;
    let full = chebyshev_u_monomials(2 * k as usize - 1);
    debug_assert!(full.iter().step_by(2).all(Zero::is_zero));
    let u: Vec<BigInt> = full.iter().skip(1).step_by(2).cloned().collect();

    let shifted_exact = shift_to_one(&full);
    if shifted_exact.iter().any(|c| !c.is_positive()) {
        return Err(Error::Internal(format!(
            "shifted coefficients of U_{} are not all positive",
            2 * k - 1
        )));
    }
    let to_f64 = |c: &BigInt| c.to_f64().unwrap_or(f64::INFINITY);
    Ok(OddChebyshev {
        k,
        shifted: shifted_exact.iter().map(to_f64).collect(),
        odd: u.iter().map(to_f64).collect(),
        u,
    })
}

/// `U_{2k-1}(y)`.
pub fn eval_u(k: u32, y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite argument {y}")));
    }
    Ok(u_coefficients(k)?.eval(y))
}

/// `U_{2k-1}(y)` through `sinh(2kθ)/sinh θ` with `|y| = cosh θ`.
///
/// Only valid for `|y| ≥ 1`; kept as an independent check of [`eval_u`].
pub fn eval_u_hyperbolic(k: u32, y: f64) -> Result<f64> {
    check_order(k)?;
    if !y.is_finite() || y.abs() < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "hyperbolic form needs finite |y| >= 1, got {y}"
        )));
    }
    let theta = y.abs().acosh();
    let n = 2.0 * f64::from(k);
    let value = if theta == 0.0 {
        n
    } else {
        (n * theta).sinh() / theta.sinh()
    };
    Ok(value.copysign(y))
}

/// Product-rule powers `v_j(k)`, checked to be exact positive integers.
pub fn v_coefficients(k: u32) -> Result<ProductRule> {
    let cheb = u_coefficients(k)?;
    let mut v = Vec::with_capacity(k as usize);
    for (j, u) in cheb.u().iter().enumerate() {
        let denom = BigInt::one() << (2 * j + 1);
        if !(u % &denom).is_zero() {
            return Err(Error::Internal(format!(
                "u_{j}({k}) = {u} is not divisible by 2^{}",
                2 * j + 1
            )));
        }
        let mut q = u / &denom;
        if (k as usize - 1 + j) % 2 == 1 {
            q = -q;
        }
        if !q.is_positive() {
            return Err(Error::Internal(format!("v_{j}({k}) = {q} is not positive")));
        }
        v.push(q);
    }
    Ok(ProductRule { k, v })
}
