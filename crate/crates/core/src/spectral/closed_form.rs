//! Exact-rational closed forms for the Paneitz (`k = 2`) log-determinant on
//! the 5- and 7-spheres, in terms of `log 2` and `ζ(m)/π^{m-1}`.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use super::{zeta_odd, LogDetResult, Method, SpherePoint, ZETA_REL_TOL};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

/// `overall · (log2_coeff · log 2 + Σ coeff · ζ(m)/π^{m-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub overall: Q,
    pub log2_coeff: Q,
    pub zeta_terms: Vec<(u32, Q)>,
    /// Six-decimal reference value.
    pub reference: f64,
}

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn to_f64(r: Q) -> f64 {
    r.to_f64().expect("small rationals convert")
}

impl ClosedForm {
    pub fn paneitz(d: u32) -> Result<Self> {
        match d {
            5 => Ok(Self {
                overall: q(1, 32),
                log2_coeff: q(7, 1),
                zeta_terms: vec![(3, q(-13, 1)), (5, q(15, 2))],
                reference: 0.104642,
            }),
            7 => Ok(Self {
                overall: q(-1, 256),
                log2_coeff: q(3, 1),
                zeta_terms: vec![(3, q(79, 30)), (5, q(-55, 2)), (7, q(63, 4))],
                reference: -0.008297,
            }),
            _ => Err(Error::Unsupported(format!(
                "Paneitz closed forms are available for d = 5 and d = 7 only (got d = {d})"
            ))),
        }
    }

    /// Value and a propagated error bound.
    pub fn evaluate(&self) -> Result<(f64, f64)> {
        let overall = to_f64(self.overall);
        let mut terms = vec![to_f64(self.log2_coeff) * LN_2];
        let mut zeta_err = 0.0;
        for &(m, coeff) in &self.zeta_terms {
            let t = to_f64(coeff) * zeta_odd(m)? / PI.powi(m as i32 - 1);
            zeta_err += t.abs() * ZETA_REL_TOL;
            terms.push(t);
        }
        let sum: f64 = terms.iter().sum();
        let magnitude: f64 = terms.iter().map(|t| t.abs()).sum();
        let err = overall.abs() * (zeta_err + 8.0 * f64::EPSILON * magnitude);
        Ok((overall * sum, err))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * ({} log 2", self.overall, self.log2_coeff)?;
        for (m, c) in &self.zeta_terms {
            let sign = if *c < Q::from(0) { '-' } else { '+' };
            write!(f, " {sign} {} zeta({m})/pi^{}", c.abs(), m - 1)?;
        }
        f.write_str(")")
    }
}

/// Closed-form `log det P_4(d)` for `d ∈ {5, 7}`.
pub fn closed_form_p4(d: u32) -> Result<LogDetResult> {
    let form = ClosedForm::paneitz(d)?;
    let (value, err_estimate) = form.evaluate()?;
    Ok(LogDetResult {
        value,
        err_estimate,
        method: Method::ClosedForm,
        point: SpherePoint::new(i64::from(d), 2)?,
    })
}
