//! Log-determinants of the scalar GJMS operator `P_{2k}` on the unit
//! round `d`-sphere, `d` odd.
//!
//! On the round sphere `P_{2k} = Π_{j<k} (B² - α_j²)` with `α_j = j + 1/2`,
//! and with no multiplicative anomaly in odd dimensions its log-determinant
//! is the sum of the factor log-determinants. Four routes are provided:
//!
//! * [`logdet_direct`]: one integral,
//!   `(-1)^{(d-1)/2+k} / 2^{d-1} ∫₀^∞ π/(x²+π²) · sinh(x/2) sinh(kx) / cosh^{d+1}(x/2) dx`.
//! * [`logdet_sum`]: the sum over `j < k` of [`logdet_factor`].
//! * [`logdet_chebyshev`]: the direct integrand rewritten with
//!   `sinh(kx)/sinh(x/2) = U_{2k-1}(cosh(x/2))`.
//! * [`logdet_product_rule`]: integer powers of `det P_2` at dimensions
//!   `d, d-2, …, d-2k+2`.
//!
//! The Paneitz closed forms for `d = 5, 7` in [`closed_form`] are an
//! independent anchor built on [`zeta_odd`].
//!
//! The factor integrals carry the sign `(-1)^{(d-1)/2+j+1}`. With that sign
//! the sum over factors reproduces the direct integral term by term through
//! `Σ_{j<k} (-1)^j sinh((j+½)x) = (-1)^{k-1} sinh(kx) / (2 cosh(x/2))`.

mod closed_form;
mod zeta;

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::chebyshev::{u_coefficients, v_coefficients, OddChebyshev};
use crate::error::{Error, Result};
use crate::hyperbolic::{ln_cosh, ln_sinh};
use crate::quadrature::{integrate_semi_infinite, Envelope, LogValue, QuadratureSpec};

pub use closed_form::{closed_form_p4, ClosedForm};
pub use zeta::{zeta_odd, ZETA_REL_TOL};

/// Odd sphere dimension `d ≥ 3` and GJMS order `1 ≤ k ≤ (d-1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpherePoint {
    d: u32,
    k: u32,
}

impl SpherePoint {
    pub fn new(d: i64, k: i64) -> Result<Self> {
        if d % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "d must be odd (got d = {d})"
            )));
        }
        if d < 3 {
            return Err(Error::InvalidParameter(format!(
                "d must be at least 3 (got d = {d})"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidParameter(format!(
                "k must be at least 1 (got k = {k})"
            )));
        }
        if 2 * k > d - 1 {
            return Err(Error::InvalidParameter(format!(
                "k must satisfy k ≤ (d−1)/2 (got d = {d}, k = {k})"
            )));
        }
        let d = u32::try_from(d)
            .map_err(|_| Error::InvalidParameter(format!("d = {d} is too large")))?;
        Ok(Self { d, k: k as u32 })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The largest admissible order for the dimension.
    pub fn limiting(d: i64) -> Result<Self> {
        Self::new(d, (d - 1).div_euclid(2))
    }

    /// `(-1)^{(d-1)/2 + k}`.
    pub fn expected_sign(&self) -> f64 {
        if ((self.d - 1) / 2 + self.k).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Decay rate `(d - 2k)/2` of the direct integrand.
    pub fn decay_rate(&self) -> f64 {
        0.5 * f64::from(self.d - 2 * self.k)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, k={})", self.d, self.k)
    }
}

/// Index `j` of the factor `B² - α_j²`, `α_j = j + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorIndex {
    j: u32,
    alpha: f64,
}

impl FactorIndex {
    pub fn new(j: u32) -> Self {
        Self {
            j,
            alpha: f64::from(j) + 0.5,
        }
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Sum,
    Chebyshev,
    ProductRule,
    ClosedForm,
}

impl Method {
    /// The four quadrature-based routes.
    pub const NUMERICAL: [Method; 4] = [
        Method::Direct,
        Method::Sum,
        Method::Chebyshev,
        Method::ProductRule,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Sum => "sum",
            Method::Chebyshev => "chebyshev",
            Method::ProductRule => "product_rule",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "sum" => Ok(Method::Sum),
            "chebyshev" => Ok(Method::Chebyshev),
            "product" | "product_rule" => Ok(Method::ProductRule),
            "closed_form" => Ok(Method::ClosedForm),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDetResult {
    pub value: f64,
    pub err_estimate: f64,
    pub method: Method,
    pub point: SpherePoint,
}

impl LogDetResult {
    /// Whether the value carries the sign `(-1)^{(d-1)/2+k}`, or is too
    /// small relative to its error estimate to tell.
    pub fn sign_consistent(&self) -> bool {
        self.value.abs() <= self.err_estimate || self.value.signum() == self.point.expected_sign()
    }
}

/// A value with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_estimate: f64,
}

fn check_abscissa(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "integrand needs finite x > 0 (got {x})"
        )))
    }
}

fn ln_kernel(x: f64) -> f64 {
    PI.ln() - (x * x + PI * PI).ln()
}

fn ln_direct(d: u32, k: u32, x: f64) -> f64 {
    ln_kernel(x) + ln_sinh(0.5 * x) + ln_sinh(f64::from(k) * x)
        - f64::from(d + 1) * ln_cosh(0.5 * x)
}

/// `π/(x²+π²) · sinh(x/2) sinh(kx) / cosh^{d+1}(x/2)` in log form.
pub fn integrand_direct(point: SpherePoint, x: f64) -> Result<LogValue> {
    check_abscissa(x)?;
    Ok(LogValue::positive(ln_direct(point.d, point.k, x)))
}

fn ln_factor(d: u32, alpha: f64, x: f64) -> f64 {
    ln_kernel(x) + ln_sinh(0.5 * x) + ln_sinh(alpha * x) - f64::from(d) * ln_cosh(0.5 * x)
}

/// `π/(x²+π²) · sinh(x/2) sinh(α_j x) / cosh^d(x/2)` in log form.
pub fn integrand_factor(d: u32, factor: FactorIndex, x: f64) -> Result<LogValue> {
    check_abscissa(x)?;
    Ok(LogValue::positive(ln_factor(d, factor.alpha, x)))
}

fn ln_chebyshev(cheb: &OddChebyshev, d: u32, x: f64) -> f64 {
    ln_kernel(x) + 2.0 * ln_sinh(0.5 * x) + cheb.ln_eval_cosh(0.5 * x)
        - f64::from(d + 1) * ln_cosh(0.5 * x)
}

/// `π/(x²+π²) · sinh²(x/2) U_{2k-1}(cosh(x/2)) / cosh^{d+1}(x/2)` in log form.
pub fn integrand_chebyshev(point: SpherePoint, x: f64) -> Result<LogValue> {
    check_abscissa(x)?;
    let cheb = u_coefficients(point.k)?;
    Ok(LogValue::positive(ln_chebyshev(&cheb, point.d, x)))
}

/// Integrates `exp(ln_f(x) - ln_scale)` where `exp(ln_f) ≤ e^{ln_scale} e^{-λx}/π`.
fn scaled_integral<F>(
    ln_f: F,
    ln_scale: f64,
    decay_rate: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    let spec = spec.with_envelope(Envelope::new(1.0 / PI, decay_rate));
    let r = integrate_semi_infinite(|x| LogValue::positive(ln_f(x) - ln_scale), &spec)?;
    Ok(Estimate {
        value: r.value,
        err_estimate: r.err_estimate,
    })
}

pub fn logdet_direct(point: SpherePoint, spec: &QuadratureSpec) -> Result<LogDetResult> {
    let (d, k) = (point.d, point.k);
    let ln_scale = f64::from(d - 1) * LN_2;
    let est = scaled_integral(|x| ln_direct(d, k, x), ln_scale, point.decay_rate(), spec)?;
    Ok(LogDetResult {
        value: point.expected_sign() * est.value,
        err_estimate: est.err_estimate,
        method: Method::Direct,
        point,
    })
}

/// `log det(B² - α_j²)` on the `d`-sphere.
pub fn logdet_factor(d: u32, factor: FactorIndex, spec: &QuadratureSpec) -> Result<Estimate> {
    if d.is_multiple_of(2) || d < 3 {
        return Err(Error::InvalidParameter(format!(
            "d must be odd and at least 3 (got d = {d})"
        )));
    }
    if 2 * factor.j + 1 >= d {
        return Err(Error::Divergent(format!(
            "factor j = {} diverges on the {d}-sphere (needs 2α_j < d)",
            factor.j
        )));
    }
    let sign = if ((d - 1) / 2 + factor.j + 1).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let ln_scale = f64::from(d - 2) * LN_2;
    // sinh(x/2) sinh(α_j x) / cosh^d(x/2) ≤ 2^{d-2} e^{-(d-2-2j)x/2}
    let decay_rate = 0.5 * f64::from(d - 2 - 2 * factor.j);
    let alpha = factor.alpha;
    let est = scaled_integral(|x| ln_factor(d, alpha, x), ln_scale, decay_rate, spec)?;
    Ok(Estimate {
        value: sign * est.value,
        err_estimate: est.err_estimate,
    })
}

pub fn logdet_sum(point: SpherePoint, spec: &QuadratureSpec) -> Result<LogDetResult> {
    let mut value = 0.0;
    let mut err_estimate = 0.0;
    for j in 0..point.k {
        let est = logdet_factor(point.d, FactorIndex::new(j), spec)?;
        value += est.value;
        err_estimate += est.err_estimate;
    }
    Ok(LogDetResult {
        value,
        err_estimate,
        method: Method::Sum,
        point,
    })
}

pub fn logdet_chebyshev(point: SpherePoint, spec: &QuadratureSpec) -> Result<LogDetResult> {
    let cheb = u_coefficients(point.k)?;
    let d = point.d;
    let ln_scale = f64::from(d - 1) * LN_2;
    let est = scaled_integral(
        |x| ln_chebyshev(&cheb, d, x),
        ln_scale,
        point.decay_rate(),
        spec,
    )?;
    Ok(LogDetResult {
        value: point.expected_sign() * est.value,
        err_estimate: est.err_estimate,
        method: Method::Chebyshev,
        point,
    })
}

pub fn logdet_product_rule(point: SpherePoint, spec: &QuadratureSpec) -> Result<LogDetResult> {
    let (d, k) = (point.d, point.k);
    if d < 2 * (k - 1) + 3 {
        return Err(Error::InvalidParameter(format!(
            "final product-rule dimension d−2k+2 = {} is below 3",
            i64::from(d) - 2 * i64::from(k) + 2
        )));
    }
    let rule = v_coefficients(k)?;
    let mut value = 0.0;
    let mut err_estimate = 0.0;
    for (j, weight) in rule.weights().into_iter().enumerate() {
        let base = SpherePoint::new(i64::from(d) - 2 * j as i64, 1)?;
        let r = logdet_direct(base, spec)?;
        value += weight * r.value;
        err_estimate += weight * r.err_estimate;
    }
    Ok(LogDetResult {
        value,
        err_estimate,
        method: Method::ProductRule,
        point,
    })
}

/// Dispatches to the route named by `method`.
pub fn logdet(method: Method, point: SpherePoint, spec: &QuadratureSpec) -> Result<LogDetResult> {
    match method {
        Method::Direct => logdet_direct(point, spec),
        Method::Sum => logdet_sum(point, spec),
        Method::Chebyshev => logdet_chebyshev(point, spec),
        Method::ProductRule => logdet_product_rule(point, spec),
        Method::ClosedForm => {
            if point.k != 2 {
                return Err(Error::Unsupported(format!(
                    "closed forms exist only for k = 2 (got {point})"
                )));
            }
            closed_form_p4(point.d)
        }
    }
}

/// All four quadrature routes, in [`Method::NUMERICAL`] order.
pub fn logdet_all(point: SpherePoint, spec: &QuadratureSpec) -> Result<[LogDetResult; 4]> {
    Ok([
        logdet_direct(point, spec)?,
        logdet_sum(point, spec)?,
        logdet_chebyshev(point, spec)?,
        logdet_product_rule(point, spec)?,
    ])
}

/// Largest `|a - b|` over all pairs.
pub fn max_pairwise_discrepancy(results: &[LogDetResult]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            worst = worst.max((a.value - b.value).abs());
        }
    }
    worst
}

/// Whether every pair agrees within `abs_tol` or `rel_tol`, whichever is larger.
pub fn methods_agree(results: &[LogDetResult], rel_tol: f64, abs_tol: f64) -> bool {
    results.iter().enumerate().all(|(i, a)| {
        results[i + 1..].iter().all(|b| {
            let scale = a.value.abs().max(b.value.abs());
            (a.value - b.value).abs() <= abs_tol.max(rel_tol * scale)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn pt(d: i64, k: i64) -> SpherePoint {
        SpherePoint::new(d, k).unwrap()
    }

    #[test]
    fn point_validation() {
        assert!(pt(3, 1).d() == 3);
        let msg = |d, k| SpherePoint::new(d, k).unwrap_err().to_string();
        assert!(msg(4, 1).contains("d must be odd"));
        assert!(msg(1, 1).contains("d must be at least 3"));
        assert!(msg(7, 0).contains("k must be at least 1"));
        assert!(msg(7, 4).contains("k ≤ (d−1)/2"));
        assert!(msg(-3, 1).contains("at least 3"));
        assert_eq!(SpherePoint::limiting(21).unwrap().k(), 10);
    }

    #[test]
    fn factor_alpha_is_half_integer() {
        for j in 0..20 {
            assert_eq!(FactorIndex::new(j).alpha() * 2.0, f64::from(2 * j + 1));
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::NUMERICAL.iter().chain([Method::ClosedForm].iter()) {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), *m);
        }
        assert_eq!("product".parse::<Method>().unwrap(), Method::ProductRule);
        assert!("all".parse::<Method>().is_err());
    }

    #[test]
    fn integrand_reference_value() {
        // Independent evaluation of π/(1+π²)·sinh(0.5)·sinh(2)/cosh⁶(0.5)
        // at 30 digits gives 0.265701331201896908.
        let v = integrand_direct(pt(5, 2), 1.0).unwrap();
        assert_eq!(v.sign, 1.0);
        assert!((v.value() - 0.265_701_331_201_896_9).abs() < 1e-14);
        let plain = PI / (1.0 + PI * PI) * 0.5f64.sinh() * 2.0f64.sinh() / 0.5f64.cosh().powi(6);
        assert!((v.value() - plain).abs() < 1e-15);
    }

    #[test]
    fn integrand_far_tail_is_finite() {
        let p = pt(35, 17);
        let v = integrand_direct(p, 100.0).unwrap();
        let envelope = -50.0 + 34.0 * LN_2 - 2.0 * 100.0f64.ln() + PI.ln();
        assert!(v.ln_abs.is_finite());
        assert!((v.ln_abs - envelope).abs() < 0.01);
    }

    #[test]
    fn integrand_near_zero() {
        for k in 1..=4 {
            let p = pt(11, k);
            let x: f64 = 1e-4;
            let v = integrand_direct(p, x).unwrap().value();
            let lead = f64::from(k as u32) * x * x / (2.0 * PI);
            assert!((v / lead - 1.0).abs() < 1e-6);
        }
        assert!(integrand_direct(pt(5, 1), 0.0).is_err());
        assert!(integrand_direct(pt(5, 1), -1.0).is_err());
    }

    #[test]
    fn chebyshev_integrand_matches_direct() {
        for &(d, k) in &[(3, 1), (9, 4), (21, 10), (35, 17)] {
            let p = pt(d, k);
            for &x in &[1e-3, 0.3, 1.9, 2.0, 7.0, 60.0] {
                let a = integrand_direct(p, x).unwrap().ln_abs;
                let b = integrand_chebyshev(p, x).unwrap().ln_abs;
                assert!((a - b).abs() < 1e-12, "d={d} k={k} x={x}: {a} {b}");
            }
        }
    }

    #[test]
    fn envelopes_bound_integrands() {
        // Scaled integrands must stay under e^{-λx}/π for the truncation
        // bound to hold.
        for d in (3..=35u32).step_by(2) {
            for j in 0..(d - 1) / 2 {
                let lambda = 0.5 * f64::from(d - 2 - 2 * j);
                for i in 1..400 {
                    let x = 0.25 * i as f64;
                    let ln = ln_factor(d, f64::from(j) + 0.5, x) - f64::from(d - 2) * LN_2;
                    assert!(ln <= -PI.ln() - lambda * x + 1e-12, "d={d} j={j} x={x}");
                }
            }
            for k in 1..=(d - 1) / 2 {
                let p = pt(i64::from(d), i64::from(k));
                for i in 1..400 {
                    let x = 0.25 * i as f64;
                    let ln = ln_direct(d, k, x) - f64::from(d - 1) * LN_2;
                    assert!(ln <= -PI.ln() - p.decay_rate() * x + 1e-12);
                }
            }
        }
    }

    #[test]
    fn paneitz_reference_values() {
        for f in [
            logdet_direct,
            logdet_sum,
            logdet_chebyshev,
            logdet_product_rule,
        ] {
            let r5 = f(pt(5, 2), &spec()).unwrap();
            let r7 = f(pt(7, 2), &spec()).unwrap();
            assert!((r5.value - 0.104642).abs() < 5e-6, "{r5:?}");
            assert!((r7.value + 0.008297).abs() < 5e-6, "{r7:?}");
        }
    }

    #[test]
    fn single_factor_equals_direct() {
        let f = logdet_factor(5, FactorIndex::new(0), &spec()).unwrap();
        let d = logdet_direct(pt(5, 1), &spec()).unwrap();
        assert!((f.value - d.value).abs() < 1e-10);

        let s = logdet_sum(pt(9, 1), &spec()).unwrap();
        let d = logdet_direct(pt(9, 1), &spec()).unwrap();
        assert!((s.value - d.value).abs() < 1e-10);
        let s = logdet_sum(pt(3, 1), &spec()).unwrap();
        let d = logdet_direct(pt(3, 1), &spec()).unwrap();
        assert!((s.value - d.value).abs() < 1e-10);
    }

    #[test]
    fn two_factors_make_paneitz() {
        let a = logdet_factor(5, FactorIndex::new(0), &spec()).unwrap();
        let b = logdet_factor(5, FactorIndex::new(1), &spec()).unwrap();
        let d = logdet_direct(pt(5, 2), &spec()).unwrap();
        assert!((a.value + b.value - d.value).abs() < 1e-8);
        assert!((a.value + b.value - 0.104642).abs() < 5e-6);
    }

    #[test]
    fn factor_sign_and_divergence() {
        // (-1)^{3+2+1} = +1
        assert!(
            logdet_factor(7, FactorIndex::new(2), &spec())
                .unwrap()
                .value
                > 0.0
        );
        assert!(matches!(
            logdet_factor(7, FactorIndex::new(3), &spec()),
            Err(Error::Divergent(_))
        ));
        assert!(logdet_factor(6, FactorIndex::new(0), &spec()).is_err());
    }

    #[test]
    fn larger_cross_checks() {
        let s = logdet_sum(pt(11, 5), &spec()).unwrap();
        let d = logdet_direct(pt(11, 5), &spec()).unwrap();
        assert!((s.value - d.value).abs() < 1e-9);

        let c = logdet_chebyshev(pt(21, 10), &spec()).unwrap();
        let d = logdet_direct(pt(21, 10), &spec()).unwrap();
        assert!((c.value - d.value).abs() < 1e-9);
        let c = logdet_chebyshev(pt(3, 1), &spec()).unwrap();
        let d3 = logdet_direct(pt(3, 1), &spec()).unwrap();
        assert!((c.value - d3.value).abs() < 1e-10);

        let p = logdet_product_rule(pt(9, 3), &spec()).unwrap();
        let d = logdet_direct(pt(9, 3), &spec()).unwrap();
        assert!((p.value - d.value).abs() < 1e-9);
        let p = logdet_product_rule(pt(3, 1), &spec()).unwrap();
        assert_eq!(p.value, d3.value);
    }

    #[test]
    fn product_rule_is_weighted_base_values() {
        let base = |d| logdet_direct(pt(d, 1), &spec()).unwrap().value;
        let p = logdet_product_rule(pt(5, 2), &spec()).unwrap();
        assert!((p.value - (2.0 * base(5) + base(3))).abs() < 1e-15);
        assert!((p.value - 0.104642).abs() < 5e-6);
    }

    #[test]
    fn dispatch_and_discrepancy() {
        let all = logdet_all(pt(7, 3), &spec()).unwrap();
        for (r, m) in all.iter().zip(Method::NUMERICAL) {
            assert_eq!(r.method, m);
            assert!(r.sign_consistent());
        }
        assert!(max_pairwise_discrepancy(&all) < 1e-9);
        assert!(methods_agree(&all, 1e-8, 1e-9));
        assert_eq!(logdet(Method::Sum, pt(7, 3), &spec()).unwrap(), all[1]);
        assert!(matches!(
            logdet(Method::ClosedForm, pt(7, 3), &spec()),
            Err(Error::Unsupported(_))
        ));
    }
}
