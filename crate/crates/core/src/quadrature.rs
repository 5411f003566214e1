//! Adaptive Gauss–Legendre integration on `[0, ∞)`.
//!
//! Integrands are supplied in log-magnitude-plus-sign form so that factors
//! like `cosh^{d+1}(x/2)` never have to be formed in binary64. The range is
//! truncated at a point `X` chosen from an exponential envelope
//! `|f(x)| ≤ C e^{-λx}` (valid for `x ≥ x₀`), and the envelope's tail integral
//! `C e^{-λX} / λ` is folded into the reported error estimate.
//!
//! Each panel carries a two-level estimate: the rule applied to the whole
//! panel and to its two halves. The halves are kept as the value and their
//! difference from the whole-panel result as the error. Panels with the
//! largest error are bisected until the total meets the tolerance.

// Negated comparisons below also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes per panel.
pub const GAUSS_ORDER: usize = 32;

/// Width of the initial panels before any refinement.
const INITIAL_PANEL_WIDTH: f64 = 2.0;

/// Lower clamp for the truncation point.
const MIN_TRUNCATION: f64 = 10.0;

/// Multiple of machine epsilon times `∫|f|` added as a rounding floor.
const ROUNDOFF_FACTOR: f64 = 50.0 * f64::EPSILON;

/// A real number as `sign · exp(ln_abs)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    /// One of `-1.0`, `0.0`, `1.0`.
    pub sign: f64,
}

impl LogValue {
    pub fn positive(ln_abs: f64) -> Self {
        Self { ln_abs, sign: 1.0 }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self {
                ln_abs: f64::NEG_INFINITY,
                sign: 0.0,
            }
        } else {
            Self {
                ln_abs: v.abs().ln(),
                sign: v.signum(),
            }
        }
    }

    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    fn is_valid(self) -> bool {
        !self.ln_abs.is_nan() && self.ln_abs != f64::INFINITY && self.sign.is_finite()
    }
}

/// `|f(x)| ≤ c_bound · e^{-decay_rate · x}` for all `x ≥ start`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub c_bound: f64,
    pub decay_rate: f64,
    pub start: f64,
}

impl Envelope {
    pub fn new(c_bound: f64, decay_rate: f64) -> Self {
        Self {
            c_bound,
            decay_rate,
            start: 0.0,
        }
    }

    pub fn starting_at(mut self, start: f64) -> Self {
        self.start = start;
        self
    }

    /// Bound on `∫_x^∞` of the envelope.
    pub fn tail_bound(&self, x: f64) -> f64 {
        self.c_bound * (-self.decay_rate * x).exp() / self.decay_rate
    }
}

impl Default for Envelope {
    fn default() -> Self {
        Self::new(1.0, 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub envelope: Envelope,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-15,
            max_panels: 4096,
            envelope: Envelope::default(),
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = envelope;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerances must satisfy rel_tol > 0 and abs_tol >= 0 (got {}, {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidParameter(
                "max_panels must be positive".into(),
            ));
        }
        let env = &self.envelope;
        if !(env.decay_rate > 0.0) {
            return Err(Error::Divergent(format!(
                "decay rate {} is not positive",
                env.decay_rate
            )));
        }
        if !(env.c_bound > 0.0) || !env.c_bound.is_finite() || !(env.start >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "envelope constant must be positive and finite, start non-negative (got {}, {})",
                env.c_bound, env.start
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub err_estimate: f64,
    pub panels_used: usize,
    pub truncation_point: f64,
}

/// Smallest `X ≥ 10` with `c_bound · e^{-decay_rate·X} / decay_rate ≤ tol`.
pub fn truncation_point(c_bound: f64, decay_rate: f64, tol: f64) -> Result<f64> {
    if !(decay_rate > 0.0) {
        return Err(Error::Divergent(format!(
            "decay rate {decay_rate} is not positive"
        )));
    }
    if !(c_bound > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "envelope constant and tolerance must be positive (got {c_bound}, {tol})"
        )));
    }
    let x = (c_bound.ln() - (decay_rate * tol).ln()) / decay_rate;
    Ok(x.max(MIN_TRUNCATION))
}

struct GaussRule {
    nodes: [f64; GAUSS_ORDER],
    weights: [f64; GAUSS_ORDER],
}

/// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn gauss_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_ORDER;
        let mut nodes = [0.0; GAUSS_ORDER];
        let mut weights = [0.0; GAUSS_ORDER];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for m in 2..=n {
                    let m = m as f64;
                    let p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    })
}

/// Rule applied on `[a, b]`: returns `(∫f, ∫|f|)`.
fn gauss<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> LogValue,
{
    let rule = gauss_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = mid + half * t;
        let fx = f(x);
        if !fx.is_valid() {
            return Err(Error::Evaluation { x });
        }
        let v = fx.value();
        sum += w * v;
        abs_sum += w * v.abs();
    }
    Ok((half * sum, half * abs_sum))
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    abs: f64,
    err: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }

    /// Evaluates `[a, b]` when the whole-panel value is already known.
    fn build<F>(f: &F, a: f64, b: f64, whole: f64) -> Result<Self>
    where
        F: Fn(f64) -> LogValue,
    {
        let m = 0.5 * (a + b);
        let (left, abs_l) = gauss(f, a, m)?;
        let (right, abs_r) = gauss(f, m, b)?;
        Ok(Self {
            a,
            b,
            left,
            right,
            abs: abs_l + abs_r,
            err: (whole - (left + right)).abs(),
        })
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

struct Totals {
    value: f64,
    err: f64,
    abs: f64,
}

fn totals(panels: &BinaryHeap<Panel>) -> Totals {
    let mut sorted: Vec<&Panel> = panels.iter().collect();
    sorted.sort_by(|p, q| p.a.total_cmp(&q.a));
    sorted.iter().fold(
        Totals {
            value: 0.0,
            err: 0.0,
            abs: 0.0,
        },
        |t, p| Totals {
            value: t.value + p.value(),
            err: t.err + p.err,
            abs: t.abs + p.abs,
        },
    )
}

/// `∫₀^∞ f(x) dx` for an integrand given in log-space form.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(f64) -> LogValue,
{
    spec.validate()?;
    let env = spec.envelope;
    let tail_tol = if spec.abs_tol > 0.0 {
        0.1 * spec.abs_tol
    } else {
        f64::MIN_POSITIVE
    };
    let upper = truncation_point(env.c_bound, env.decay_rate, tail_tol)?.max(env.start);
    let tail = env.tail_bound(upper);

    let budget = spec.max_panels.max(1);
    let initial = ((upper / INITIAL_PANEL_WIDTH).ceil() as usize).clamp(1, budget.div_ceil(4));
    let width = upper / initial as f64;

    let mut heap = BinaryHeap::with_capacity(budget);
    for i in 0..initial {
        let a = i as f64 * width;
        let b = if i + 1 == initial {
            upper
        } else {
            (i + 1) as f64 * width
        };
        let (whole, _) = gauss(&f, a, b)?;
        heap.push(Panel::build(&f, a, b, whole)?);
    }

    let abs_target = (spec.abs_tol - tail).max(0.0);
    let mut running_err: f64 = heap.iter().map(|p| p.err).sum();
    let mut running_value: f64 = heap.iter().map(Panel::value).sum();
    loop {
        let target = abs_target.max(spec.rel_tol * running_value.abs());
        if running_err <= target {
            // Re-sum in a fixed order so the result does not depend on the
            // history of running updates.
            let t = totals(&heap);
            if t.err <= abs_target.max(spec.rel_tol * t.value.abs()) {
                return Ok(IntegralResult {
                    value: t.value,
                    err_estimate: t.err + ROUNDOFF_FACTOR * t.abs + tail,
                    panels_used: heap.len(),
                    truncation_point: upper,
                });
            }
            running_err = t.err;
            running_value = t.value;
        }
        if heap.len() >= budget {
            let t = totals(&heap);
            return Err(Error::AccuracyNotReached {
                value: t.value,
                err_estimate: t.err + ROUNDOFF_FACTOR * t.abs + tail,
                target: abs_target.max(spec.rel_tol * t.value.abs()),
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = Panel::build(&f, worst.a, mid, worst.left)?;
        let right = Panel::build(&f, mid, worst.b, worst.right)?;
        running_err += left.err + right.err - worst.err;
        running_value += left.value() + right.value() - worst.value();
        heap.push(left);
        heap.push(right);
    }
}
