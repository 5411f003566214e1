#![allow(dead_code)]

use std::f64::consts::PI;

use sphere_logdet::quadrature::{Envelope, LogValue};

pub struct AnalyticCase {
    pub name: &'static str,
    pub f: fn(f64) -> LogValue,
    pub envelope: Envelope,
    pub exact: f64,
}

fn v(x: f64) -> LogValue {
    LogValue::from_value(x)
}

/// Ten decaying integrands on [0, ∞) with known integrals.
pub fn analytic_suite() -> Vec<AnalyticCase> {
    vec![
        AnalyticCase {
            name: "exp(-x)",
            f: |x| LogValue::positive(-x),
            envelope: Envelope::new(1.0, 1.0),
            exact: 1.0,
        },
        AnalyticCase {
            name: "x exp(-x^2)",
            f: |x| LogValue::positive(x.ln() - x * x),
            envelope: Envelope::new(1.0, 1.0).starting_at(1.0),
            exact: 0.5,
        },
        AnalyticCase {
            name: "exp(-x) cos x",
            f: |x| v((-x).exp() * x.cos()),
            envelope: Envelope::new(1.0, 1.0),
            exact: 0.5,
        },
        AnalyticCase {
            name: "x^2 exp(-x)",
            f: |x| LogValue::positive(2.0 * x.ln() - x),
            envelope: Envelope::new(1.0, 0.5).starting_at(10.0),
            exact: 2.0,
        },
        AnalyticCase {
            name: "exp(-x^2)",
            f: |x| LogValue::positive(-x * x),
            envelope: Envelope::new(1.0, 1.0).starting_at(1.0),
            exact: 0.5 * PI.sqrt(),
        },
        AnalyticCase {
            name: "sech^2 x",
            f: |x| v(1.0 / x.cosh().powi(2)),
            envelope: Envelope::new(4.0, 2.0),
            exact: 1.0,
        },
        AnalyticCase {
            name: "x / sinh x",
            f: |x| v(x / x.sinh()),
            envelope: Envelope::new(2.0, 0.5).starting_at(1.0),
            exact: PI * PI / 4.0,
        },
        AnalyticCase {
            name: "exp(-3x) sin^2 x",
            f: |x| v((-3.0 * x).exp() * x.sin().powi(2)),
            envelope: Envelope::new(1.0, 3.0),
            exact: 2.0 / 39.0,
        },
        AnalyticCase {
            name: "1 / (e^x + 1)",
            f: |x| v(1.0 / (x.exp() + 1.0)),
            envelope: Envelope::new(1.0, 1.0),
            exact: 2.0f64.ln(),
        },
        AnalyticCase {
            name: "x^3 exp(-x/2)",
            f: |x| LogValue::positive(3.0 * x.ln() - 0.5 * x),
            envelope: Envelope::new(90.0, 0.25),
            exact: 96.0,
        },
    ]
}
