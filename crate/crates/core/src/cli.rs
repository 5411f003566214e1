//! Library side of the command-line front end: parameter scans, CSV and
//! SVG emission, and the mapping from errors to exit codes.
//!
//! CSV files have the header `d,k,method,value,err_estimate`, `\n` line
//! endings, and floats written with 17 significant digits so every file
//! parses back to bit-identical rows.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::spectral::{logdet, logdet_all, methods_agree, LogDetResult, Method, SpherePoint};

pub const CSV_HEADER: [&str; 5] = ["d", "k", "method", "value", "err_estimate"];

/// Largest relative disagreement tolerated between methods in `all` scans.
pub const SCAN_AGREEMENT_REL: f64 = 1e-8;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::Unsupported(_) | Error::Divergent(_) => EXIT_USAGE,
        Error::AccuracyNotReached { .. } | Error::Evaluation { .. } | Error::Internal(_) => {
            EXIT_NUMERICAL
        }
        Error::Io(_) | Error::Csv(_) => EXIT_IO,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodSelector {
    One(Method),
    All,
}

impl MethodSelector {
    pub fn methods(&self) -> Vec<Method> {
        match self {
            MethodSelector::One(m) => vec![*m],
            MethodSelector::All => Method::NUMERICAL.to_vec(),
        }
    }
}

impl Default for MethodSelector {
    fn default() -> Self {
        MethodSelector::One(Method::Direct)
    }
}

impl FromStr for MethodSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(MethodSelector::All),
            "direct" | "sum" | "chebyshev" | "product" => Ok(MethodSelector::One(s.parse()?)),
            other => Err(Error::InvalidParameter(format!(
                "method must be one of direct, sum, chebyshev, product, all (got {other:?})"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub d: u32,
    pub k: u32,
    pub method: Method,
    pub value: f64,
    pub err_estimate: f64,
}

impl From<&LogDetResult> for ScanRow {
    fn from(r: &LogDetResult) -> Self {
        Self {
            d: r.point.d(),
            k: r.point.k(),
            method: r.method,
            value: r.value,
            err_estimate: r.err_estimate,
        }
    }
}

/// Evaluates one point with the selected methods.
pub fn evaluate(
    point: SpherePoint,
    selector: MethodSelector,
    spec: &QuadratureSpec,
) -> Result<Vec<LogDetResult>> {
    match selector {
        MethodSelector::One(m) => Ok(vec![logdet(m, point, spec)?]),
        MethodSelector::All => Ok(logdet_all(point, spec)?.to_vec()),
    }
}

/// Evaluates every point concurrently; rows come back ordered by `(d, k)`
/// and then by method.
pub fn scan(
    points: &[SpherePoint],
    selector: MethodSelector,
    spec: &QuadratureSpec,
) -> Result<Vec<ScanRow>> {
    let mut points = points.to_vec();
    points.sort();
    let per_point: Vec<Vec<LogDetResult>> = points
        .par_iter()
        .map(|&p| evaluate(p, selector, spec))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for results in &per_point {
        if results.len() > 1 && !methods_agree(results, SCAN_AGREEMENT_REL, 0.0) {
            let p = results[0].point;
            return Err(Error::Internal(format!(
                "methods disagree beyond {SCAN_AGREEMENT_REL:e} relative at {p}"
            )));
        }
        rows.extend(results.iter().map(ScanRow::from));
    }
    Ok(rows)
}

/// `k = 1 … (d-1)/2` at fixed `d`.
pub fn points_k(d: i64) -> Result<Vec<SpherePoint>> {
    SpherePoint::new(d, 1)?;
    (1..=(d - 1) / 2).map(|k| SpherePoint::new(d, k)).collect()
}

fn odd_range(d_min: i64, d_max: i64, lowest: i64) -> Result<Vec<i64>> {
    if d_min % 2 == 0 || d_max % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "d must be odd (got range {d_min}..={d_max})"
        )));
    }
    if d_min < lowest {
        return Err(Error::InvalidParameter(format!(
            "d must be at least {lowest} (got d-min = {d_min})"
        )));
    }
    if d_min > d_max {
        return Err(Error::InvalidParameter(format!(
            "d-min must not exceed d-max (got {d_min} > {d_max})"
        )));
    }
    Ok((d_min..=d_max).step_by(2).collect())
}

/// Limiting order `k = (d-1)/2` for each odd `d` in the range.
pub fn points_limiting(d_min: i64, d_max: i64) -> Result<Vec<SpherePoint>> {
    odd_range(d_min, d_max, 3)?
        .into_iter()
        .map(SpherePoint::limiting)
        .collect()
}

/// The Paneitz order `k = 2` for each odd `d ≥ 5` in the range.
pub fn points_paneitz(d_min: i64, d_max: i64) -> Result<Vec<SpherePoint>> {
    odd_range(d_min, d_max, 5)?
        .into_iter()
        .map(|d| SpherePoint::new(d, 2))
        .collect()
}

fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.d.to_string(),
            r.k.to_string(),
            r.method.to_string(),
            format_float(r.value),
            format_float(r.err_estimate),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ScanRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::InvalidParameter(format!(
            "unexpected CSV header {header:?}"
        )));
    }
    let bad = |field: &str, s: &str| Error::InvalidParameter(format!("bad {field} field {s:?}"));
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| record.get(i).unwrap_or("");
        rows.push(ScanRow {
            d: field(0).parse().map_err(|_| bad("d", field(0)))?,
            k: field(1).parse().map_err(|_| bad("k", field(1)))?,
            method: field(2).parse()?,
            value: field(3).parse().map_err(|_| bad("value", field(3)))?,
            err_estimate: field(4)
                .parse()
                .map_err(|_| bad("err_estimate", field(4)))?,
        });
    }
    Ok(rows)
}

/// Which row field goes on the horizontal axis of a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Abscissa {
    K,
    D,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// A static SVG 1.1 line chart of `value` against `k` or `d`.
pub fn render_svg(rows: &[ScanRow], abscissa: Abscissa, title: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const LEFT: f64 = 90.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 50.0;

    let xs: Vec<f64> = rows
        .iter()
        .map(|r| f64::from(if abscissa == Abscissa::K { r.k } else { r.d }))
        .collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.value).collect();
    let (x_min, x_max) = bounds(&xs);
    let (mut y_min, mut y_max) = bounds(&ys);
    y_min = y_min.min(0.0);
    y_max = y_max.max(0.0);
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let px = |x: f64| LEFT + (x - x_min) / x_span * (W - LEFT - RIGHT);
    let py = |y: f64| TOP + (y_max - y) / (y_max - y_min) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(
        s,
        r#"<path d="M{x0} {y0} L{x0} {y1} L{x1} {y1}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let zero = py(0.0);
    let _ = writeln!(
        s,
        r##"<line x1="{x0}" y1="{zero:.2}" x2="{x1}" y2="{zero:.2}" stroke="#999999" stroke-dasharray="4 3"/>"##
    );

    // Horizontal ticks on integer positions, thinned to at most ~20 labels.
    if !xs.is_empty() {
        let step = ((x_span / 20.0).ceil() as i64).max(1);
        let mut t = x_min as i64;
        while t as f64 <= x_max {
            let x = px(t as f64);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{y1}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{t}</text>"#,
                y1 + 5.0,
                y1 + 18.0
            );
            t += step;
        }
    }
    for i in 0..=4 {
        let v = y_min + (y_max - y_min) * f64::from(i) / 4.0;
        let y = py(v);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3e}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let label = if abscissa == Abscissa::K { "k" } else { "d" };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{label}</text>"#,
        (x0 + x1) / 2.0,
        H - 10.0
    );

    let points: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##,
        points.join(" ")
    );
    for (&x, &y) in xs.iter().zip(&ys) {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#1f4e9c"/>"##,
            px(x),
            py(y)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}
