//! Standalone SVG chart: data as circles, smoothed points as crosses and an
//! optional interpolant curve.

use std::fmt::Write as _;
use std::path::Path;

use ftrisk_core::interpolant::{evaluate, ExponentialSum};
use ftrisk_core::smoothing::SmoothedSeries;
use ftrisk_core::Series;

use crate::error::{CliError, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

/// Curve sampling domain and step.
pub const CURVE_START: f64 = 1.0;
pub const CURVE_END: f64 = 11.0;
pub const CURVE_STEP: f64 = 0.05;

/// Tick positions with a 1/2/5 × 10^k spacing covering `[lo, hi]`.
fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = (hi - lo).max(f64::EPSILON);
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(x: f64) -> String {
    let s = format!("{:.2}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

struct Frame {
    t0: f64,
    t1: f64,
    v0: f64,
    v1: f64,
}

impl Frame {
    fn x(&self, t: f64) -> f64 {
        LEFT + (t - self.t0) / (self.t1 - self.t0) * (WIDTH - LEFT - RIGHT)
    }
    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.v0) / (self.v1 - self.v0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
    (lo - pad, hi + pad)
}

fn sample_curve(f: &ExponentialSum) -> Result<Vec<(f64, f64)>> {
    let n = ((CURVE_END - CURVE_START) / CURVE_STEP).round() as usize;
    (0..=n)
        .map(|i| {
            let t = CURVE_START + i as f64 * CURVE_STEP;
            evaluate(f, t)
                .map(|v| (t, v))
                .map_err(|e| CliError::core("interpolant", e))
        })
        .collect()
}

pub fn render_svg(
    series: &Series,
    smoothed: &SmoothedSeries,
    interpolant: Option<&ExponentialSum>,
) -> Result<String> {
    let curve = interpolant.map(sample_curve).transpose()?;
    let mut ts: Vec<f64> = series.points().iter().map(|p| p.t).collect();
    let mut vs: Vec<f64> = series.values();
    ts.extend(smoothed.points.iter().map(|p| p.smoothed.t));
    vs.extend(smoothed.points.iter().map(|p| p.smoothed.v));
    if let Some(c) = &curve {
        ts.extend(c.iter().map(|p| p.0));
        vs.extend(c.iter().map(|p| p.1));
    }
    let min = |xs: &[f64]| xs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |xs: &[f64]| xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (t0, t1) = padded(min(&ts), max(&ts));
    let (v0, v1) = padded(min(&vs), max(&vs));
    let fr = Frame { t0, t1, v0, v1 };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<style>text{{font-family:sans-serif;font-size:12px}} .data{{fill:none;stroke:#1f77b4;stroke-width:1.5}} .phi{{stroke:#d62728;stroke-width:2}} .interpolant{{fill:none;stroke:#2ca02c;stroke-width:1.5}} .axis{{stroke:#000}} .grid{{stroke:#ddd}}</style>"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(series.label())
    );

    let (xl, xr, yb, yt) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    for t in nice_ticks(t0, t1, 10) {
        let x = fr.x(t);
        let _ = writeln!(s, r#"<line class="grid" x1="{x:.2}" y1="{yt:.2}" x2="{x:.2}" y2="{yb:.2}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            yb + 18.0,
            tick_label(t)
        );
    }
    for v in nice_ticks(v0, v1, 8) {
        let y = fr.y(v);
        let _ = writeln!(s, r#"<line class="grid" x1="{xl:.2}" y1="{y:.2}" x2="{xr:.2}" y2="{y:.2}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            xl - 6.0,
            y + 4.0,
            tick_label(v)
        );
    }
    let _ = writeln!(s, r#"<line class="axis" x1="{xl:.2}" y1="{yb:.2}" x2="{xr:.2}" y2="{yb:.2}"/>"#);
    let _ = writeln!(s, r#"<line class="axis" x1="{xl:.2}" y1="{yt:.2}" x2="{xl:.2}" y2="{yb:.2}"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#,
        (xl + xr) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">value</text>"#,
        (yt + yb) / 2.0,
        (yt + yb) / 2.0
    );

    if let Some(c) = &curve {
        let pts: Vec<String> = c
            .iter()
            .map(|&(t, v)| format!("{:.2},{:.2}", fr.x(t), fr.y(v)))
            .collect();
        let _ = writeln!(s, r#"<polyline class="interpolant" points="{}"/>"#, pts.join(" "));
    }
    for p in series.points() {
        let _ = writeln!(
            s,
            r#"<circle class="data" cx="{:.2}" cy="{:.2}" r="4"/>"#,
            fr.x(p.t),
            fr.y(p.v)
        );
    }
    for p in &smoothed.points {
        let (x, y) = (fr.x(p.smoothed.t), fr.y(p.smoothed.v));
        let _ = writeln!(
            s,
            r#"<path class="phi" d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}"/>"#,
            x - 5.0,
            y - 5.0,
            x + 5.0,
            y + 5.0,
            x - 5.0,
            y + 5.0,
            x + 5.0,
            y - 5.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_plot(
    series: &Series,
    smoothed: &SmoothedSeries,
    interpolant: Option<&ExponentialSum>,
    path: &Path,
) -> Result<()> {
    let svg = render_svg(series, smoothed, interpolant)?;
    std::fs::write(path, svg).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
