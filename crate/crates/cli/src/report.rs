//! Report assembly and rendering (JSON and plain text).

use std::fmt::Write as _;

use ftrisk_core::interpolant::{eq10_coefficients, residual_report, ResidualReport};
use ftrisk_core::smoothing::{smooth_with, SmoothedSeries};
use ftrisk_core::stats::{
    classical_summary, comparison_report, coverage, ft_summary_with, ClassicalSummary, Comparison,
    FtSummary, Interval,
};
use ftrisk_core::{Point, Series, SolutionCase};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::dataset;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub label: String,
    pub source: String,
    pub n: usize,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisplacementEntry {
    pub center_index: usize,
    pub original: Point,
    pub smoothed: Point,
    pub value_displacement: f64,
    pub planar_displacement: f64,
    pub case: SolutionCase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub interval: Interval,
    pub inside: usize,
    pub total: usize,
    pub fraction: f64,
    /// Probability the rule claims for its interval.
    pub claimed: f64,
    pub below_claimed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageSection {
    pub classical: CoverageEntry,
    pub ft_principled: CoverageEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ft_paper_mode: Option<CoverageEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub dataset: DatasetInfo,
    pub classical: ClassicalSummary,
    pub ft_principled: FtSummary,
    /// Statistics from the ten published (value, smoothed value) pairs;
    /// builtin dataset only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ft_paper_mode: Option<FtSummary>,
    pub comparison: Comparison,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison_paper_mode: Option<Comparison>,
    pub displacements: Vec<DisplacementEntry>,
    pub coverage: CoverageSection,
    /// Ten-term interpolant evaluated at the published smoothed points;
    /// builtin dataset only, informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpolant_residuals: Option<ResidualReport>,
}

/// Output of the `smooth` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothReport {
    pub dataset: DatasetInfo,
    pub endpoint_policy: String,
    pub displacements: Vec<DisplacementEntry>,
}

/// Normal-theory probability of `|X − μ| ≤ kσ`.
pub fn normal_coverage(k: f64) -> f64 {
    libm::erf(k / std::f64::consts::SQRT_2)
}

/// Lower bound `1 − 1/m²` claimed for the `M_phi ± m·S` interval.
pub fn ft_claimed_coverage(m: f64) -> f64 {
    1.0 - 1.0 / (m * m)
}

fn coverage_entry(values: &[f64], interval: Interval, claimed: f64) -> Result<CoverageEntry> {
    let c = coverage(values, &interval).map_err(|e| CliError::core("coverage", e))?;
    Ok(CoverageEntry {
        interval,
        inside: c.inside,
        total: c.total,
        fraction: c.fraction,
        claimed,
        below_claimed: c.fraction < claimed,
    })
}

fn dataset_info(series: &Series, source: &str) -> DatasetInfo {
    DatasetInfo {
        label: series.label().to_string(),
        source: source.to_string(),
        n: series.len(),
        values: series.values(),
    }
}

fn displacement_entries(s: &SmoothedSeries) -> Vec<DisplacementEntry> {
    s.points
        .iter()
        .map(|p| DisplacementEntry {
            center_index: p.center_index,
            original: p.original,
            smoothed: p.smoothed,
            value_displacement: p.value_displacement,
            planar_displacement: p.planar_displacement,
            case: p.case,
        })
        .collect()
}

pub fn smooth_series(series: &Series, config: &RunConfig) -> Result<SmoothedSeries> {
    smooth_with(series, &config.smooth_options()).map_err(|e| CliError::core("smoothing", e))
}

pub fn build_smooth_report(series: &Series, config: &RunConfig) -> Result<SmoothReport> {
    let smoothed = smooth_series(series, config)?;
    Ok(SmoothReport {
        dataset: dataset_info(series, &config.input),
        endpoint_policy: smoothed.endpoint_policy.as_str().to_string(),
        displacements: displacement_entries(&smoothed),
    })
}

pub fn build_report(series: &Series, config: &RunConfig) -> Result<Report> {
    let values = series.values();
    let smoothed = smooth_series(series, config)?;
    let classical = classical_summary(&values, config.k_sigma)
        .map_err(|e| CliError::core("classical statistics", e))?;
    let ft = ft_summary_with(
        &smoothed.original_values(),
        &smoothed.smoothed_values(),
        config.s_multiplier,
    )
    .map_err(|e| CliError::core("Fermat-Torricelli statistics", e))?;

    let paper_mode = config.input == dataset::CZECH2011_TAG;
    let ft_paper = if paper_mode {
        Some(
            ft_summary_with(
                &dataset::PUBLISHED_ORIGINALS,
                &dataset::published_phi_values(),
                config.s_multiplier,
            )
            .map_err(|e| CliError::core("paper-mode statistics", e))?,
        )
    } else {
        None
    };
    let residuals = if paper_mode {
        Some(
            residual_report(&eq10_coefficients(), &dataset::PUBLISHED_PHI)
                .map_err(|e| CliError::core("interpolant", e))?,
        )
    } else {
        None
    };

    let ft_claim = ft_claimed_coverage(config.s_multiplier);
    let coverage = CoverageSection {
        classical: coverage_entry(&values, classical.interval, normal_coverage(config.k_sigma))?,
        ft_principled: coverage_entry(&values, ft.interval, ft_claim)?,
        ft_paper_mode: ft_paper
            .as_ref()
            .map(|f| coverage_entry(&values, f.interval, ft_claim))
            .transpose()?,
    };

    Ok(Report {
        dataset: dataset_info(series, &config.input),
        comparison: comparison_report(&classical, &ft),
        comparison_paper_mode: ft_paper.as_ref().map(|f| comparison_report(&classical, f)),
        classical,
        ft_principled: ft,
        ft_paper_mode: ft_paper,
        displacements: displacement_entries(&smoothed),
        coverage,
        interpolant_residuals: residuals,
    })
}

/// `x` rounded to six significant digits, printed in shortest form.
pub fn fmt6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    if rounded.abs() < 1e-4 || rounded.abs() >= 1e10 {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

fn case_label(case: &SolutionCase) -> String {
    match case {
        SolutionCase::Interior => "interior".into(),
        SolutionCase::VertexOptimal(i) => format!("vertex-{}", ["prev", "center", "next"][*i]),
        SolutionCase::Collinear => "collinear".into(),
    }
}

pub fn render_displacements(out: &mut String, rows: &[DisplacementEntry]) {
    let _ = writeln!(
        out,
        "{:>6}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  case",
        "center", "t", "value", "t_phi", "value_phi", "|dv|", "planar"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {}",
            r.center_index,
            fmt6(r.original.t),
            fmt6(r.original.v),
            fmt6(r.smoothed.t),
            fmt6(r.smoothed.v),
            fmt6(r.value_displacement),
            fmt6(r.planar_displacement),
            case_label(&r.case)
        );
    }
}

pub fn render_smooth_text(r: &SmoothReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dataset: {} ({} points, endpoints: {})\n",
        r.dataset.label, r.dataset.n, r.endpoint_policy
    );
    render_displacements(&mut out, &r.displacements);
    out
}

fn field(out: &mut String, name: &str, value: f64) {
    let _ = writeln!(out, "  {name:<12} {}", fmt6(value));
}

fn interval_line(out: &mut String, name: &str, i: &Interval) {
    let _ = writeln!(out, "  {name:<12} {} {}", fmt6(i.low), fmt6(i.high));
}

fn render_ft(out: &mut String, title: &str, f: &FtSummary) {
    let _ = writeln!(out, "[{title}] n = {}, multiplier = {}", f.n, fmt6(f.multiplier));
    field(out, "F", f.f);
    field(out, "S", f.s);
    field(out, "M_phi", f.m_phi);
    field(out, "W", f.w);
    field(out, "half_width", f.multiplier * f.s);
    interval_line(out, "interval", &f.interval);
    out.push('\n');
}

fn render_coverage(out: &mut String, name: &str, c: &CoverageEntry) {
    let _ = writeln!(
        out,
        "  {name:<14} {}/{} = {} (claimed {}){}",
        c.inside,
        c.total,
        fmt6(c.fraction),
        fmt6(c.claimed),
        if c.below_claimed { "  BELOW CLAIM" } else { "" }
    );
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dataset: {} ({} points)\n", r.dataset.label, r.dataset.n);

    let c = &r.classical;
    let _ = writeln!(out, "[classical] n = {}, k = {}", c.n, fmt6(c.interval_k));
    field(&mut out, "mean", c.mean);
    field(&mut out, "variance", c.variance);
    field(&mut out, "sigma", c.sigma);
    field(&mut out, "V", c.variation);
    field(&mut out, "half_width", c.interval_k * c.sigma);
    interval_line(&mut out, "interval", &c.interval);
    out.push('\n');

    render_ft(&mut out, "ft_principled", &r.ft_principled);
    if let Some(p) = &r.ft_paper_mode {
        render_ft(&mut out, "ft_paper_mode", p);
    }

    let _ = writeln!(out, "[comparison]");
    match r.comparison.width_ratio {
        Some(w) => field(&mut out, "width_ratio", w),
        None => {
            let _ = writeln!(out, "  {:<12} undefined", "width_ratio");
        }
    }
    if let Some(w) = r.comparison_paper_mode.and_then(|c| c.width_ratio) {
        field(&mut out, "paper_ratio", w);
    }
    out.push('\n');

    let _ = writeln!(out, "[coverage]");
    render_coverage(&mut out, "classical", &r.coverage.classical);
    render_coverage(&mut out, "ft_principled", &r.coverage.ft_principled);
    if let Some(p) = &r.coverage.ft_paper_mode {
        render_coverage(&mut out, "ft_paper_mode", p);
    }
    out.push('\n');

    let _ = writeln!(out, "[displacements]");
    render_displacements(&mut out, &r.displacements);

    if let Some(res) = &r.interpolant_residuals {
        let _ = writeln!(out, "\n[interpolant_residuals] max |residual| = {}", fmt6(res.max_abs_residual));
        for row in &res.rows {
            let _ = writeln!(
                out,
                "  t = {:<8} expected {:<8} actual {:<10} residual {}",
                fmt6(row.t),
                fmt6(row.expected),
                fmt6(row.actual),
                fmt6(row.residual)
            );
        }
    }
    out
}
