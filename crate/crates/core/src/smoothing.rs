//! The φ map: every interior series point is replaced by the Fermat-Torricelli
//! point of the triangle it forms with its two neighbours.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{fermat_point, Point, SolutionCase, Triangle};

/// An ordered numerical series on the (t, v) plane.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Series {
    points: Vec<Point>,
    label: String,
}

impl Series {
    /// Validates finiteness and strictly increasing `t`. Length is not
    /// checked here; [`smooth`] needs at least three points.
    pub fn new(label: impl Into<String>, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if !p.is_finite() {
                return Err(Error::NonFinite { t: p.t, v: p.v });
            }
        }
        if let Some(index) = points.windows(2).position(|w| !(w[1].t > w[0].t)) {
            return Err(Error::NonMonotonicTime { index: index + 1 });
        }
        Ok(Series {
            points,
            label: label.into(),
        })
    }

    /// Values placed at t = 1, 2, ..., n.
    pub fn from_values(label: impl Into<String>, values: &[f64]) -> Result<Self> {
        let points = values
            .iter()
            .enumerate()
            .map(|(i, &v)| Point::new((i + 1) as f64, v))
            .collect();
        Series::new(label, points)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.v).collect()
    }
}

/// What happens to the first and last point, which have no triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum EndpointPolicy {
    /// Endpoints are left out of the smoothed series.
    #[default]
    Drop,
}

impl EndpointPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            EndpointPolicy::Drop => "drop",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothOptions {
    /// Factor applied to `t` before the geometry and undone afterwards.
    pub t_scale: f64,
    /// Number of φ passes; endpoints stay fixed between passes.
    pub repeat: u32,
    pub endpoint_policy: EndpointPolicy,
}

impl Default for SmoothOptions {
    fn default() -> Self {
        SmoothOptions {
            t_scale: 1.0,
            repeat: 1,
            endpoint_policy: EndpointPolicy::Drop,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SmoothedPoint {
    /// 1-based position of the centre point in the source series.
    pub center_index: usize,
    pub original: Point,
    pub smoothed: Point,
    /// `|v_original − v_smoothed|`.
    pub value_displacement: f64,
    /// Euclidean distance between original and smoothed point.
    pub planar_displacement: f64,
    /// Case of the last pass.
    pub case: SolutionCase,
}

impl SmoothedPoint {
    fn new(center_index: usize, original: Point, smoothed: Point, case: SolutionCase) -> Self {
        SmoothedPoint {
            center_index,
            original,
            smoothed,
            value_displacement: (original.v - smoothed.v).abs(),
            planar_displacement: original.distance(&smoothed),
            case,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SmoothedSeries {
    pub source: Series,
    pub points: Vec<SmoothedPoint>,
    pub endpoint_policy: EndpointPolicy,
}

impl SmoothedSeries {
    pub fn original_values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.original.v).collect()
    }

    pub fn smoothed_values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.smoothed.v).collect()
    }

    pub fn smoothed_points(&self) -> Vec<Point> {
        self.points.iter().map(|p| p.smoothed).collect()
    }
}

/// One pass over `points`; returns the image and case of every interior point.
fn phi_pass(points: &[Point], t_scale: f64) -> Result<Vec<(Point, SolutionCase)>> {
    let scaled = |p: Point| Point::new(p.t * t_scale, p.v);
    points
        .windows(3)
        .map(|w| {
            let tri = Triangle::new(scaled(w[0]), scaled(w[1]), scaled(w[2]));
            let sol = fermat_point(&tri)?;
            // Vertex solutions are copied from the input so they stay exact.
            let location = match sol.case {
                SolutionCase::Interior => Point::new(sol.location.t / t_scale, sol.location.v),
                SolutionCase::VertexOptimal(i) => w[i],
                SolutionCase::Collinear => {
                    let i = (0..3).find(|&i| tri.vertex(i) == sol.location).unwrap_or(1);
                    w[i]
                }
            };
            Ok((location, sol.case))
        })
        .collect()
}

/// Single φ pass with default options.
pub fn smooth(series: &Series) -> Result<SmoothedSeries> {
    smooth_with(series, &SmoothOptions::default())
}

pub fn smooth_with(series: &Series, options: &SmoothOptions) -> Result<SmoothedSeries> {
    if !(options.t_scale > 0.0 && options.t_scale.is_finite()) {
        return Err(Error::InvalidParameter("t_scale must be positive"));
    }
    if options.repeat == 0 {
        return Err(Error::InvalidParameter("repeat must be at least 1"));
    }
    let src = series.points();
    if src.len() < 3 {
        return Err(Error::SeriesTooShort { len: src.len() });
    }

    let mut current: Vec<Point> = src.to_vec();
    let mut cases = Vec::new();
    for _ in 0..options.repeat {
        let images = phi_pass(&current, options.t_scale)?;
        let last = current[current.len() - 1];
        let mut next = Vec::with_capacity(current.len());
        next.push(current[0]);
        next.extend(images.iter().map(|(p, _)| *p));
        next.push(last);
        cases = images.into_iter().map(|(_, c)| c).collect();
        current = next;
    }

    let points = (1..src.len() - 1)
        .map(|i| SmoothedPoint::new(i + 1, src[i], current[i], cases[i - 1]))
        .collect();
    Ok(SmoothedSeries {
        source: series.clone(),
        points,
        endpoint_policy: options.endpoint_policy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DisplacementRow {
    pub center_index: usize,
    pub value_displacement: f64,
    pub planar_displacement: f64,
}

pub fn displacement_table(s: &SmoothedSeries) -> Vec<DisplacementRow> {
    s.points
        .iter()
        .map(|p| DisplacementRow {
            center_index: p.center_index,
            value_displacement: p.value_displacement,
            planar_displacement: p.planar_displacement,
        })
        .collect()
}
