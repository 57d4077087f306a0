//! Dispersion statistics around the mean and around the smoothed series.
//!
//! Classical: population variance, σ, coefficient of variation `V = σ / mean`
//! and the interval `mean ± k·σ`.
//!
//! Fermat-Torricelli relative: `F` is the mean squared value-axis gap between
//! each original value and its smoothed image, `S = √F`, `M_phi` is the mean of
//! the smoothed values, `W = S / M_phi`, and the interval is `M_phi ± m·S`
//! (m = 4 by default).

use libm::sqrt;

use crate::error::{Error, Result};

pub const DEFAULT_K_SIGMA: f64 = 3.0;
pub const DEFAULT_S_MULTIPLIER: f64 = 4.0;

/// Closed interval `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn centered(center: f64, half_width: f64) -> Self {
        Interval {
            low: center - half_width,
            high: center + half_width,
        }
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    /// Whether `self` lies strictly inside `other`.
    pub fn strictly_within(&self, other: &Interval) -> bool {
        other.low < self.low && self.high < other.high
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassicalSummary {
    pub n: usize,
    pub mean: f64,
    /// Population variance (divides by n).
    pub variance: f64,
    pub sigma: f64,
    /// `sigma / mean`.
    pub variation: f64,
    pub interval_k: f64,
    pub interval: Interval,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn classical_summary(values: &[f64], k: f64) -> Result<ClassicalSummary> {
    if values.len() < 2 {
        return Err(Error::InsufficientData {
            required: 2,
            got: values.len(),
        });
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter("k must be positive"));
    }
    let n = values.len();
    let mean = mean(values);
    if mean == 0.0 {
        return Err(Error::ZeroMean);
    }
    let variance = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
    let sigma = sqrt(variance);
    Ok(ClassicalSummary {
        n,
        mean,
        variance,
        sigma,
        variation: sigma / mean,
        interval_k: k,
        interval: Interval::centered(mean, k * sigma),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FtSummary {
    pub n: usize,
    /// Mean squared gap between originals and smoothed values.
    pub f: f64,
    pub s: f64,
    pub m_phi: f64,
    pub w: f64,
    pub multiplier: f64,
    pub interval: Interval,
}

/// [`ft_summary_with`] using the default multiplier of 4.
pub fn ft_summary(originals: &[f64], smoothed: &[f64]) -> Result<FtSummary> {
    ft_summary_with(originals, smoothed, DEFAULT_S_MULTIPLIER)
}

/// `originals[i]` and `smoothed[i]` must be the value coordinates of the same
/// series point before and after smoothing.
pub fn ft_summary_with(originals: &[f64], smoothed: &[f64], multiplier: f64) -> Result<FtSummary> {
    if originals.len() != smoothed.len() {
        return Err(Error::LengthMismatch {
            originals: originals.len(),
            smoothed: smoothed.len(),
        });
    }
    if originals.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(multiplier > 0.0 && multiplier.is_finite()) {
        return Err(Error::InvalidParameter("multiplier must be positive"));
    }
    let n = originals.len();
    let f = originals
        .iter()
        .zip(smoothed)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        / n as f64;
    let s = sqrt(f);
    let m_phi = mean(smoothed);
    if m_phi == 0.0 {
        return Err(Error::ZeroMPhi);
    }
    Ok(FtSummary {
        n,
        f,
        s,
        m_phi,
        w: s / m_phi,
        multiplier,
        interval: Interval::centered(m_phi, multiplier * s),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Coverage {
    pub fraction: f64,
    pub inside: usize,
    pub total: usize,
}

/// Share of `values` inside the closed interval.
pub fn coverage(values: &[f64], interval: &Interval) -> Result<Coverage> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(interval.low <= interval.high) {
        return Err(Error::InvalidInterval {
            low: interval.low,
            high: interval.high,
        });
    }
    let inside = values.iter().filter(|&&v| interval.contains(v)).count();
    Ok(Coverage {
        fraction: inside as f64 / values.len() as f64,
        inside,
        total: values.len(),
    })
}

/// One row of the side-by-side comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComparisonRow {
    /// σ or S.
    pub deviation: f64,
    /// Mean or M_phi.
    pub center: f64,
    /// Multiplier times deviation.
    pub half_width: f64,
    /// V or W.
    pub variation: f64,
    pub interval: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Comparison {
    pub classical: ComparisonRow,
    pub fermat: ComparisonRow,
    /// Width of the Fermat interval over width of the classical one. Both
    /// degenerate gives 1; `None` when only the classical one is degenerate.
    pub width_ratio: Option<f64>,
}

pub fn comparison_report(classical: &ClassicalSummary, ft: &FtSummary) -> Comparison {
    let cw = classical.interval.width();
    let fw = ft.interval.width();
    let width_ratio = if cw == 0.0 {
        (fw == 0.0).then_some(1.0)
    } else {
        Some(fw / cw)
    };
    Comparison {
        classical: ComparisonRow {
            deviation: classical.sigma,
            center: classical.mean,
            half_width: classical.interval_k * classical.sigma,
            variation: classical.variation,
            interval: classical.interval,
        },
        fermat: ComparisonRow {
            deviation: ft.s,
            center: ft.m_phi,
            half_width: ft.multiplier * ft.s,
            variation: ft.w,
            interval: ft.interval,
        },
        width_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CZECH: [f64; 11] = [2.2, 3.5, 1.4, 0.4, 0.3, 0.6, 2.4, 2.0, 2.6, 3.3, 3.3];
    const TABLE_I: [f64; 10] = [3.5, 1.4, 0.4, 0.3, 0.6, 2.4, 2.0, 2.6, 3.3, 3.3];
    const TABLE_PHI: [f64; 10] = [2.4661, 1.4, 0.4, 0.3, 0.6, 2.1045, 2.0, 2.6, 3.3, 3.5719];

    fn near(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn classical_czech() {
        let c = classical_summary(&CZECH, 3.0).unwrap();
        assert!(near(c.mean, 2.0, 1e-4));
        assert!(near(c.sigma, 1.1265, 1e-4));
        assert!(near(c.variation, 0.56325, 1e-4));
        // the published 3σ = 3.3795 is three times the rounded σ; unrounded it is 3.37962
        assert!(near(3.0 * c.sigma, 3.3795, 1e-3));
        assert!(near(c.interval.low, -1.3795, 1e-3));
        assert!(near(c.interval.high, 5.3795, 1e-3));
    }

    #[test]
    fn classical_trivial() {
        let c = classical_summary(&[5.0, 5.0, 5.0], 3.0).unwrap();
        assert_eq!(c.sigma, 0.0);
        assert_eq!(c.interval, Interval { low: 5.0, high: 5.0 });

        let c = classical_summary(&[0.0, 2.0], 1.0).unwrap();
        assert_eq!((c.mean, c.variance, c.sigma), (1.0, 1.0, 1.0));
        assert_eq!(c.interval, Interval { low: 0.0, high: 2.0 });
    }

    #[test]
    fn classical_errors() {
        assert_eq!(
            classical_summary(&[1.0], 3.0),
            Err(Error::InsufficientData { required: 2, got: 1 })
        );
        assert_eq!(classical_summary(&[-1.0, 1.0], 3.0), Err(Error::ZeroMean));
    }

    #[test]
    fn ft_table_pairs() {
        let f = ft_summary(&TABLE_I, &TABLE_PHI).unwrap();
        assert!(near(f.m_phi, 1.87425, 1e-4));
        assert!(near(f.s, 0.3507, 1e-3));
        assert!(near(f.w, 0.1871, 1e-3));
        assert!(near(f.interval.low, 0.47, 0.01));
        assert!(near(f.interval.high, 3.27, 0.01));
        assert!(near(f.interval.width(), 8.0 * f.s, 1e-14));
    }

    #[test]
    fn ft_trivial() {
        let f = ft_summary(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!((f.f, f.s), (0.0, 0.0));
        assert_eq!(f.interval, Interval { low: 1.5, high: 1.5 });

        let f = ft_summary(&[2.0, 4.0], &[1.0, 3.0]).unwrap();
        assert_eq!((f.f, f.s, f.m_phi, f.w), (1.0, 1.0, 2.0, 0.5));
        assert_eq!(f.interval, Interval { low: -2.0, high: 6.0 });
    }

    #[test]
    fn ft_errors() {
        assert_eq!(
            ft_summary(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { originals: 1, smoothed: 2 })
        );
        assert_eq!(ft_summary(&[], &[]), Err(Error::EmptyInput));
        assert_eq!(ft_summary(&[1.0, -1.0], &[1.0, -1.0]), Err(Error::ZeroMPhi));
    }

    #[test]
    fn coverage_examples() {
        let wide = coverage(&CZECH, &Interval { low: -1.3795, high: 5.3795 }).unwrap();
        assert_eq!((wide.inside, wide.fraction), (11, 1.0));

        // 0.4 and 0.3 fall below 0.47; 3.5, 3.3 and 3.3 lie above 3.27
        let narrow = coverage(&CZECH, &Interval { low: 0.47, high: 3.27 }).unwrap();
        assert_eq!(narrow.inside, 6);
        assert_eq!(narrow.fraction, 6.0 / 11.0);

        let all = coverage(&CZECH, &Interval { low: -0.7, high: 4.5 }).unwrap();
        assert_eq!(all.fraction, 1.0);
    }

    #[test]
    fn coverage_errors() {
        assert_eq!(
            coverage(&[], &Interval { low: 0.0, high: 1.0 }),
            Err(Error::EmptyInput)
        );
        assert!(matches!(
            coverage(&[1.0], &Interval { low: 1.0, high: 0.0 }),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn comparison_examples() {
        let c = classical_summary(&[2.0, 4.0], 3.0).unwrap();
        let f = ft_summary(&[2.0, 4.0], &[1.0, 3.0]).unwrap();
        let r = comparison_report(&c, &f);
        assert_eq!(r.classical.interval.width(), 6.0);
        assert_eq!(r.fermat.interval.width(), 8.0);
        assert_eq!(r.width_ratio, Some(8.0 / 6.0));

        let c = classical_summary(&[5.0, 5.0, 5.0], 3.0).unwrap();
        let f = ft_summary(&[5.0, 5.0, 5.0], &[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(comparison_report(&c, &f).width_ratio, Some(1.0));

        let f = ft_summary(&[5.0, 5.0, 5.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(comparison_report(&c, &f).width_ratio, None);
    }

    #[test]
    fn comparison_czech_table() {
        let c = classical_summary(&CZECH, 3.0).unwrap();
        let f = ft_summary(&TABLE_I, &TABLE_PHI).unwrap();
        let r = comparison_report(&c, &f);
        assert!(near(r.classical.half_width, 3.3795, 1e-3));
        assert!(near(r.fermat.deviation, 0.35, 2e-3));
        assert!(near(r.fermat.half_width, 1.4, 0.01));
        assert!(near(r.fermat.variation, 0.187, 2e-3));
        assert!(r.fermat.interval.strictly_within(&r.classical.interval));
    }
}
