//! Real-valued sums of complex exponentials, `Σ a_j · exp(r_j · t)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Imaginary residual tolerated relative to `max(1, |Re|)`.
pub const IMAG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpTerm {
    pub amplitude: Complex64,
    pub rate: Complex64,
}

impl ExpTerm {
    pub const fn new(amplitude: Complex64, rate: Complex64) -> Self {
        ExpTerm { amplitude, rate }
    }

    pub const fn real(amplitude: f64, rate: f64) -> Self {
        ExpTerm::new(Complex64::new(amplitude, 0.0), Complex64::new(rate, 0.0))
    }

    pub fn conj(&self) -> Self {
        ExpTerm::new(self.amplitude.conj(), self.rate.conj())
    }

    pub fn is_real(&self) -> bool {
        self.amplitude.im == 0.0 && self.rate.im == 0.0
    }

    pub fn value_at(&self, t: f64) -> Complex64 {
        self.amplitude * (self.rate * t).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExponentialSum {
    pub terms: Vec<ExpTerm>,
}

impl ExponentialSum {
    pub fn new(terms: Vec<ExpTerm>) -> Self {
        ExponentialSum { terms }
    }

    /// Concatenation of the two term lists.
    pub fn concat(&self, other: &ExponentialSum) -> ExponentialSum {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        ExponentialSum { terms }
    }

    pub fn conj(&self) -> ExponentialSum {
        ExponentialSum::new(self.terms.iter().map(ExpTerm::conj).collect())
    }

    /// Every term with a nonzero imaginary part has its exact conjugate
    /// elsewhere in the list (matched one to one).
    pub fn has_conjugate_pairs(&self) -> bool {
        let mut used = alloc::vec![false; self.terms.len()];
        for (i, term) in self.terms.iter().enumerate() {
            if term.is_real() || used[i] {
                continue;
            }
            let partner = (0..self.terms.len())
                .find(|&j| j != i && !used[j] && self.terms[j] == term.conj());
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => return false,
            }
        }
        true
    }

    /// Full complex value at `t`.
    pub fn complex_value(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|term| term.value_at(t)).sum()
    }
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The ten-term interpolant of the Fermat points of the 2011-2021 Czech
/// inflation series (t is the year number, 1 for 2011).
#[allow(clippy::excessive_precision)]
pub const CZECH_INFLATION_TERMS: [ExpTerm; 10] = [
    ExpTerm::real(0.264901377876643, 0.249672956416996),
    ExpTerm::new(
        c(-0.007782663831297, 0.015129431149835),
        c(0.076090999247734, 2.511250329378980),
    ),
    ExpTerm::new(
        c(-0.007782663831297, -0.015129431149835),
        c(0.076090999247734, -2.511250329378980),
    ),
    ExpTerm::new(
        c(-1.671150941557596, -0.869131660330525),
        c(-0.303576461438207, 1.138618581934044),
    ),
    ExpTerm::new(
        c(-1.671150941557596, 0.869131660330525),
        c(-0.303576461438207, -1.138618581934044),
    ),
    ExpTerm::real(-0.014659833689592, -0.249672956416996),
    ExpTerm::new(
        c(0.138184785734736, -0.180858361988375),
        c(-0.076090999247734, -2.511250329378980),
    ),
    ExpTerm::new(
        c(0.138184785734736, 0.180858361988375),
        c(-0.076090999247734, 2.511250329378980),
    ),
    ExpTerm::new(
        c(0.003015325281862, -0.001937822578385),
        c(0.303576461438207, -1.138618581934044),
    ),
    ExpTerm::new(
        c(0.003015325281862, 0.001937822578385),
        c(0.303576461438207, 1.138618581934044),
    ),
];

pub fn eq10_coefficients() -> ExponentialSum {
    ExponentialSum::new(CZECH_INFLATION_TERMS.to_vec())
}

/// Real value of the sum at `t`. Fails if the imaginary part does not cancel.
pub fn evaluate(f: &ExponentialSum, t: f64) -> Result<f64> {
    let z = f.complex_value(t);
    if z.im.abs() > IMAG_TOLERANCE * z.re.abs().max(1.0) || !z.re.is_finite() {
        return Err(Error::NonRealResult { t, imag: z.im });
    }
    Ok(z.re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualRow {
    pub t: f64,
    pub expected: f64,
    pub actual: f64,
    /// `actual − expected`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualReport {
    pub rows: Vec<ResidualRow>,
    /// Largest `|residual|`; 0 for an empty report.
    pub max_abs_residual: f64,
}

pub fn residual_report(f: &ExponentialSum, points: &[Point]) -> Result<ResidualReport> {
    let rows = points
        .iter()
        .map(|p| {
            let actual = evaluate(f, p.t)?;
            Ok(ResidualRow {
                t: p.t,
                expected: p.v,
                actual,
                residual: actual - p.v,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_abs_residual = rows.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    Ok(ResidualReport {
        rows,
        max_abs_residual,
    })
}
