//! Fermat-Torricelli point smoothing of numerical series.
//!
//! Each interior point of a series is replaced by the point minimising the
//! summed distance to itself and its two neighbours. The gap between a series
//! and its smoothed image gives a dispersion measure `S` and a forecast
//! interval `M_phi ± 4S`, reported next to the classical `mean ± 3σ`.
//!
//! ```
//! use ftrisk_core::{smoothing::{smooth, Series}, stats};
//!
//! let series = Series::from_values("demo", &[2.2, 3.5, 1.4, 0.4, 0.3]).unwrap();
//! let smoothed = smooth(&series).unwrap();
//! let ft = stats::ft_summary(&smoothed.original_values(), &smoothed.smoothed_values()).unwrap();
//! assert!(ft.s > 0.0);
//! ```
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod geometry;
pub mod interpolant;
pub mod smoothing;
pub mod stats;

pub use error::{Error, Result};
pub use geometry::{fermat_point, FermatSolution, Point, SolutionCase, Triangle};
pub use smoothing::{smooth, Series, SmoothedSeries};
