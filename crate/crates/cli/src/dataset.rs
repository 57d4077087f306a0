//! Bundled 2011-2021 Czech annual inflation series.

use ftrisk_core::Point;

use crate::error::Result;
use crate::input::{parse_csv, ColumnSpec};
use ftrisk_core::Series;

pub const CZECH2011_TAG: &str = "@czech2011";
pub const CZECH2011_CSV: &str = include_str!("../data/czech2011.csv");

/// Annual inflation in percent, 2011 to 2021.
pub const CZECH2011_VALUES: [f64; 11] = [2.2, 3.5, 1.4, 0.4, 0.3, 0.6, 2.4, 2.0, 2.6, 3.3, 3.3];

/// Published Fermat points for the series, including a final point at
/// t = 10.638 that the three-point rule does not produce. Used only for the
/// `paper_mode` figures.
pub const PUBLISHED_PHI: [Point; 10] = [
    Point::new(1.7912, 2.4661),
    Point::new(3.0, 1.4),
    Point::new(4.0, 0.4),
    Point::new(5.0, 0.3),
    Point::new(6.0, 0.6),
    Point::new(7.1264, 2.1045),
    Point::new(8.0, 2.0),
    Point::new(9.0, 2.6),
    Point::new(10.0, 3.3),
    Point::new(10.6380, 3.5719),
];

/// Original values paired with [`PUBLISHED_PHI`].
pub const PUBLISHED_ORIGINALS: [f64; 10] = [3.5, 1.4, 0.4, 0.3, 0.6, 2.4, 2.0, 2.6, 3.3, 3.3];

pub fn published_phi_values() -> Vec<f64> {
    PUBLISHED_PHI.iter().map(|p| p.v).collect()
}

pub fn czech2011() -> Result<Series> {
    parse_csv(CZECH2011_CSV.as_bytes(), "czech2011", "@czech2011".as_ref(), &ColumnSpec::default())
}

pub fn is_builtin(input: &str) -> bool {
    input.starts_with('@')
}
