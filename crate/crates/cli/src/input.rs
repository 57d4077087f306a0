//! CSV ingestion.
//!
//! A header row is required. The value column is `value` (or the one named by
//! the caller, or the only/second column); the time column is `t` (or the one
//! named, or the first of two columns) and defaults to 1..n when absent.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use ftrisk_core::{Point, Series};

use crate::dataset;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ColumnSpec {
    pub t_column: Option<String>,
    pub v_column: Option<String>,
}

fn find(header: &csv::StringRecord, name: &str) -> Result<usize> {
    header
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| CliError::MissingColumn {
            name: name.to_string(),
            header: header.iter().collect::<Vec<_>>().join(","),
        })
}

/// Column indices (time, value) for a header.
fn resolve(header: &csv::StringRecord, spec: &ColumnSpec) -> Result<(Option<usize>, usize)> {
    let named = |n: &str| header.iter().position(|h| h.trim() == n);
    let v = match &spec.v_column {
        Some(name) => find(header, name)?,
        None => match named("value") {
            Some(i) => i,
            None if header.len() >= 2 => 1,
            None => 0,
        },
    };
    let t = match &spec.t_column {
        Some(name) => Some(find(header, name)?),
        None => named("t").or(if header.len() >= 2 && v != 0 { Some(0) } else { None }),
    };
    Ok((t, v))
}

fn parse_field(
    record: &csv::StringRecord,
    index: usize,
    header: &csv::StringRecord,
    row: usize,
    path: &Path,
) -> Result<f64> {
    let column = header.get(index).unwrap_or("?").trim().to_string();
    let raw = record.get(index).ok_or_else(|| CliError::Parse {
        path: path.to_path_buf(),
        row,
        column: column.clone(),
        message: "missing field".into(),
    })?;
    raw.trim().parse::<f64>().map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        row,
        column,
        message: format!("{e} ({raw:?})"),
    })
}

/// Parses CSV text. `path` is only used in error messages.
pub fn parse_csv<R: Read>(reader: R, label: &str, path: &Path, spec: &ColumnSpec) -> Result<Series> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            row: 1,
            column: "header".into(),
            message: e.to_string(),
        })?
        .clone();
    let (t_idx, v_idx) = resolve(&header, spec)?;

    let mut points = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        // row 1 is the header
        let row = i + 2;
        let record = record.map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            row,
            column: "?".into(),
            message: e.to_string(),
        })?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let v = parse_field(&record, v_idx, &header, row, path)?;
        let t = match t_idx {
            Some(ti) => parse_field(&record, ti, &header, row, path)?,
            None => (points.len() + 1) as f64,
        };
        let p = Point::try_new(t, v).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            row,
            column: header.get(v_idx).unwrap_or("?").to_string(),
            message: e.to_string(),
        })?;
        points.push(p);
    }
    if points.is_empty() {
        return Err(CliError::EmptySeries(path.display().to_string()));
    }
    Series::new(label, points).map_err(|e| CliError::core(path.display().to_string(), e))
}

/// Loads a series from a CSV file or a builtin `@tag`.
pub fn load_csv(input: &str, spec: &ColumnSpec) -> Result<Series> {
    if dataset::is_builtin(input) {
        return match input {
            dataset::CZECH2011_TAG => dataset::czech2011(),
            other => Err(CliError::UnknownDataset(other.to_string())),
        };
    }
    let path = Path::new(input);
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::FileNotFound(path.to_path_buf()),
        _ => CliError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.to_string());
    parse_csv(file, &label, path, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Series> {
        parse_csv(text.as_bytes(), "x", Path::new("x.csv"), &ColumnSpec::default())
    }

    #[test]
    fn builtin_dataset() {
        let s = load_csv("@czech2011", &ColumnSpec::default()).unwrap();
        assert_eq!(s.len(), 11);
        assert_eq!(s.values(), dataset::CZECH2011_VALUES.to_vec());
        let ts: Vec<f64> = s.points().iter().map(|p| p.t).collect();
        assert_eq!(ts, (1..=11).map(f64::from).collect::<Vec<_>>());
    }

    #[test]
    fn value_only_and_crlf() {
        let s = parse("value\r\n1.5\r\n2.5\r\n").unwrap();
        assert_eq!(s.points(), &[Point::new(1.0, 1.5), Point::new(2.0, 2.5)]);
    }

    #[test]
    fn single_row_is_accepted() {
        assert_eq!(parse("t,value\n1,2\n").unwrap().len(), 1);
    }

    #[test]
    fn named_columns() {
        let spec = ColumnSpec {
            t_column: Some("year".into()),
            v_column: Some("cpi".into()),
        };
        let s = parse_csv(
            "cpi,year\n2.0,2011\n3.0,2012\n".as_bytes(),
            "x",
            Path::new("x.csv"),
            &spec,
        )
        .unwrap();
        assert_eq!(s.points()[1], Point::new(2012.0, 3.0));
        let missing = ColumnSpec {
            v_column: Some("nope".into()),
            ..ColumnSpec::default()
        };
        assert!(matches!(
            parse_csv("a,b\n1,2\n".as_bytes(), "x", Path::new("x.csv"), &missing),
            Err(CliError::MissingColumn { .. })
        ));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(parse("t,value\n"), Err(CliError::EmptySeries(_))));
        match parse("t,value\n1,2\n2,abc\n") {
            Err(CliError::Parse { row, column, .. }) => {
                assert_eq!(row, 3);
                assert_eq!(column, "value");
            }
            other => panic!("{other:?}"),
        }
        // decimal comma is not accepted
        assert!(matches!(parse("value\n\"2,2\"\n"), Err(CliError::Parse { .. })));
        match parse("t,value\n3,1\n2,1\n1,1\n") {
            Err(e @ CliError::Core { .. }) => assert_eq!(e.exit_code(), 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            load_csv("definitely-missing.csv", &ColumnSpec::default()),
            Err(CliError::FileNotFound(_))
        ));
        assert!(matches!(
            load_csv("@nope", &ColumnSpec::default()),
            Err(CliError::UnknownDataset(_))
        ));
    }
}
