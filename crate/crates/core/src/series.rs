//! Dated observations, monthly resampling, alignment and lag transforms.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Matrix;

pub const DEFAULT_DATE_FORMAT: &str = "%Y-%m-%d";

/// A calendar month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Month {
    pub year: i32,
    /// 1..=12
    pub month: u32,
}

impl Month {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::Domain(format!("month {month} outside 1..=12")));
        }
        Ok(Self { year, month })
    }

    pub fn of(date: NaiveDate) -> Self {
        Self {
            year: date.year(),
            month: date.month(),
        }
    }

    fn ordinal(self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    fn from_ordinal(ord: i64) -> Self {
        Self {
            year: ord.div_euclid(12) as i32,
            month: (ord.rem_euclid(12) + 1) as u32,
        }
    }

    pub fn offset(self, months: i64) -> Self {
        Self::from_ordinal(self.ordinal() + months)
    }

    /// Number of months from `self` to `later` (negative if `later` precedes `self`).
    pub fn months_until(self, later: Month) -> i64 {
        later.ordinal() - self.ordinal()
    }

    pub fn first_day(self) -> NaiveDate {
        NaiveDate::from_ymd_opt(self.year, self.month, 1).expect("valid month")
    }
}

impl fmt::Display for Month {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// Dated observations of one variable, strictly increasing in date.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSeries {
    pub name: String,
    pub points: Vec<(NaiveDate, f64)>,
    /// Header line as read from the source file, if there was one.
    pub header: Option<String>,
}

impl RawSeries {
    /// Sorts by date and rejects duplicates and non-finite values.
    pub fn new(name: impl Into<String>, mut points: Vec<(NaiveDate, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyFile);
        }
        if let Some((_, v)) = points.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite observation {v}")));
        }
        points.sort_by_key(|(d, _)| *d);
        if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateDate(w[0].0));
        }
        Ok(Self {
            name: name.into(),
            points,
            header: None,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Check the positivity required of price data.
    pub fn ensure_positive(&self) -> Result<()> {
        match self.points.iter().find(|(_, v)| *v <= 0.0) {
            Some((d, v)) => Err(Error::Domain(format!("non-positive price {v} on {d}"))),
            None => Ok(()),
        }
    }

    /// Serialize as `date,value` lines using the shortest round-trip
    /// representation of each value.
    pub fn to_csv(&self, date_format: &str) -> String {
        let mut out = String::new();
        if let Some(h) = &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for (d, v) in &self.points {
            out.push_str(&format!("{},{}\n", d.format(date_format), v));
        }
        out
    }
}

/// Parse `date,value` rows. A first line whose second field is not numeric is
/// taken as a header.
pub fn parse_csv(text: &str, name: &str, date_format: &str) -> Result<RawSeries> {
    let mut points = Vec::new();
    let mut header = None;
    let mut seen = std::collections::HashSet::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (date_field, value_field) = match (fields.next(), fields.next(), fields.next()) {
            (Some(d), Some(v), None) => (d.trim(), v.trim()),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: "expected two comma-separated fields".into(),
                })
            }
        };
        let value: f64 = match value_field.parse() {
            Ok(v) => v,
            Err(_) if points.is_empty() && header.is_none() => {
                header = Some(line.to_string());
                continue;
            }
            Err(_) => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("invalid number {value_field:?}"),
                })
            }
        };
        if !value.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("non-finite value {value_field:?}"),
            });
        }
        let date = NaiveDate::parse_from_str(date_field, date_format).map_err(|e| Error::Parse {
            line: lineno,
            message: format!("invalid date {date_field:?}: {e}"),
        })?;
        if !seen.insert(date) {
            return Err(Error::DuplicateDate(date));
        }
        points.push((date, value));
    }
    if points.is_empty() {
        return Err(Error::EmptyFile);
    }
    let mut raw = RawSeries::new(name, points)?;
    raw.header = header;
    Ok(raw)
}

/// Read a two-column CSV file; the series is named after the file stem.
pub fn load_csv(path: impl AsRef<Path>, date_format: &str) -> Result<RawSeries> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_csv(&text, &name, date_format)
}

/// Regular monthly observations without gaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub start: Month,
    pub values: Vec<f64>,
}

impl Series {
    pub fn new(name: impl Into<String>, start: Month, values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("series values must be finite".into()));
        }
        Ok(Self {
            name: name.into(),
            start,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Last month covered; equal to `start` for an empty series.
    pub fn end(&self) -> Month {
        self.start.offset(self.values.len().saturating_sub(1) as i64)
    }

    pub fn periods(&self) -> Vec<Month> {
        (0..self.len()).map(|i| self.start.offset(i as i64)).collect()
    }

    pub fn diff(&self, order: usize) -> Result<Series> {
        diff(self, order)
    }
}

/// Average the observations in each calendar month.
pub fn aggregate_monthly(raw: &RawSeries) -> Result<Series> {
    let mut buckets: BTreeMap<Month, (f64, usize)> = BTreeMap::new();
    for (d, v) in &raw.points {
        let e = buckets.entry(Month::of(*d)).or_insert((0.0, 0));
        e.0 += v;
        e.1 += 1;
    }
    let (&first, _) = buckets.first_key_value().ok_or(Error::EmptyFile)?;
    let (&last, _) = buckets.last_key_value().ok_or(Error::EmptyFile)?;
    let span = first.months_until(last) + 1;
    let mut values = Vec::with_capacity(span as usize);
    for i in 0..span {
        let month = first.offset(i);
        match buckets.get(&month) {
            Some((sum, n)) => values.push(sum / *n as f64),
            None => return Err(Error::Gap(month)),
        }
    }
    Series::new(raw.name.clone(), first, values)
}

/// Series on a common month axis, one column per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub labels: Vec<String>,
    pub start: Month,
    pub data: Matrix,
}

impl Panel {
    pub fn new(labels: Vec<String>, start: Month, data: Matrix) -> Result<Self> {
        if labels.len() != data.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                data.cols()
            )));
        }
        if data.cols() < 2 {
            return Err(Error::DimensionMismatch("a panel needs at least two series".into()));
        }
        if data.rows() < 2 {
            return Err(Error::too_short(2, data.rows()));
        }
        Ok(Self {
            labels,
            start,
            data,
        })
    }

    pub fn from_columns(labels: Vec<String>, start: Month, columns: &[&[f64]]) -> Result<Self> {
        Self::new(labels, start, Matrix::from_columns(columns)?)
    }

    /// Number of periods, `T`.
    pub fn len(&self) -> usize {
        self.data.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.data.rows() == 0
    }

    /// Number of variables, `m`.
    pub fn width(&self) -> usize {
        self.data.cols()
    }

    pub fn periods(&self) -> Vec<Month> {
        (0..self.len()).map(|i| self.start.offset(i as i64)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.data.column(j)
    }

    pub fn series(&self, j: usize) -> Series {
        Series {
            name: self.labels[j].clone(),
            start: self.start,
            values: self.column(j),
        }
    }

    /// First differences of every column.
    pub fn diff(&self) -> Result<Panel> {
        let cols: Vec<Vec<f64>> = (0..self.width())
            .map(|j| diff_values(&self.column(j), 1))
            .collect::<Result<_>>()?;
        let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        Panel::from_columns(self.labels.clone(), self.start.offset(1), &refs)
    }

    /// Same panel with columns in the given order.
    pub fn reorder(&self, order: &[usize]) -> Result<Panel> {
        let cols: Vec<Vec<f64>> = order.iter().map(|&j| self.column(j)).collect();
        let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        let labels = order.iter().map(|&j| self.labels[j].clone()).collect();
        Panel::from_columns(labels, self.start, &refs)
    }
}

/// Restrict two series to their common span.
pub fn align(a: &Series, b: &Series) -> Result<Panel> {
    align_all(&[a.clone(), b.clone()])
}

/// Restrict any number (at least two) of series to their common span.
pub fn align_all(series: &[Series]) -> Result<Panel> {
    if series.len() < 2 {
        return Err(Error::DimensionMismatch("a panel needs at least two series".into()));
    }
    if series.iter().any(Series::is_empty) {
        return Err(Error::NoOverlap);
    }
    let start = series.iter().map(|s| s.start).max().expect("non-empty");
    let end = series.iter().map(Series::end).min().expect("non-empty");
    let span = start.months_until(end) + 1;
    if span < 2 {
        return Err(Error::NoOverlap);
    }
    let cols: Vec<&[f64]> = series
        .iter()
        .map(|s| {
            let off = s.start.months_until(start) as usize;
            &s.values[off..off + span as usize]
        })
        .collect();
    let labels = series.iter().map(|s| s.name.clone()).collect();
    Panel::from_columns(labels, start, &cols)
}

/// Apply first differencing `order` times to a plain vector.
pub fn diff_values(xs: &[f64], order: usize) -> Result<Vec<f64>> {
    if xs.len() <= order {
        return Err(Error::too_short(order + 1, xs.len()));
    }
    let mut out = xs.to_vec();
    for _ in 0..order {
        out = out.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(out)
}

pub fn diff(s: &Series, order: usize) -> Result<Series> {
    Ok(Series {
        name: s.name.clone(),
        start: s.start.offset(order as i64),
        values: diff_values(&s.values, order)?,
    })
}

/// Lag matrix of a plain vector: row `i` corresponds to observation `i + p`
/// and column `j` holds the value `j + 1` periods earlier.
pub fn lag_values(xs: &[f64], p: usize) -> Result<Matrix> {
    if xs.len() <= p {
        return Err(Error::too_short(p + 1, xs.len()));
    }
    let rows = xs.len() - p;
    let mut m = Matrix::zeros(rows, p);
    for i in 0..rows {
        let t = i + p;
        for j in 0..p {
            m[(i, j)] = xs[t - j - 1];
        }
    }
    Ok(m)
}

pub fn lag_matrix(s: &Series, p: usize) -> Result<Matrix> {
    lag_values(&s.values, p)
}
