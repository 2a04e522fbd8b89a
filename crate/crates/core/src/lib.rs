//! Econometric time-series toolkit.
//!
//! The crate covers the full path from raw dated observations to a set of
//! report tables: monthly resampling, descriptive statistics, ADF and
//! Phillips-Perron unit-root tests, VAR lag selection, the Johansen
//! cointegration rank test and pairwise Granger causality.

pub mod descriptive;
pub mod error;
pub mod granger;
pub mod johansen;
pub mod numeric;
pub mod report;
pub mod series;
pub mod synth;
pub mod unit_root;
pub mod var;

pub use error::{Error, Result};
pub use numeric::Matrix;
pub use series::{Month, Panel, RawSeries, Series};
