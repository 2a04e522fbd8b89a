//! Linear algebra, least squares and distribution functions shared by every test.

pub mod dist;
mod eig;
mod matrix;
mod ols;

pub use dist::{chi2_ppf, chi2_sf, f_sf, norm_cdf};
pub use eig::{cholesky, log_det, solve_generalized_eig, spd_inverse, symmetric_eigen, EigenPairs};
pub use matrix::Matrix;
pub use ols::{ols_fit, OlsFit, RANK_TOLERANCE};

/// Arithmetic mean; `NaN` for an empty slice.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
