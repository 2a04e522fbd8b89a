//! Vector autoregression by equation-wise OLS and information-criterion lag selection.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::{log_det, ols_fit, Matrix};
use crate::series::Panel;

#[derive(Debug, Clone)]
pub struct VarFit {
    pub lag_order: usize,
    /// `coefficients[j][(i, k)]` is the effect of variable `k` at lag `j + 1` in equation `i`.
    pub coefficients: Vec<Matrix>,
    pub intercept: Vec<f64>,
    pub residuals: Matrix,
    /// Residual covariance with divisor `T`.
    pub residual_cov: Matrix,
    pub loglik: f64,
    pub effective_obs: usize,
    /// `m (m p + 1)`
    pub n_params: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoCriteria {
    /// `-2 logL / T + 2 N / T`
    pub aic: f64,
    /// `-2 logL / T + N ln T / T`
    pub sbc: f64,
    /// Unnormalized Schwarz form `T ln|Sigma| + N ln T`.
    pub sbc_raw: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagSelectionRow {
    pub lag: usize,
    pub aic: f64,
    pub sbc: f64,
    pub loglik: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagSelection {
    pub chosen: usize,
    /// Lag with the smallest AIC, reported alongside.
    pub aic_choice: usize,
    pub effective_obs: usize,
    pub rows: Vec<LagSelectionRow>,
}

/// Regressor matrix `[1, x_{t-1}', ..., x_{t-lag}']` for rows `t = first..T`.
fn design(data: &Matrix, lag: usize, first: usize) -> Result<Matrix> {
    let m = data.cols();
    let rows = data.rows() - first;
    let k = 1 + m * lag;
    let mut out = Vec::with_capacity(rows * k);
    for t in first..data.rows() {
        out.push(1.0);
        for j in 1..=lag {
            out.extend_from_slice(data.row(t - j));
        }
    }
    Matrix::new(rows, k, out)
}

/// Fit on rows `first..T`; `first >= lag`.
fn fit_on_sample(data: &Matrix, lag: usize, first: usize) -> Result<VarFit> {
    let m = data.cols();
    let t = data.rows().saturating_sub(first);
    if t <= m * lag + 1 {
        return Err(Error::too_short(first + m * lag + 2, data.rows()));
    }
    let x = design(data, lag, first)?;
    let mut coefficients = vec![Matrix::zeros(m, m); lag];
    let mut intercept = vec![0.0; m];
    let mut residuals = Matrix::zeros(t, m);
    for i in 0..m {
        let y: Vec<f64> = (first..data.rows()).map(|r| data[(r, i)]).collect();
        let fit = ols_fit(&x, &y)?;
        intercept[i] = fit.coefficients[0];
        for (j, a) in coefficients.iter_mut().enumerate() {
            for k in 0..m {
                a[(i, k)] = fit.coefficients[1 + j * m + k];
            }
        }
        for (r, e) in fit.residuals.iter().enumerate() {
            residuals[(r, i)] = *e;
        }
    }
    let residual_cov = residuals.t_matmul(&residuals)?.scale(1.0 / t as f64);
    let tf = t as f64;
    let loglik = -(tf * m as f64 / 2.0) * (1.0 + (2.0 * PI).ln()) - tf / 2.0 * log_det(&residual_cov)?;
    Ok(VarFit {
        lag_order: lag,
        coefficients,
        intercept,
        residuals,
        residual_cov,
        loglik,
        effective_obs: t,
        n_params: m * (m * lag + 1),
    })
}

/// VAR(`lag`) with intercept on the full panel; the first `lag` rows serve as presample.
pub fn fit_var(p: &Panel, lag: usize) -> Result<VarFit> {
    let m = p.width();
    if p.len() <= m * lag + 1 + lag {
        return Err(Error::too_short(m * lag + lag + 2, p.len()));
    }
    fit_on_sample(&p.data, lag, lag)
}

pub fn info_criteria(fit: &VarFit) -> Result<InfoCriteria> {
    let t = fit.effective_obs as f64;
    let n = fit.n_params as f64;
    let base = -2.0 * fit.loglik / t;
    Ok(InfoCriteria {
        aic: base + 2.0 * n / t,
        sbc: base + n * t.ln() / t,
        sbc_raw: t * log_det(&fit.residual_cov)? + n * t.ln(),
    })
}

/// Estimate lags `0..=max_lag` on the common sample that drops the first
/// `max_lag` rows, and pick the Schwarz minimum (ties toward the smaller lag).
pub fn select_lag(p: &Panel, max_lag: usize) -> Result<LagSelection> {
    let mut rows = Vec::with_capacity(max_lag + 1);
    let mut effective_obs = 0;
    for lag in 0..=max_lag {
        let fit = fit_on_sample(&p.data, lag, max_lag)?;
        let ic = info_criteria(&fit)?;
        effective_obs = fit.effective_obs;
        rows.push(LagSelectionRow {
            lag,
            aic: ic.aic,
            sbc: ic.sbc,
            loglik: fit.loglik,
        });
    }
    let argmin = |f: fn(&LagSelectionRow) -> f64| {
        rows.iter()
            .fold((0, f64::INFINITY), |best, r| if f(r) < best.1 { (r.lag, f(r)) } else { best })
            .0
    };
    Ok(LagSelection {
        chosen: argmin(|r| r.sbc),
        aic_choice: argmin(|r| r.aic),
        effective_obs,
        rows,
    })
}
