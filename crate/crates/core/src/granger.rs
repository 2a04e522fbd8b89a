//! Pairwise Granger causality F-tests.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{f_sf, ols_fit, Matrix};
use crate::series::{diff_values, Panel};

#[derive(Debug, Clone, PartialEq)]
pub struct GrangerResult {
    pub cause: String,
    pub effect: String,
    pub lag: usize,
    pub f_statistic: f64,
    pub p_value: f64,
    /// `(lag, obs_used - 2 lag - 1)`
    pub df: (usize, usize),
    pub obs_used: usize,
    pub on_levels: bool,
    pub ssr_restricted: f64,
    pub ssr_unrestricted: f64,
}

impl GrangerResult {
    /// Row label in the usual table form.
    pub fn null_hypothesis(&self) -> String {
        format!("{} does not Granger Cause {}", self.cause, self.effect)
    }
}

/// Outcome of testing both directions of a pair `(first, second)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// Only the first variable causes the second.
    H1,
    /// Only the second variable causes the first.
    H2,
    /// Causality runs both ways.
    H3,
    /// No direction is significant.
    None,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::H1 => "H1",
            Hypothesis::H2 => "H2",
            Hypothesis::H3 => "H3",
            Hypothesis::None => "none",
        })
    }
}

/// Both directions for a two-column panel `[first, second]`.
///
/// The returned pair is `(second -> first, first -> second)`. Each direction
/// compares `effect ~ 1 + own lags + cause lags` with `effect ~ 1 + own lags`
/// on the same sample.
pub fn granger_test(p: &Panel, lag: usize, on_levels: bool) -> Result<(GrangerResult, GrangerResult)> {
    if p.width() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Granger test needs exactly two series, got {}",
            p.width()
        )));
    }
    if lag == 0 {
        return Err(Error::Domain("Granger lag must be at least 1".into()));
    }
    let (a, b) = if on_levels {
        (p.column(0), p.column(1))
    } else {
        (diff_values(&p.column(0), 1)?, diff_values(&p.column(1), 1)?)
    };
    let usable = a.len().saturating_sub(lag);
    if usable <= 2 * lag + 1 {
        return Err(Error::too_short(3 * lag + 2, a.len()));
    }
    let second_to_first = one_direction(&a, &b, lag)?;
    let first_to_second = one_direction(&b, &a, lag)?;
    let wrap = |d: Direction, cause: &str, effect: &str| GrangerResult {
        cause: cause.to_string(),
        effect: effect.to_string(),
        lag,
        f_statistic: d.f,
        p_value: d.p,
        df: (lag, d.d2),
        obs_used: usable,
        on_levels,
        ssr_restricted: d.ssr_r,
        ssr_unrestricted: d.ssr_u,
    };
    Ok((
        wrap(second_to_first, &p.labels[1], &p.labels[0]),
        wrap(first_to_second, &p.labels[0], &p.labels[1]),
    ))
}

struct Direction {
    f: f64,
    p: f64,
    d2: usize,
    ssr_r: f64,
    ssr_u: f64,
}

fn one_direction(effect: &[f64], cause: &[f64], lag: usize) -> Result<Direction> {
    let n = effect.len();
    let rows = n - lag;
    let mut unrestricted = Vec::with_capacity(rows * (2 * lag + 1));
    let mut restricted = Vec::with_capacity(rows * (lag + 1));
    let mut y = Vec::with_capacity(rows);
    for t in lag..n {
        y.push(effect[t]);
        restricted.push(1.0);
        unrestricted.push(1.0);
        for j in 1..=lag {
            restricted.push(effect[t - j]);
            unrestricted.push(effect[t - j]);
        }
        for j in 1..=lag {
            unrestricted.push(cause[t - j]);
        }
    }
    let fit_u = ols_fit(&Matrix::new(rows, 2 * lag + 1, unrestricted)?, &y)?;
    let fit_r = ols_fit(&Matrix::new(rows, lag + 1, restricted)?, &y)?;
    let d2 = fit_u.df_resid;
    let f = exclusion_f(fit_r.ssr, fit_u.ssr, lag, d2);
    Ok(Direction {
        f,
        p: f_sf(f, lag, d2)?,
        d2,
        ssr_r: fit_r.ssr,
        ssr_u: fit_u.ssr,
    })
}

/// F statistic for excluding `restrictions` regressors, `((SSR_r - SSR_u)/q) / (SSR_u/d2)`.
pub fn exclusion_f(ssr_restricted: f64, ssr_unrestricted: f64, restrictions: usize, d2: usize) -> f64 {
    // Nested fits: the restricted SSR cannot be smaller up to rounding.
    let gain = (ssr_restricted - ssr_unrestricted).max(0.0);
    if ssr_unrestricted > 0.0 {
        (gain / restrictions as f64) / (ssr_unrestricted / d2 as f64)
    } else if gain > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Classify from p-values of `(second -> first, first -> second)`.
pub fn verdict_from_pvalues(second_to_first: f64, first_to_second: f64, alpha: f64) -> Hypothesis {
    match (first_to_second < alpha, second_to_first < alpha) {
        (true, true) => Hypothesis::H3,
        (true, false) => Hypothesis::H1,
        (false, true) => Hypothesis::H2,
        (false, false) => Hypothesis::None,
    }
}

/// Verdict for the pair returned by [`granger_test`].
pub fn hypothesis_verdict(results: &(GrangerResult, GrangerResult), alpha: f64) -> Hypothesis {
    verdict_from_pvalues(results.0.p_value, results.1.p_value, alpha)
}
