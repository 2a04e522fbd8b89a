//! Augmented Dickey-Fuller and Phillips-Perron unit-root tests.

mod mackinnon;

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{ols_fit, Matrix, OlsFit};
use crate::series::{diff_values, Series};

pub use mackinnon::{mackinnon_asymptotic, mackinnon_critical, mackinnon_pvalue};

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DeterministicCase {
    None,
    #[default]
    Constant,
    ConstantTrend,
}

impl DeterministicCase {
    fn regressors(self) -> usize {
        match self {
            DeterministicCase::None => 0,
            DeterministicCase::Constant => 1,
            DeterministicCase::ConstantTrend => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeterministicCase::None => "none",
            DeterministicCase::Constant => "constant",
            DeterministicCase::ConstantTrend => "constant_trend",
        }
    }
}

impl fmt::Display for DeterministicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DeterministicCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "none" | "nc" => Ok(DeterministicCase::None),
            "constant" | "c" | "intercept" => Ok(DeterministicCase::Constant),
            "constant_trend" | "ct" | "trend" => Ok(DeterministicCase::ConstantTrend),
            other => Err(Error::UnsupportedCase(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignificanceLevel {
    One,
    Five,
    Ten,
}

impl SignificanceLevel {
    pub const ALL: [SignificanceLevel; 3] = [Self::One, Self::Five, Self::Ten];

    fn index(self) -> usize {
        match self {
            Self::One => 0,
            Self::Five => 1,
            Self::Ten => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::One => "1%",
            Self::Five => "5%",
            Self::Ten => "10%",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValues {
    pub one: f64,
    pub five: f64,
    pub ten: f64,
}

impl CriticalValues {
    pub fn for_sample(case: DeterministicCase, effective_obs: usize) -> Result<Self> {
        Ok(Self {
            one: mackinnon_critical(case, SignificanceLevel::One, effective_obs)?,
            five: mackinnon_critical(case, SignificanceLevel::Five, effective_obs)?,
            ten: mackinnon_critical(case, SignificanceLevel::Ten, effective_obs)?,
        })
    }

    pub fn get(&self, level: SignificanceLevel) -> f64 {
        match level {
            SignificanceLevel::One => self.one,
            SignificanceLevel::Five => self.five,
            SignificanceLevel::Ten => self.ten,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestKind {
    Adf,
    Pp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Stationary,
    UnitRoot,
}

/// Number of lagged differences in the ADF regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagSpec {
    Fixed(usize),
    /// Schwarz criterion over `0..=max`; `None` uses `floor(12 (T/100)^{1/4})`.
    Auto { max: Option<usize> },
}

impl Default for LagSpec {
    fn default() -> Self {
        LagSpec::Auto { max: None }
    }
}

/// Bartlett-kernel truncation lag for the Phillips-Perron correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bandwidth {
    Fixed(usize),
    /// `floor(4 (T/100)^{2/9})` with `T` the regression sample size.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitRootResult {
    pub test_kind: TestKind,
    pub statistic: f64,
    pub p_value: f64,
    pub lags_or_bandwidth: usize,
    pub effective_obs: usize,
    pub critical_values: CriticalValues,
    pub deterministic_case: DeterministicCase,
    pub decision_5pct: Decision,
}

impl UnitRootResult {
    fn new(
        test_kind: TestKind,
        statistic: f64,
        lags_or_bandwidth: usize,
        effective_obs: usize,
        case: DeterministicCase,
    ) -> Result<Self> {
        let critical_values = CriticalValues::for_sample(case, effective_obs)?;
        Ok(Self {
            test_kind,
            statistic,
            p_value: mackinnon_pvalue(statistic, case),
            lags_or_bandwidth,
            effective_obs,
            critical_values,
            deterministic_case: case,
            decision_5pct: decide(statistic, critical_values.five),
        })
    }

    pub fn rejects_unit_root(&self) -> bool {
        self.decision_5pct == Decision::Stationary
    }
}

pub fn decide(statistic: f64, critical_5pct: f64) -> Decision {
    if statistic < critical_5pct {
        Decision::Stationary
    } else {
        Decision::UnitRoot
    }
}

/// Default maximum ADF lag, `floor(12 (T/100)^{1/4})`.
pub fn schwert_max_lag(n: usize) -> usize {
    (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

/// Default Newey-West truncation lag, `floor(4 (T/100)^{2/9})`.
pub fn auto_bandwidth(n: usize) -> usize {
    (4.0 * (n as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

/// Dickey-Fuller regression of `dx_t` on `x_{t-1}`, deterministic terms and
/// `lags` lagged differences, using rows from `first` (an index into the
/// differenced series, at least `lags`). The lagged level is column 0.
fn df_regression(xs: &[f64], case: DeterministicCase, lags: usize, first: usize) -> Result<OlsFit> {
    let dx = diff_values(xs, 1)?;
    debug_assert!(first >= lags);
    let rows = dx.len().saturating_sub(first);
    let k = 1 + case.regressors() + lags;
    if rows <= k {
        return Err(Error::too_short(first + k + 2, xs.len()));
    }
    let mut data = Vec::with_capacity(rows * k);
    let mut y = Vec::with_capacity(rows);
    for t in first..dx.len() {
        y.push(dx[t]);
        data.push(xs[t]);
        if case != DeterministicCase::None {
            data.push(1.0);
        }
        if case == DeterministicCase::ConstantTrend {
            data.push((t + 1) as f64);
        }
        for j in 1..=lags {
            data.push(dx[t - j]);
        }
    }
    ols_fit(&Matrix::new(rows, k, data)?, &y)
}

fn schwarz(fit: &OlsFit) -> f64 {
    let t = fit.nobs() as f64;
    let k = fit.coefficients.len() as f64;
    (fit.ssr / t).ln() + k * t.ln() / t
}

/// Augmented Dickey-Fuller t-test on the lagged level.
pub fn adf_test(s: &Series, case: DeterministicCase, lags: LagSpec) -> Result<UnitRootResult> {
    adf_values(&s.values, case, lags)
}

pub fn adf_values(xs: &[f64], case: DeterministicCase, lags: LagSpec) -> Result<UnitRootResult> {
    let n = xs.len();
    let chosen = match lags {
        LagSpec::Fixed(k) => {
            if n < k + 10 {
                return Err(Error::too_short(k + 10, n));
            }
            k
        }
        LagSpec::Auto { max } => {
            if n < 10 {
                return Err(Error::too_short(10, n));
            }
            let max = max.unwrap_or_else(|| schwert_max_lag(n)).min(n - 10);
            select_adf_lag(xs, case, max)?
        }
    };
    let fit = df_regression(xs, case, chosen, chosen)?;
    UnitRootResult::new(TestKind::Adf, fit.t_ratio(0), chosen, fit.nobs(), case)
}

/// Schwarz-optimal lag over `0..=max`, every candidate fitted on the sample
/// left after dropping `max` initial differences. Ties go to the smaller lag.
fn select_adf_lag(xs: &[f64], case: DeterministicCase, max: usize) -> Result<usize> {
    let mut best = (0, f64::INFINITY);
    for k in 0..=max {
        let crit = schwarz(&df_regression(xs, case, k, max)?);
        if crit < best.1 {
            best = (k, crit);
        }
    }
    Ok(best.0)
}

/// Bartlett weights `1 - j/(q+1)` for `j = 0..=q`.
pub fn bartlett_weights(bandwidth: usize) -> Vec<f64> {
    (0..=bandwidth)
        .map(|j| 1.0 - j as f64 / (bandwidth as f64 + 1.0))
        .collect()
}

/// Newey-West long-run variance of a residual series (autocovariances divided by `T`).
pub fn newey_west_lrv(resid: &[f64], bandwidth: usize) -> f64 {
    let t = resid.len() as f64;
    let gamma = |j: usize| -> f64 {
        resid[j..]
            .iter()
            .zip(resid)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / t
    };
    let weights = bartlett_weights(bandwidth);
    let mut lrv = gamma(0);
    for (j, w) in weights.iter().enumerate().skip(1) {
        if j >= resid.len() {
            break;
        }
        lrv += 2.0 * w * gamma(j);
    }
    lrv
}

/// Phillips-Perron `Z_tau` statistic.
pub fn pp_test(s: &Series, case: DeterministicCase, bandwidth: Bandwidth) -> Result<UnitRootResult> {
    pp_values(&s.values, case, bandwidth)
}

pub fn pp_values(xs: &[f64], case: DeterministicCase, bandwidth: Bandwidth) -> Result<UnitRootResult> {
    let n = xs.len();
    if n < 15 {
        return Err(Error::too_short(15, n));
    }
    let fit = df_regression(xs, case, 0, 0)?;
    let t = fit.nobs();
    let q = match bandwidth {
        Bandwidth::Fixed(q) => q,
        Bandwidth::Auto => auto_bandwidth(t),
    };
    let tf = t as f64;
    let gamma0 = fit.ssr / tf;
    let f0 = newey_west_lrv(&fit.residuals, q);
    if !(f0 > 0.0) {
        return Err(Error::Domain("non-positive long-run variance".into()));
    }
    let se = fit.std_errors()[0];
    let s = fit.sigma2.sqrt();
    let t_ratio = fit.coefficients[0] / se;
    let z = t_ratio * (gamma0 / f0).sqrt() - tf * (f0 - gamma0) * se / (2.0 * f0.sqrt() * s);
    UnitRootResult::new(TestKind::Pp, z, q, t, case)
}
