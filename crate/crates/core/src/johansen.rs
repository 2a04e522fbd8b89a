//! Johansen maximum-likelihood cointegration rank test.
//!
//! Trace statistic for `H(r)`: `-T * sum_{j>r} ln(1 - lambda_j)`.
//! Max-eigenvalue statistic for `H(r)` against `H(r+1)`: `-T * ln(1 - lambda_{r+1})`.
//!
//! The trace formula is sometimes printed as `T * sum (1 - lambda_j)`; that
//! form drops the logarithm and the sign and does not reproduce published
//! trace values from their eigenvalues. The log-likelihood-ratio form is used.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{dist::gamma_sf, ols_fit, solve_generalized_eig, spd_inverse, Matrix};
use crate::series::Panel;
use crate::unit_root::DeterministicCase;

pub const NO_COINTEGRATION: &str = "No Co Integration";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticKind {
    Trace,
    MaxEigen,
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatisticKind::Trace => "trace",
            StatisticKind::MaxEigen => "max-eigen",
        })
    }
}

// 5% asymptotic quantiles indexed by m - r = 1..=6 (MacKinnon, Haug and
// Michelis 1999).
const TRACE_5PCT_CONSTANT: [f64; 6] = [3.841466, 15.49471, 29.79707, 47.85613, 69.81889, 95.75366];
const MAXEIG_5PCT_CONSTANT: [f64; 6] = [3.841466, 14.26460, 21.13162, 27.58434, 33.87687, 40.07757];
const TRACE_5PCT_NONE: [f64; 6] = [4.129906, 12.32090, 24.27596, 40.17493, 60.06141, 83.93712];
const MAXEIG_5PCT_NONE: [f64; 6] = [4.129906, 11.22480, 17.79730, 24.15921, 30.43961, 36.63019];

// Asymptotic (mean, variance) of each statistic, indexed by m - r = 1..=6,
// estimated by simulating the limiting experiment (T = 1000, 20000
// replications). With an unrestricted constant and m - r = 1 the limit is
// exactly chi-square(1).
const TRACE_MOMENTS_CONSTANT: [(f64, f64); 6] =
    [(1.0, 2.0), (8.337, 14.64), (19.63, 32.72), (34.71, 54.39), (53.95, 83.84), (76.95, 120.69)];
const MAXEIG_MOMENTS_CONSTANT: [(f64, f64); 6] =
    [(1.0, 2.0), (7.551, 12.76), (13.17, 19.65), (18.52, 24.40), (24.09, 30.15), (29.50, 35.12)];
const TRACE_MOMENTS_NONE: [(f64, f64); 6] =
    [(1.127, 2.122), (6.154, 10.74), (15.12, 25.31), (28.05, 46.06), (45.15, 72.93), (66.34, 106.79)];
const MAXEIG_MOMENTS_NONE: [(f64, f64); 6] =
    [(1.127, 2.122), (5.485, 9.207), (10.49, 15.85), (15.63, 21.21), (21.11, 27.16), (26.55, 32.05)];

fn table_index(case: DeterministicCase, m_minus_r: usize) -> Result<usize> {
    if case == DeterministicCase::ConstantTrend {
        return Err(Error::UnsupportedCase(
            "trend terms are not supported in the Johansen test".into(),
        ));
    }
    if !(1..=6).contains(&m_minus_r) {
        return Err(Error::UnsupportedCase(format!(
            "critical values tabulated for m - r in 1..=6, got {m_minus_r}"
        )));
    }
    Ok(m_minus_r - 1)
}

/// 5% critical value for the given case, number of common trends and statistic.
pub fn johansen_critical(case: DeterministicCase, m_minus_r: usize, kind: StatisticKind) -> Result<f64> {
    let i = table_index(case, m_minus_r)?;
    let table = match (case, kind) {
        (DeterministicCase::None, StatisticKind::Trace) => &TRACE_5PCT_NONE,
        (DeterministicCase::None, StatisticKind::MaxEigen) => &MAXEIG_5PCT_NONE,
        (_, StatisticKind::Trace) => &TRACE_5PCT_CONSTANT,
        (_, StatisticKind::MaxEigen) => &MAXEIG_5PCT_CONSTANT,
    };
    Ok(table[i])
}

/// Approximate asymptotic p-value from a gamma distribution matched to the
/// mean and variance of the limiting distribution.
pub fn johansen_pvalue(case: DeterministicCase, m_minus_r: usize, kind: StatisticKind, statistic: f64) -> Result<f64> {
    let i = table_index(case, m_minus_r)?;
    let (mean, var) = match (case, kind) {
        (DeterministicCase::None, StatisticKind::Trace) => TRACE_MOMENTS_NONE[i],
        (DeterministicCase::None, StatisticKind::MaxEigen) => MAXEIG_MOMENTS_NONE[i],
        (_, StatisticKind::Trace) => TRACE_MOMENTS_CONSTANT[i],
        (_, StatisticKind::MaxEigen) => MAXEIG_MOMENTS_CONSTANT[i],
    };
    if statistic <= 0.0 {
        return Ok(1.0);
    }
    Ok(gamma_sf(statistic, mean * mean / var, var / mean).clamp(0.0, 1.0))
}

/// `trace[r] = -T sum_{j >= r} ln(1 - lambda_j)` for `r = 0..m`.
pub fn trace_statistics(eigenvalues: &[f64], effective_obs: usize) -> Vec<f64> {
    let terms = max_eigen_statistics(eigenvalues, effective_obs);
    (0..terms.len()).map(|r| terms[r..].iter().sum()).collect()
}

/// `max_eigen[r] = -T ln(1 - lambda_{r+1})` for `r = 0..m`.
pub fn max_eigen_statistics(eigenvalues: &[f64], effective_obs: usize) -> Vec<f64> {
    let t = effective_obs as f64;
    eigenvalues.iter().map(|l| -t * (1.0 - l).ln()).collect()
}

/// Sequential testing from `r = 0`: the first hypothesis not rejected is the
/// rank; if every hypothesis is rejected the rank is full.
pub fn sequential_rank(statistics: &[f64], critical: &[f64]) -> usize {
    statistics
        .iter()
        .zip(critical)
        .position(|(s, c)| s <= c)
        .unwrap_or(statistics.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDecision {
    pub rank: usize,
    pub remark: String,
}

pub fn remark_for_rank(rank: usize) -> String {
    if rank == 0 {
        NO_COINTEGRATION.to_string()
    } else {
        format!("{rank} Co Integrating Eqn(s)")
    }
}

#[derive(Debug, Clone)]
pub struct JohansenResult {
    /// Descending, each in `[0, 1)`.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the cointegrating vector paired with `eigenvalues[j]`.
    pub eigenvectors: Matrix,
    pub trace_stats: Vec<f64>,
    pub max_eigen_stats: Vec<f64>,
    pub trace_critical_5pct: Vec<f64>,
    pub max_eigen_critical_5pct: Vec<f64>,
    pub trace_p_values: Vec<f64>,
    pub max_eigen_p_values: Vec<f64>,
    pub effective_obs: usize,
    pub lagged_diffs: usize,
    pub deterministic_case: DeterministicCase,
    /// Rank chosen by the trace test.
    pub decided_rank: usize,
    pub max_eigen_rank: usize,
}

impl JohansenResult {
    /// Cointegrating vector `j` scaled so its first element is one.
    pub fn normalized_vector(&self, j: usize) -> Vec<f64> {
        let v = self.eigenvectors.column(j);
        let lead = v[0];
        v.iter().map(|x| x / lead).collect()
    }
}

/// Trace-test rank with its remark.
pub fn rank_decision(result: &JohansenResult) -> RankDecision {
    let rank = sequential_rank(&result.trace_stats, &result.trace_critical_5pct);
    RankDecision {
        rank,
        remark: remark_for_rank(rank),
    }
}

/// Residuals of each column of `y` regressed on `z`; `y` unchanged when `z` is empty.
fn partial_out(y: &Matrix, z: Option<&Matrix>) -> Result<Matrix> {
    let Some(z) = z else {
        return Ok(y.clone());
    };
    let mut out = Matrix::zeros(y.rows(), y.cols());
    for j in 0..y.cols() {
        let fit = ols_fit(z, &y.column(j))?;
        for (i, e) in fit.residuals.iter().enumerate() {
            out[(i, j)] = *e;
        }
    }
    Ok(out)
}

pub fn johansen_test(p: &Panel, lagged_diffs: usize, case: DeterministicCase) -> Result<JohansenResult> {
    let m = p.width();
    let n = p.len();
    let k = lagged_diffs;
    if case == DeterministicCase::ConstantTrend {
        return Err(Error::UnsupportedCase(
            "trend terms are not supported in the Johansen test".into(),
        ));
    }
    let needed = m * (k + 2) + 10;
    if n < needed {
        return Err(Error::too_short(needed, n));
    }
    let data = &p.data;
    let t_eff = n - 1 - k;
    let dx = |t: usize, j: usize| data[(t, j)] - data[(t - 1, j)];

    let mut z0 = Matrix::zeros(t_eff, m);
    let mut z1 = Matrix::zeros(t_eff, m);
    let n_short = m * k + usize::from(case == DeterministicCase::Constant);
    let mut z2 = Matrix::zeros(t_eff, n_short);
    for (row, t) in (k + 1..n).enumerate() {
        for j in 0..m {
            z0[(row, j)] = dx(t, j);
            z1[(row, j)] = data[(t - 1, j)];
        }
        let mut c = 0;
        for lag in 1..=k {
            for j in 0..m {
                z2[(row, c)] = dx(t - lag, j);
                c += 1;
            }
        }
        if case == DeterministicCase::Constant {
            z2[(row, c)] = 1.0;
        }
    }
    let z2 = (n_short > 0).then_some(&z2);
    let r0 = partial_out(&z0, z2)?;
    let r1 = partial_out(&z1, z2)?;

    let tf = t_eff as f64;
    let s00 = r0.t_matmul(&r0)?.scale(1.0 / tf);
    let s11 = r1.t_matmul(&r1)?.scale(1.0 / tf);
    let s01 = r0.t_matmul(&r1)?.scale(1.0 / tf);
    let s00_inv = spd_inverse(&s00)?;
    let mut a = s01.transpose().matmul(&s00_inv)?.matmul(&s01)?;
    for i in 0..m {
        for j in 0..i {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let eig = solve_generalized_eig(&a, &s11)?;
    let eigenvalues: Vec<f64> = eig.values.iter().map(|l| l.max(0.0)).collect();
    if eigenvalues.iter().any(|&l| l >= 1.0) {
        return Err(Error::NotPositiveDefinite);
    }

    let trace_stats = trace_statistics(&eigenvalues, t_eff);
    let max_eigen_stats = max_eigen_statistics(&eigenvalues, t_eff);
    let mut trace_critical_5pct = Vec::with_capacity(m);
    let mut max_eigen_critical_5pct = Vec::with_capacity(m);
    let mut trace_p_values = Vec::with_capacity(m);
    let mut max_eigen_p_values = Vec::with_capacity(m);
    for r in 0..m {
        let trends = m - r;
        trace_critical_5pct.push(johansen_critical(case, trends, StatisticKind::Trace)?);
        max_eigen_critical_5pct.push(johansen_critical(case, trends, StatisticKind::MaxEigen)?);
        trace_p_values.push(johansen_pvalue(case, trends, StatisticKind::Trace, trace_stats[r])?);
        max_eigen_p_values.push(johansen_pvalue(case, trends, StatisticKind::MaxEigen, max_eigen_stats[r])?);
    }
    let decided_rank = sequential_rank(&trace_stats, &trace_critical_5pct);
    let max_eigen_rank = sequential_rank(&max_eigen_stats, &max_eigen_critical_5pct);
    Ok(JohansenResult {
        eigenvalues,
        eigenvectors: eig.vectors,
        trace_stats,
        max_eigen_stats,
        trace_critical_5pct,
        max_eigen_critical_5pct,
        trace_p_values,
        max_eigen_p_values,
        effective_obs: t_eff,
        lagged_diffs,
        deterministic_case: case,
        decided_rank,
        max_eigen_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_arithmetic() {
        let eig = [0.169895, 0.014806];
        let tr = trace_statistics(&eig, 56);
        let mx = max_eigen_statistics(&eig, 56);
        assert!((tr[0] - 11.26272).abs() < 1e-4);
        assert!((mx[0] - 10.42736).abs() < 1e-4);
        assert!((tr[1] - -56.0 * (1.0f64 - 0.014806).ln()).abs() < 1e-12);
        // The printed eigenvalue is rounded to six places, which moves the
        // last statistic by about 2e-5.
        assert!((tr[1] - 0.835353).abs() < 2e-5);
        assert_eq!(tr[1], mx[1]);
        assert!((tr[0] - (mx[0] + tr[1])).abs() < 1e-10);
    }

    #[test]
    fn critical_values() {
        use DeterministicCase::Constant;
        assert_eq!(johansen_critical(Constant, 2, StatisticKind::Trace).unwrap(), 15.49471);
        assert_eq!(johansen_critical(Constant, 2, StatisticKind::MaxEigen).unwrap(), 14.26460);
        assert_eq!(johansen_critical(Constant, 1, StatisticKind::Trace).unwrap(), 3.841466);
        assert!(johansen_critical(Constant, 0, StatisticKind::Trace).is_err());
        assert!(johansen_critical(Constant, 7, StatisticKind::Trace).is_err());
        assert!(johansen_critical(DeterministicCase::ConstantTrend, 1, StatisticKind::Trace).is_err());
    }

    #[test]
    fn sequential_rank_boundaries() {
        assert_eq!(sequential_rank(&[11.26272, 0.835353], &[15.49471, 3.841466]), 0);
        assert_eq!(sequential_rank(&[30.0, 0.5], &[15.49471, 3.841466]), 1);
        assert_eq!(sequential_rank(&[30.0, 5.0], &[15.49471, 3.841466]), 2);
        assert_eq!(remark_for_rank(0), NO_COINTEGRATION);
        assert_ne!(remark_for_rank(1), NO_COINTEGRATION);
    }

    #[test]
    fn pvalues_near_published() {
        use DeterministicCase::Constant;
        let p = johansen_pvalue(Constant, 2, StatisticKind::Trace, 11.26272).unwrap();
        assert!((p - 0.1958).abs() < 0.02, "{p}");
        let p = johansen_pvalue(Constant, 2, StatisticKind::MaxEigen, 10.42736).unwrap();
        assert!((p - 0.1854).abs() < 0.02, "{p}");
        let p = johansen_pvalue(Constant, 1, StatisticKind::Trace, 0.835353).unwrap();
        assert!((p - 0.3607).abs() < 1e-3, "{p}");
    }

    #[test]
    fn gamma_approximation_hits_tabulated_quantiles() {
        // The matched gamma should put roughly 5% mass beyond each tabulated
        // critical value.
        for case in [DeterministicCase::None, DeterministicCase::Constant] {
            for n in 1..=6 {
                for kind in [StatisticKind::Trace, StatisticKind::MaxEigen] {
                    let c = johansen_critical(case, n, kind).unwrap();
                    let p = johansen_pvalue(case, n, kind, c).unwrap();
                    assert!((p - 0.05).abs() < 0.01, "{case:?} n={n} {kind}: {p}");
                }
            }
        }
    }
}
