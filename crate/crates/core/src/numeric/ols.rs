use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::Matrix;

/// Relative threshold on the diagonal of the triangular factor below which a
/// design matrix is treated as singular.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Result of an ordinary least-squares fit.
#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub ssr: f64,
    /// `ssr / df_resid`
    pub sigma2: f64,
    pub df_resid: usize,
    /// Concentrated Gaussian log-likelihood, `-(T/2)(1 + ln 2pi + ln(ssr/T))`.
    pub loglik: f64,
    /// `(X'X)^{-1}`, recovered from the triangular factor.
    pub cov_unscaled: Matrix,
}

impl OlsFit {
    pub fn nobs(&self) -> usize {
        self.residuals.len()
    }

    pub fn std_errors(&self) -> Vec<f64> {
        (0..self.coefficients.len())
            .map(|j| (self.sigma2 * self.cov_unscaled[(j, j)]).sqrt())
            .collect()
    }

    pub fn t_ratio(&self, j: usize) -> f64 {
        self.coefficients[j] / (self.sigma2 * self.cov_unscaled[(j, j)]).sqrt()
    }
}

/// Least squares via Householder QR on a column-equilibrated copy of `x`.
pub fn ols_fit(x: &Matrix, y: &[f64]) -> Result<OlsFit> {
    let t = x.rows();
    let k = x.cols();
    if y.len() != t {
        return Err(Error::DimensionMismatch(format!(
            "design has {t} rows but response has {} values",
            y.len()
        )));
    }
    if k == 0 || t <= k {
        return Err(Error::DimensionMismatch(format!(
            "need more observations than regressors (T={t}, k={k})"
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("response contains non-finite values".into()));
    }

    // Column-major working copy, each column scaled to unit norm.
    let mut scale = vec![0.0; k];
    let mut a: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let col = x.column(j);
            let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            scale[j] = norm;
            col
        })
        .collect();
    if scale.iter().any(|&s| s == 0.0) {
        return Err(Error::RankDeficient);
    }
    for (col, &s) in a.iter_mut().zip(&scale) {
        col.iter_mut().for_each(|v| *v /= s);
    }

    let mut qty = y.to_vec();
    for j in 0..k {
        let norm = a[j][j..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::RankDeficient);
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        // v = x - alpha e1, stored in place below the diagonal.
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|e| e * e).sum();
        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(j + 1) {
                reflect(&v, vnorm2, &mut col[j..]);
            }
            reflect(&v, vnorm2, &mut qty[j..]);
        }
        a[j][j] = alpha;
        a[j][j + 1..].iter_mut().for_each(|e| *e = 0.0);
    }

    let diag_max = (0..k).map(|j| a[j][j].abs()).fold(0.0, f64::max);
    let diag_min = (0..k).map(|j| a[j][j].abs()).fold(f64::INFINITY, f64::min);
    if !(diag_min / diag_max > RANK_TOLERANCE) {
        return Err(Error::RankDeficient);
    }

    // R[i][j] = a[j][i] for i <= j.
    let r = |i: usize, j: usize| a[j][i];
    let mut coef_scaled = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = qty[i];
        for j in i + 1..k {
            acc -= r(i, j) * coef_scaled[j];
        }
        coef_scaled[i] = acc / r(i, i);
    }
    let coefficients: Vec<f64> = coef_scaled.iter().zip(&scale).map(|(b, s)| b / s).collect();

    // R^{-1}, upper triangular.
    let mut rinv = Matrix::zeros(k, k);
    for i in (0..k).rev() {
        rinv[(i, i)] = 1.0 / r(i, i);
        for j in i + 1..k {
            let mut acc = 0.0;
            for l in i + 1..=j {
                acc += r(i, l) * rinv[(l, j)];
            }
            rinv[(i, j)] = -acc / r(i, i);
        }
    }
    let mut cov_unscaled = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = 0.0;
            for l in i.max(j)..k {
                acc += rinv[(i, l)] * rinv[(j, l)];
            }
            cov_unscaled[(i, j)] = acc / (scale[i] * scale[j]);
        }
    }

    let residuals: Vec<f64> = (0..t)
        .map(|i| {
            let fitted: f64 = x.row(i).iter().zip(&coefficients).map(|(a, b)| a * b).sum();
            y[i] - fitted
        })
        .collect();
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let df_resid = t - k;
    let tf = t as f64;
    Ok(OlsFit {
        coefficients,
        residuals,
        ssr,
        sigma2: ssr / df_resid as f64,
        df_resid,
        loglik: -0.5 * tf * (1.0 + (2.0 * PI).ln() + (ssr / tf).ln()),
        cov_unscaled,
    })
}

fn reflect(v: &[f64], vnorm2: f64, target: &mut [f64]) {
    let dot: f64 = v.iter().zip(target.iter()).map(|(a, b)| a * b).sum();
    let f = 2.0 * dot / vnorm2;
    for (t, vi) in target.iter_mut().zip(v) {
        *t -= f * vi;
    }
}
