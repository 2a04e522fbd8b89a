//! Summary statistics, Jarque-Bera normality and Pearson correlation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{chi2_sf, mean, Matrix};
use crate::series::{Panel, Series};

/// Skewness and kurtosis use population moments (divisor `n`); the reported
/// standard deviation uses the sample divisor `n - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub median: f64,
    pub maximum: f64,
    pub minimum: f64,
    pub std_dev: f64,
    pub skewness: f64,
    /// Non-excess kurtosis (3 for a normal distribution).
    pub kurtosis: f64,
    pub jarque_bera: f64,
    pub jb_probability: f64,
    pub sum: f64,
    /// Sum of squared deviations from the mean.
    pub sum_sq_dev: f64,
    pub observations: usize,
}

/// Jarque-Bera statistic `(n/6)(S^2 + (K-3)^2/4)` and its chi-square(2) tail probability.
pub fn jarque_bera(skewness: f64, kurtosis: f64, n: usize) -> Result<(f64, f64)> {
    let jb = n as f64 / 6.0 * (skewness * skewness + (kurtosis - 3.0).powi(2) / 4.0);
    Ok((jb, chi2_sf(jb, 2)?))
}

pub fn summarize(s: &Series) -> Result<SummaryStats> {
    summarize_values(&s.values)
}

pub fn summarize_values(xs: &[f64]) -> Result<SummaryStats> {
    let n = xs.len();
    if n < 4 {
        return Err(Error::too_short(4, n));
    }
    let nf = n as f64;
    let sum: f64 = xs.iter().sum();
    let mu = sum / nf;
    let (m2, m3, m4) = xs.iter().fold((0.0, 0.0, 0.0), |(a, b, c), x| {
        let d = x - mu;
        let d2 = d * d;
        (a + d2, b + d2 * d, c + d2 * d2)
    });
    let sum_sq_dev = m2;
    let (m2, m3, m4) = (m2 / nf, m3 / nf, m4 / nf);
    let scale = xs.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    if m2.sqrt() <= 1e-13 * scale {
        return Err(Error::ConstantSeries);
    }
    let skewness = m3 / m2.powf(1.5);
    let kurtosis = m4 / (m2 * m2);
    let (jarque_bera, jb_probability) = jarque_bera(skewness, kurtosis, n)?;

    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };

    Ok(SummaryStats {
        mean: mu,
        median,
        maximum: sorted[n - 1],
        minimum: sorted[0],
        std_dev: (sum_sq_dev / (nf - 1.0)).sqrt(),
        skewness,
        kurtosis,
        jarque_bera,
        jb_probability,
        sum,
        sum_sq_dev,
        observations: n,
    })
}

/// Pearson correlation matrix of the panel columns.
pub fn correlation(p: &Panel) -> Result<Matrix> {
    let t = p.len();
    if t < 3 {
        return Err(Error::too_short(3, t));
    }
    let m = p.width();
    let centered: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let col = p.column(j);
            let mu = mean(&col);
            col.iter().map(|x| x - mu).collect()
        })
        .collect();
    let norms: Vec<f64> = centered
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    for (j, &nrm) in norms.iter().enumerate() {
        if nrm == 0.0 {
            return Err(Error::ConstantColumn(j));
        }
    }
    let mut r = Matrix::identity(m);
    for i in 0..m {
        for j in 0..i {
            let dot: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
            let v = (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0);
            r[(i, j)] = v;
            r[(j, i)] = v;
        }
    }
    Ok(r)
}
