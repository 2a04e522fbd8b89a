//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the factorizations or special functions of the
//! crate under test.

#![allow(dead_code)]

use econ_core::synth::Rng;
use econ_core::Matrix;

/// Gaussian elimination with partial pivoting on a dense square system.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// `(X'X)^{-1} X'y` by explicit cross products.
pub fn normal_equations(x: &Matrix, y: &[f64]) -> Vec<f64> {
    let k = x.cols();
    let mut xtx = vec![vec![0.0; k]; k];
    let mut xty = vec![0.0; k];
    for r in 0..x.rows() {
        let row = x.row(r);
        for i in 0..k {
            xty[i] += row[i] * y[r];
            for j in 0..k {
                xtx[i][j] += row[i] * row[j];
            }
        }
    }
    gauss_solve(xtx, xty)
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .collect::<Vec<_>>()
        .iter()
        .sum()
}

/// Roots of `det(A - lambda B) = 0` for 2x2 matrices, descending.
pub fn generalized_eig_2x2(a: &Matrix, b: &Matrix) -> (f64, f64) {
    let (a11, a12, a21, a22) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let (b11, b12, b21, b22) = (b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]);
    // det(A - l B) = qa l^2 + qb l + qc
    let qa = b11 * b22 - b12 * b21;
    let qb = -(a11 * b22 + a22 * b11 - a12 * b21 - a21 * b12);
    let qc = a11 * a22 - a12 * a21;
    let disc = (qb * qb - 4.0 * qa * qc).max(0.0).sqrt();
    let r1 = (-qb + disc) / (2.0 * qa);
    let r2 = (-qb - disc) / (2.0 * qa);
    (r1.max(r2), r1.min(r2))
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

pub fn normals(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.normal()).collect()
}

/// `rows x cols` matrix of standard normals filled row by row.
pub fn normal_matrix(rng: &mut Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::new(rows, cols, normals(rng, rows * cols)).unwrap()
}

/// `G G' + eps I` for a random square `G`.
pub fn random_pd(rng: &mut Rng, n: usize, eps: f64) -> Matrix {
    let g = normal_matrix(rng, n, n);
    let mut m = g.matmul(&g.transpose()).unwrap();
    for i in 0..n {
        m[(i, i)] += eps;
    }
    m
}

pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn ols_t_ratio_oracle(x: &Matrix, y: &[f64], j: usize) -> f64 {
    let beta = normal_equations(x, y);
    let k = x.cols();
    let t = x.rows();
    let ssr: f64 = (0..t)
        .map(|r| {
            let fit: f64 = x.row(r).iter().zip(&beta).map(|(a, b)| a * b).sum();
            (y[r] - fit).powi(2)
        })
        .sum();
    let s2 = ssr / (t - k) as f64;
    // Column j of (X'X)^{-1}.
    let mut xtx = vec![vec![0.0; k]; k];
    for r in 0..t {
        let row = x.row(r);
        for a in 0..k {
            for b in 0..k {
                xtx[a][b] += row[a] * row[b];
            }
        }
    }
    let mut e = vec![0.0; k];
    e[j] = 1.0;
    let inv_col = gauss_solve(xtx, e);
    beta[j] / (s2 * inv_col[j]).sqrt()
}

pub fn lag1_autocorrelation(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let num: f64 = xs.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum();
    let den: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    num / den
}
