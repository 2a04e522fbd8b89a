use crate::error::{Error, Result};
use crate::numeric::Matrix;

const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Eigen-decomposition with eigenvalues sorted in descending order.
/// Column `j` of `vectors` pairs with `values[j]`.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

fn check_symmetric(m: &Matrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{what} must be square")));
    }
    let tol = SYMMETRY_TOLERANCE * m.max_abs().max(1.0);
    if m.asymmetry() > tol {
        return Err(Error::Domain(format!("{what} is not symmetric")));
    }
    Ok(())
}

/// Lower-triangular `L` with `L L' = m`.
pub fn cholesky(m: &Matrix) -> Result<Matrix> {
    check_symmetric(m, "matrix")?;
    let n = m.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// `ln det m` for symmetric positive definite `m`, via the Cholesky factor.
pub fn log_det(m: &Matrix) -> Result<f64> {
    let l = cholesky(m)?;
    Ok(2.0 * (0..l.rows()).map(|i| l[(i, i)].ln()).sum::<f64>())
}

/// Inverse of a lower-triangular matrix.
fn lower_inverse(l: &Matrix) -> Matrix {
    let n = l.rows();
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        inv[(j, j)] = 1.0 / l[(j, j)];
        for i in j + 1..n {
            let mut s = 0.0;
            for k in j..i {
                s += l[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -s / l[(i, i)];
        }
    }
    inv
}

/// Inverse of a symmetric positive definite matrix.
pub fn spd_inverse(m: &Matrix) -> Result<Matrix> {
    let linv = lower_inverse(&cholesky(m)?);
    linv.t_matmul(&linv)
}

/// Cyclic Jacobi rotations for a symmetric matrix.
pub fn symmetric_eigen(m: &Matrix) -> Result<EigenPairs> {
    check_symmetric(m, "matrix")?;
    let n = m.rows();
    let mut a = m.clone();
    // Exact symmetrisation so rotations stay consistent.
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..i {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    Ok(EigenPairs { values, vectors })
}

/// Solve `A v = lambda B v` for symmetric `A` and symmetric positive definite `B`.
///
/// With `B = L L'` the problem becomes the ordinary symmetric problem
/// `L^{-1} A L^{-T} w = lambda w`, and `v = L^{-T} w`. Returned vectors are
/// therefore `B`-orthonormal: `V' B V = I`.
pub fn solve_generalized_eig(a: &Matrix, b: &Matrix) -> Result<EigenPairs> {
    check_symmetric(a, "A")?;
    if a.rows() != b.rows() || !b.is_square() {
        return Err(Error::DimensionMismatch("A and B must have the same shape".into()));
    }
    let l = cholesky(b)?;
    let linv = lower_inverse(&l);
    let c = linv.matmul(a)?.matmul(&linv.transpose())?;
    let std = symmetric_eigen(&c)?;
    let vectors = linv.t_matmul(&std.vectors)?;
    Ok(EigenPairs {
        values: std.values,
        vectors,
    })
}
