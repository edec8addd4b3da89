//! Cyclic Jacobi eigensolver for real symmetric matrices. Used for
//! cross-validation and as the inner step of numeric searches only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;

pub const OFF_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending with an a posteriori error bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericSpectrum {
    pub values: Vec<f64>,
    /// Bound on `|values[i] - true eigenvalue i|`: Frobenius norm of the
    /// remaining off-diagonal part plus accumulated rounding.
    pub residual_bound: f64,
}

/// Eigen-decomposition `A = V diag(values) V^T`; column `k` of `vectors`
/// (that is `vectors[i][k]` over `i`) belongs to `values[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub residual_bound: f64,
}

fn off_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

pub fn jacobi_eigen(input: &[Vec<f64>]) -> Result<SymmetricEigen> {
    let n = input.len();
    let mut a: Vec<Vec<f64>> = input.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let frob = input.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off > OFF_TOLERANCE {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
        off = off_norm(&a);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n).map(|r| order.iter().map(|&k| v[r][k]).collect()).collect();
    let rounding = 4.0 * f64::EPSILON * (n as f64) * frob.max(1.0) * (sweeps.max(1) as f64);
    Ok(SymmetricEigen {
        values,
        vectors,
        residual_bound: off + rounding,
    })
}

pub fn eigenvalues_symmetric(m: &ExactMatrix) -> Result<NumericSpectrum> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let e = jacobi_eigen(&m.to_f64_rows())?;
    Ok(NumericSpectrum {
        values: e.values,
        residual_bound: e.residual_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::families::*;
    use crate::exactmat::Vertex3;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn known_spectra() {
        let s = eigenvalues_symmetric(&c_matrix(4).unwrap()).unwrap();
        assert!(close(&s.values, &[1.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0], 1e-10));
        assert!(s.residual_bound < 1e-10);
        let s = eigenvalues_symmetric(&Vertex3::X.matrix()).unwrap();
        assert!(close(&s.values, &[1.0, 1.0, -1.0], 1e-10));
        let p = permutation_matrix(&[1, 2, 0]).unwrap();
        assert_eq!(eigenvalues_symmetric(&p), Err(Error::NotSymmetric));
    }

    #[test]
    fn reconstructs_matrix() {
        let a = vec![vec![2.0, -1.0, 0.5], vec![-1.0, 0.0, 3.0], vec![0.5, 3.0, 1.0]];
        let e = jacobi_eigen(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let r: f64 = (0..3).map(|k| e.vectors[i][k] * e.values[k] * e.vectors[j][k]).sum();
                assert!((r - a[i][j]).abs() < 1e-12);
            }
        }
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }
}
