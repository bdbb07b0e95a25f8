//! Cyclic Jacobi for small dense symmetric matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::precision::Real;

/// Eigenvalues (unsorted) and column eigenvectors `v[row][col]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
    pub sweeps: usize,
}

/// Diagonalizes symmetric `a` (row-major `n×n`).
///
/// An off-diagonal entry is annihilated unless
/// `|a_pq| ≤ ε·sqrt(|a_pp a_qq|)`, which keeps small eigenvalues of graded
/// matrices relatively accurate.
pub fn jacobi<T: Real>(mut a: Vec<Vec<T>>, max_sweeps: usize) -> SymmetricEigen<T> {
    let n = a.len();
    let mut v = vec![vec![T::ZERO; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::ONE;
    }
    let eps = T::from_f64(T::EPSILON);
    let tiny = T::from_f64(f64::MIN_POSITIVE);
    let half = T::from_f64(0.5);
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= tiny {
                    continue;
                }
                let scale = (a[p][p] * a[q][q]).abs().sqrt();
                if apq.abs() <= eps * scale {
                    continue;
                }
                rotated = true;
                let theta = (a[q][q] - a[p][p]) * half / apq;
                let sign = if theta < T::ZERO { -T::ONE } else { T::ONE };
                let t = sign / (theta.abs() + (theta * theta + T::ONE).sqrt());
                let c = T::ONE / (t * t + T::ONE).sqrt();
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
        sweeps += 1;
        if !rotated {
            break;
        }
    }
    SymmetricEigen { values: (0..n).map(|i| a[i][i]).collect(), vectors: v, sweeps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::DoubleDouble;

    #[test]
    fn two_by_two() {
        let e = jacobi(vec![vec![2.0, 1.0], vec![1.0, 2.0]], 50);
        let mut vals = e.values.clone();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn eigenpairs_satisfy_definition() {
        let a = vec![vec![4.0, -2.0, 0.5], vec![-2.0, 1.0, 3.0], vec![0.5, 3.0, -1.0]];
        let e = jacobi(a.clone(), 50);
        for j in 0..3 {
            for i in 0..3 {
                let av: f64 = (0..3).map(|k| a[i][k] * e.vectors[k][j]).sum();
                assert!((av - e.values[j] * e.vectors[i][j]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn double_double_path() {
        let a: Vec<Vec<DoubleDouble>> = [[2.0, 1.0], [1.0, 2.0]]
            .iter()
            .map(|r| r.iter().map(|&x| DoubleDouble::from_f64(x)).collect())
            .collect();
        let e = jacobi(a, 50);
        let lo = e.values.iter().map(|v| v.to_f64()).fold(f64::INFINITY, f64::min);
        assert!((lo - 1.0).abs() < 1e-30);
    }
}
