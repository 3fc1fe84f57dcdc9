//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

/// Eigen-decomposition of a symmetric matrix. Eigenvalues ascending;
/// `vectors[k]` is the unit eigenvector for `values[k]`, sign fixed so the
/// first entry with magnitude above 1e-12 is positive.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Jacobi rotations until the off-diagonal Frobenius norm falls below 1e-12
/// of the matrix scale. Input is row-major n*n and must be symmetric.
pub fn symmetric_eigen(n: usize, matrix: &[f64]) -> SymmetricEigen {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let scale = matrix.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let tol = 1e-14 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < tol * 1e-3 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());

    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|r| v[r * n + k]).collect();
            if let Some(first) = col.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    for x in col.iter_mut() {
                        *x = -*x;
                    }
                }
            }
            col
        })
        .collect();

    SymmetricEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(n: usize, m: &[f64], lambda: f64, vec: &[f64]) -> f64 {
        (0..n)
            .map(|i| {
                let mv: f64 = (0..n).map(|j| m[i * n + j] * vec[j]).sum();
                (mv - lambda * vec[i]).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn diagonal_matrix() {
        let m = vec![3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0];
        let e = symmetric_eigen(3, &m);
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!((e.values[1] - 2.0).abs() < 1e-12);
        assert!((e.values[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn path_laplacian_known_spectrum() {
        // P3 Laplacian eigenvalues are {0, 1, 3}
        let m = vec![1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0];
        let e = symmetric_eigen(3, &m);
        assert!(e.values[0].abs() < 1e-10);
        assert!((e.values[1] - 1.0).abs() < 1e-10);
        assert!((e.values[2] - 3.0).abs() < 1e-10);
        for k in 0..3 {
            assert!(residual(3, &m, e.values[k], &e.vectors[k]) < 1e-9);
        }
    }

    #[test]
    fn random_symmetric_residuals() {
        // deterministic pseudo-random symmetric matrix
        let n = 8;
        let mut m = vec![0.0; n * n];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for i in 0..n {
            for j in i..n {
                let x = next();
                m[i * n + j] = x;
                m[j * n + i] = x;
            }
        }
        let e = symmetric_eigen(n, &m);
        for k in 0..n {
            assert!(
                residual(n, &m, e.values[k], &e.vectors[k]) < 1e-9,
                "eigenpair {k} residual too large"
            );
        }
        for k in 1..n {
            assert!(e.values[k] >= e.values[k - 1]);
        }
    }
}
