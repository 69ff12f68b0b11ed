//! Dense linear algebra for small matrices: cyclic Jacobi eigensolver and
//! Gram-matrix numerical rank. Sizes here are tiny (form-family counts),
//! so simplicity wins over sophistication.

use alloc::vec;
use alloc::vec::Vec;

/// Eigenvalues of a small symmetric matrix (row-major, `dim × dim`) by the
/// cyclic Jacobi method. Returned ascending.
pub fn symmetric_eigenvalues(matrix: &[f64], dim: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), dim * dim);
    let mut a = matrix.to_vec();
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..dim {
            for q in (p + 1)..dim {
                off += a[p * dim + q] * a[p * dim + q];
            }
        }
        if off <= f64::EPSILON * f64::EPSILON {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * dim + p];
                let aqq = a[q * dim + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut evs: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    evs.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    evs
}

/// Numerical rank of a positive semidefinite Gram matrix: singular values
/// are square roots of the eigenvalues, and directions with
/// `σ < threshold·σ_max` count as null.
pub fn gram_rank(gram: &[f64], dim: usize, singular_threshold: f64) -> usize {
    if dim == 0 {
        return 0;
    }
    let evs = symmetric_eigenvalues(gram, dim);
    let max = evs.last().copied().unwrap_or(0.0).max(0.0);
    if max == 0.0 {
        return 0;
    }
    let cut = singular_threshold * singular_threshold * max;
    evs.iter().filter(|&&e| e > cut).count()
}

/// Build the Gram matrix of `vectors` under the given inner product.
pub fn gram_matrix<F>(count: usize, mut inner: F) -> Vec<f64>
where
    F: FnMut(usize, usize) -> f64,
{
    let mut g = vec![0.0; count * count];
    for i in 0..count {
        for j in i..count {
            let v = inner(i, j);
            g[i * count + j] = v;
            g[j * count + i] = v;
        }
    }
    g
}
