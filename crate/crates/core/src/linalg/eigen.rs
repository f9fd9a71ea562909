use num_complex::Complex64;

/// Eigenvalues of an `n×n` complex Hermitian matrix, descending.
///
/// The matrix is embedded into the real symmetric `2n×2n` block form
/// `[[Re A, -Im A], [Im A, Re A]]`, whose spectrum is that of `A` with every
/// eigenvalue doubled, and diagonalized by cyclic Jacobi rotations. Intended
/// for the small dimensions this crate works at, not as a general solver.
pub fn hermitian_eigenvalues(entries: &[Complex64], n: usize) -> Vec<f64> {
    assert_eq!(entries.len(), n * n, "entry count must be n*n");
    if n == 0 {
        return vec![];
    }
    let m = 2 * n;
    let mut a = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = entries[i * n + j];
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let mut all = symmetric_eigenvalues(&mut a, m);
    all.sort_by(|x, y| y.partial_cmp(x).unwrap());
    // each eigenvalue of A appears twice in the embedding
    (0..n).map(|k| all[2 * k]).collect()
}

/// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix (in place).
/// Returns the eigenvalues in unspecified order.
pub(crate) fn symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    const MAX_SWEEPS: usize = 64;
    const OFF_TOL: f64 = 1e-28;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off < OFF_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // rotate rows/columns p and q
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
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Analytic eigenvalues of the Hermitian matrix `[[m00, m01], [m01*, m11]]`,
/// returned as `(larger, smaller)`.
pub(crate) fn eig2(m00: f64, m01: Complex64, m11: f64) -> (f64, f64) {
    let mid = 0.5 * (m00 + m11);
    let half_diff = 0.5 * (m00 - m11);
    let radius = (half_diff * half_diff + m01.norm_sqr()).sqrt();
    (mid + radius, mid - radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_spectrum() {
        let entries = vec![
            c(3.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-1.0, 0.0),
        ];
        let eigs = hermitian_eigenvalues(&entries, 2);
        assert!((eigs[0] - 3.0).abs() < 1e-12);
        assert!((eigs[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_offdiagonal_matches_analytic() {
        // [[0.5, z], [z*, 0.5]] has eigenvalues 0.5 ± |z|
        let z = c(0.1, 0.2);
        let entries = vec![c(0.5, 0.0), z, z.conj(), c(0.5, 0.0)];
        let eigs = hermitian_eigenvalues(&entries, 2);
        let (hi, lo) = eig2(0.5, z, 0.5);
        assert!((eigs[0] - hi).abs() < 1e-13);
        assert!((eigs[1] - lo).abs() < 1e-13);
        assert!((hi - (0.5 + z.norm())).abs() < 1e-15);
    }

    #[test]
    fn three_by_three_known_spectrum() {
        // build A = Q D Q^T for a known rotation Q and diagonal D
        let d = [2.0, 0.5, -0.25];
        let th: f64 = 0.7;
        let (cth, sth) = (th.cos(), th.sin());
        // rotation in the (0,1) plane followed by (1,2)
        let q = |i: usize, j: usize| -> f64 {
            let r1 = [[cth, -sth, 0.0], [sth, cth, 0.0], [0.0, 0.0, 1.0]];
            let r2 = [[1.0, 0.0, 0.0], [0.0, cth, -sth], [0.0, sth, cth]];
            (0..3).map(|k| r1[i][k] * r2[k][j]).sum()
        };
        let mut entries = vec![c(0.0, 0.0); 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut v = 0.0;
                for k in 0..3 {
                    v += q(i, k) * d[k] * q(j, k);
                }
                entries[i * 3 + j] = c(v, 0.0);
            }
        }
        let mut eigs = hermitian_eigenvalues(&entries, 3);
        eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        assert!((eigs[0] - 2.0).abs() < 1e-11);
        assert!((eigs[1] - 0.5).abs() < 1e-11);
        assert!((eigs[2] + 0.25).abs() < 1e-11);
    }
}
