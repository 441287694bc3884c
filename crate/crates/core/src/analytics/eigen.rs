//! Eigenvalues of a dense complex matrix through a complex Schur
//! decomposition (Hessenberg reduction and shifted QR).

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// QR sweeps allowed per matrix dimension.
pub const ITERATIONS_PER_DIMENSION: usize = 100;

/// All eigenvalues of the `n x n` row-major matrix `entries`, in the order
/// they appear on the diagonal of the Schur form.
pub fn eigenvalues(n: usize, entries: &[Complex64]) -> Result<Vec<Complex64>> {
    if entries.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: entries.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let iterations = ITERATIONS_PER_DIMENSION * n;
    let m = DMatrix::from_row_slice(n, n, entries);
    let (_, t) = Schur::try_new(m, f64::EPSILON, iterations)
        .ok_or(Error::NoConvergence {
            iterations,
            residual: f64::NAN,
        })?
        .unpack();
    let residual = (1..n).map(|i| t[(i, i - 1)].norm()).fold(0.0, f64::max);
    if residual > 0.0 {
        return Err(Error::NoConvergence { iterations, residual });
    }
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn matmul(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == Complex64::zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        out
    }

    /// sum lambda^j against tr(A^j) for j = 1..=4.
    fn assert_power_sums(n: usize, a: &[Complex64], eig: &[Complex64], tol: f64) {
        let mut power = a.to_vec();
        for j in 1..=4 {
            let trace: Complex64 = (0..n).map(|i| power[i * n + i]).sum();
            let sum: Complex64 = eig.iter().map(|l| l.powu(j)).sum();
            assert!((trace - sum).norm() < tol, "power {j}: {trace} vs {sum}");
            power = matmul(n, &power, a);
        }
    }

    #[test]
    fn triangular_matrix() {
        let a = vec![
            c(1.0, 0.0), c(2.0, 1.0), c(0.5, 0.0),
            c(0.0, 0.0), c(-1.0, 2.0), c(3.0, 0.0),
            c(0.0, 0.0), c(0.0, 0.0), c(0.25, -0.5),
        ];
        let eig = sorted(eigenvalues(3, &a).unwrap());
        let expected = sorted(vec![c(1.0, 0.0), c(-1.0, 2.0), c(0.25, -0.5)]);
        for (x, y) in eig.iter().zip(&expected) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn cycle_permutation_matrix() {
        let n = 7;
        let mut a = vec![Complex64::zero(); n * n];
        for i in 0..n {
            a[((i + 1) % n) * n + i] = c(1.0, 0.0);
        }
        let eig = eigenvalues(n, &a).unwrap();
        for k in 0..n {
            let root = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            assert!(eig.iter().any(|l| (l - root).norm() < 1e-10), "missing {root}");
        }
        assert_power_sums(n, &a, &eig, 1e-10);
    }

    #[test]
    fn degenerate_unitary() {
        // block diagonal: two copies of a 2-cycle and a phase
        let n = 5;
        let mut a = vec![Complex64::zero(); n * n];
        a[1] = c(1.0, 0.0);
        a[n] = c(1.0, 0.0);
        a[2 * n + 3] = c(1.0, 0.0);
        a[3 * n + 2] = c(1.0, 0.0);
        a[4 * n + 4] = c(0.0, 1.0);
        let eig = eigenvalues(n, &a).unwrap();
        let ones = eig.iter().filter(|l| (*l - 1.0).norm() < 1e-10).count();
        let minus = eig.iter().filter(|l| (*l + 1.0).norm() < 1e-10).count();
        assert_eq!((ones, minus), (2, 2));
        assert_power_sums(n, &a, &eig, 1e-10);
    }

    #[test]
    fn dense_random_matrix() {
        let n = 12;
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a: Vec<Complex64> = (0..n * n).map(|_| c(next(), next())).collect();
        let eig = eigenvalues(n, &a).unwrap();
        assert_eq!(eig.len(), n);
        assert_power_sums(n, &a, &eig, 1e-9);
    }

    #[test]
    fn small_and_bad_shapes() {
        assert_eq!(eigenvalues(0, &[]).unwrap(), vec![]);
        assert_eq!(eigenvalues(1, &[c(2.0, 3.0)]).unwrap(), vec![c(2.0, 3.0)]);
        assert!(eigenvalues(2, &[c(1.0, 0.0)]).is_err());
        let rot = [c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let eig = sorted(eigenvalues(2, &rot).unwrap());
        assert!((eig[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((eig[1] - c(0.0, 1.0)).norm() < 1e-12);
    }
}
