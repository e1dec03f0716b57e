use super::matrix::{ComplexMatrix, RealMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const CONVERGENCE: f64 = 1e-13;

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Real symmetric counterpart of [`HermitianEigen`], eigenvectors as rows of
/// `vectors` (one `Vec<f64>` per eigenvalue).
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// a real Givens rotation, so real symmetric input stays real throughout.
/// Iteration stops when the off-diagonal Frobenius norm drops below
/// `1e-13 * ‖A‖_F`, or fails after 100 sweeps.
pub fn hermitian_eig(a: &ComplexMatrix, eps_resid: f64) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    let n = a.rows();
    let scale = a.frobenius_norm();
    let residual = a.hermitian_residual();
    if residual > eps_resid * scale.max(1.0) {
        return Err(Error::NonHermitian { residual });
    }

    // Symmetrize so that roundoff in the input does not leak into the result.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = CONVERGENCE * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= threshold || n < 2 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigendecomposition of a real symmetric matrix via [`hermitian_eig`].
pub fn symmetric_eig(a: &RealMatrix, eps_resid: f64) -> Result<SymmetricEigen> {
    let eig = hermitian_eig(&ComplexMatrix::from_real(a), eps_resid)?;
    let n = a.rows();
    let vectors = (0..n)
        .map(|j| (0..n).map(|i| eig.vectors[(i, j)].re).collect())
        .collect();
    Ok(SymmetricEigen {
        values: eig.values,
        vectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let n = m.rows();
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Tiny pivots relative to both diagonal entries are zeroed outright.
    if abs < 1e-300 || (app.abs() + 100.0 * abs == app.abs() && aqq.abs() + 100.0 * abs == aqq.abs()) {
        m[(p, q)] = C64::new(0.0, 0.0);
        m[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let t = if tau == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();

    // Columns: A <- A W with W = [[c, s], [-s conj(e), c conj(e)]].
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c - akq * pc * s;
        m[(k, q)] = akp * s + akq * pc * c;
    }
    // Rows: A <- W* A.
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c - aqk * phase * s;
        m[(q, k)] = apk * s + aqk * phase * c;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * pc * s;
        v[(k, q)] = vkp * s + vkq * pc * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruction_residual(a: &ComplexMatrix, eig: &HermitianEigen) -> f64 {
        let n = a.rows();
        let lambda = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(eig.values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let rebuilt = &(&eig.vectors * &lambda) * &eig.vectors.adjoint();
        rebuilt.max_abs_diff(a)
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let eig = hermitian_eig(&ComplexMatrix::identity(3), 1e-9).unwrap();
        assert_eq!(eig.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_is_sorted() {
        let a = RealMatrix::diagonal(&[2.0, -1.0]);
        let eig = symmetric_eig(&a, 1e-9).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0]);
        assert_eq!(eig.vectors[0], vec![0.0, 1.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(hermitian_eig(&a, 1e-9), Err(Error::NonHermitian { .. })));
        assert!(matches!(
            hermitian_eig(&ComplexMatrix::zeros(2, 3), 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = ComplexMatrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), C64::new(2.0, 0.0)],
        ]);
        let eig = hermitian_eig(&a, 1e-9).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        assert!(reconstruction_residual(&a, &eig) < 1e-14);
    }

    #[test]
    fn pseudo_random_hermitian_reconstructs() {
        // Deterministic entries from a simple LCG; the full random-matrix
        // property test lives in tests/linalg_props.rs.
        let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let n = 8;
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = C64::new(next(), 0.0);
            for j in i + 1..n {
                let z = C64::new(next(), next());
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let eig = hermitian_eig(&a, 1e-9).unwrap();
        assert!(reconstruction_residual(&a, &eig) < 1e-10);
        let gram = &eig.vectors.adjoint() * &eig.vectors;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }
}
