use super::eigen::symmetric_eig;
use super::matrix::RealMatrix;
use super::vector::{dot, norm, VectorSpace};

/// Gram-Schmidt with one reorthogonalization pass ("twice is enough").
///
/// Input order is preserved; a vector whose residual norm is below
/// `eps_rank` times the largest input norm is dropped as dependent.
pub fn orthonormalize<V: VectorSpace>(vectors: &[V], inner: impl Fn(&V, &V) -> f64, eps_rank: f64) -> Vec<V> {
    let scale = vectors.iter().map(|v| inner(v, v).max(0.0).sqrt()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<V> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = inner(q, &r);
                r.axpy(-c, q);
            }
        }
        let n = inner(&r, &r).max(0.0).sqrt();
        if n > eps_rank * scale {
            r.scale(1.0 / n);
            out.push(r);
        }
    }
    out
}

/// Matrix of a linear map in an orthonormal basis: entry `(i, j)` is
/// `⟨b_i, f(b_j)⟩`.
pub fn operator_matrix<V>(f: impl Fn(&V) -> V, basis: &[V], inner: impl Fn(&V, &V) -> f64) -> RealMatrix {
    let images: Vec<V> = basis.iter().map(&f).collect();
    RealMatrix::from_fn(basis.len(), basis.len(), |i, j| inner(&basis[i], &images[j]))
}

/// [`operator_matrix`] for coordinate vectors under the Euclidean product.
pub fn restrict_operator(f: &dyn Fn(&Vec<f64>) -> Vec<f64>, basis: &[Vec<f64>]) -> RealMatrix {
    operator_matrix(f, basis, |a: &Vec<f64>, b: &Vec<f64>| dot(a, b))
}

/// Orthogonal projection of `v` onto the span of an orthonormal basis.
pub fn project_onto(basis: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let mut p = vec![0.0; v.len()];
    for b in basis {
        p.axpy(dot(b, v), b);
    }
    p
}

/// `‖v − P v‖` for the projection onto an orthonormal basis.
pub fn projection_residual(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    let mut r = v.to_vec();
    r.axpy(-1.0, &project_onto(basis, v));
    norm(&r)
}

/// Orthonormal basis of the orthogonal complement of `removed` inside the span
/// of `ambient` (both given as orthonormal or spanning lists).
pub fn complement_in(ambient: &[Vec<f64>], removed: &[Vec<f64>], eps_rank: f64) -> Vec<Vec<f64>> {
    let removed = orthonormalize(removed, |a: &Vec<f64>, b: &Vec<f64>| dot(a, b), eps_rank);
    let mut candidates: Vec<Vec<f64>> = removed.clone();
    candidates.extend(ambient.iter().cloned());
    let full = orthonormalize(&candidates, |a: &Vec<f64>, b: &Vec<f64>| dot(a, b), eps_rank);
    full[removed.len()..].to_vec()
}

/// Largest principal angle between two subspaces spanned by orthonormal
/// bases, or `π/2` when the dimensions differ.
///
/// Computed from the sines, `sin θ_max = ‖(I − P_B) A‖₂`, which keeps the
/// measurement accurate for angles far below `√ε`.
pub fn max_principal_angle(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.len() != b.len() {
        return std::f64::consts::FRAC_PI_2;
    }
    if a.is_empty() {
        return 0.0;
    }
    let residuals: Vec<Vec<f64>> = a
        .iter()
        .map(|v| {
            let mut r = v.clone();
            r.axpy(-1.0, &project_onto(b, v));
            r
        })
        .collect();
    let gram = RealMatrix::from_fn(a.len(), a.len(), |i, j| dot(&residuals[i], &residuals[j]));
    let largest = symmetric_eig(&gram, f64::INFINITY)
        .map(|e| e.values.last().copied().unwrap_or(0.0))
        .unwrap_or(1.0);
    largest.clamp(0.0, 1.0).sqrt().asin()
}
