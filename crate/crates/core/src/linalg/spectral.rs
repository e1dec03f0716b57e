use super::eigen::symmetric_eig;
use super::matrix::RealMatrix;
use super::subspace::restrict_operator;
use super::vector::{dot, norm, VectorSpace};
use crate::error::{Error, Result};

/// One eigenvalue with its multiplicity given by the length of `basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenGroup {
    pub value: f64,
    pub basis: Vec<Vec<f64>>,
}

impl EigenGroup {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

/// Eigenvalues grouped with multiplicities and orthonormal eigenbases.
///
/// Groups are strictly increasing in value; multiplicities sum to `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    pub dim: usize,
    pub groups: Vec<EigenGroup>,
}

impl SpectralTable {
    pub fn values(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(EigenGroup::multiplicity).collect()
    }

    /// Eigenvalues repeated according to multiplicity, ascending.
    pub fn multiset(&self) -> Vec<f64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.value, g.multiplicity()))
            .collect()
    }

    /// The group whose value lies within `tol` of `value`.
    pub fn group_near(&self, value: f64, tol: f64) -> Option<&EigenGroup> {
        self.groups.iter().find(|g| (g.value - value).abs() <= tol)
    }

    /// Largest deviation from orthonormality over all basis vectors of all
    /// groups.
    pub fn orthonormality_residual(&self) -> f64 {
        let all: Vec<&Vec<f64>> = self.groups.iter().flat_map(|g| &g.basis).collect();
        let mut r: f64 = 0.0;
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((dot(a, b) - target).abs());
            }
        }
        r
    }

    /// Rebuilds `Σ λ_i P_i` as a matrix on the ambient coordinates.
    pub fn assemble(&self, ambient: usize) -> RealMatrix {
        let mut m = RealMatrix::zeros(ambient, ambient);
        for g in &self.groups {
            for v in &g.basis {
                for i in 0..ambient {
                    for j in 0..ambient {
                        m[(i, j)] += g.value * v[i] * v[j];
                    }
                }
            }
        }
        m
    }

    /// Maps each basis vector through `lift`, e.g. from subspace coordinates
    /// to ambient coordinates.
    pub fn map_basis(&self, lift: impl Fn(&[f64]) -> Vec<f64>) -> Self {
        Self {
            dim: self.dim,
            groups: self
                .groups
                .iter()
                .map(|g| EigenGroup {
                    value: g.value,
                    basis: g.basis.iter().map(|v| lift(v)).collect(),
                })
                .collect(),
        }
    }
}

/// Groups ascending eigenvalues: consecutive values within `eps_group` share a
/// group whose value is the arithmetic mean of its members.
pub fn group_eigenvalues(values: &[f64], vectors: &[Vec<f64>], eps_group: f64) -> Result<SpectralTable> {
    if values.len() != vectors.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} eigenvectors", values.len()),
            found: vectors.len().to_string(),
        });
    }
    let mut groups: Vec<(Vec<f64>, Vec<Vec<f64>>)> = Vec::new();
    for (i, (&v, vec)) in values.iter().zip(vectors).enumerate() {
        let start_new = match (i, groups.last()) {
            (0, _) | (_, None) => true,
            (_, Some(_)) => v - values[i - 1] > eps_group,
        };
        if start_new {
            groups.push((vec![v], vec![vec.clone()]));
        } else if let Some(last) = groups.last_mut() {
            last.0.push(v);
            last.1.push(vec.clone());
        }
    }
    let groups: Vec<EigenGroup> = groups
        .into_iter()
        .map(|(vals, basis)| EigenGroup {
            value: vals.iter().sum::<f64>() / vals.len() as f64,
            basis,
        })
        .collect();
    for w in groups.windows(2) {
        if w[1].value - w[0].value < 2.0 * eps_group {
            return Err(Error::AmbiguousGrouping {
                lower: w[0].value,
                upper: w[1].value,
            });
        }
    }
    Ok(SpectralTable {
        dim: values.len(),
        groups,
    })
}

/// A joint eigenspace of several commuting symmetric operators, with the
/// eigenvalue of each operator on it.
#[derive(Debug, Clone)]
pub struct JointGroup {
    pub values: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
    /// Largest `‖T v − λ v‖` over operators and basis vectors.
    pub residual: f64,
}

/// Simultaneous diagonalization of commuting symmetric matrices.
///
/// The combination `Σ w_k T_k` is diagonalized and grouped; on each group the
/// individual operators are restricted and diagonalized again, splitting the
/// group further if the weights happen to merge distinct joint eigenvalues.
pub fn simultaneous_eig(
    ops: &[RealMatrix],
    weights: &[f64],
    eps_group: f64,
    eps_resid: f64,
) -> Result<Vec<JointGroup>> {
    assert_eq!(ops.len(), weights.len());
    let n = ops.first().map_or(0, RealMatrix::rows);
    let mut combo = RealMatrix::zeros(n, n);
    for (op, &w) in ops.iter().zip(weights) {
        combo = &combo + &op.scaled(w);
    }
    let eig = symmetric_eig(&combo, eps_resid)?;
    let table = group_eigenvalues(&eig.values, &eig.vectors, eps_group)?;

    let mut out = Vec::new();
    for group in table.groups {
        let mut pending = vec![group.basis];
        for op in ops {
            let mut refined = Vec::new();
            for basis in pending {
                let restricted = restrict_operator(&|v: &Vec<f64>| op.apply(v), &basis);
                let sub = symmetric_eig(&restricted, eps_resid)?;
                let sub_table = group_eigenvalues(&sub.values, &sub.vectors, eps_group)?;
                for g in sub_table.groups {
                    refined.push(g.basis.iter().map(|coeffs| combine(&basis, coeffs)).collect::<Vec<_>>());
                }
            }
            pending = refined;
        }
        for basis in pending {
            let mut values = Vec::with_capacity(ops.len());
            let mut residual: f64 = 0.0;
            for op in ops {
                let lambda = basis.iter().map(|v| dot(v, &op.apply(v))).sum::<f64>() / basis.len() as f64;
                for v in &basis {
                    let mut r = op.apply(v);
                    r.axpy(-lambda, v);
                    residual = residual.max(norm(&r));
                }
                values.push(lambda);
            }
            out.push(JointGroup {
                values,
                basis,
                residual,
            });
        }
    }
    Ok(out)
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64]) -> Vec<f64> {
    let mut v = basis[0].zero_like();
    for (b, &c) in basis.iter().zip(coeffs) {
        v.axpy(c, b);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn merges_repeated_values() {
        let vecs: Vec<_> = (0..3).map(|i| unit(3, i)).collect();
        let t = group_eigenvalues(&[0.0, 0.0, 1.0], &vecs, 1e-6).unwrap();
        assert_eq!(t.multiplicities(), vec![2, 1]);
        assert_eq!(t.values(), vec![0.0, 1.0]);
    }

    #[test]
    fn merges_below_tolerance() {
        let vecs: Vec<_> = (0..3).map(|i| unit(3, i)).collect();
        let t = group_eigenvalues(&[0.0, 1e-12, 1.0], &vecs, 1e-6).unwrap();
        assert_eq!(t.multiplicities(), vec![2, 1]);
        assert!(t.groups[0].value.abs() < 1e-12);
    }

    #[test]
    fn ambiguous_grouping_is_reported() {
        let vecs: Vec<_> = (0..2).map(|i| unit(2, i)).collect();
        let err = group_eigenvalues(&[0.0, 1.5e-6], &vecs, 1e-6).unwrap_err();
        assert!(matches!(err, Error::AmbiguousGrouping { .. }));
    }

    #[test]
    fn simultaneous_diagonalization_of_diagonal_pair() {
        let a = RealMatrix::diagonal(&[1.0, 1.0, -1.0, 0.0]);
        let b = RealMatrix::diagonal(&[1.0, -1.0, -1.0, 0.0]);
        // (1, -1) and (0, 0) collide under these weights; refinement splits them.
        let groups = simultaneous_eig(&[a, b], &[0.5, 0.5], 1e-9, 1e-9).unwrap();
        let mut pairs: Vec<(i64, i64, usize)> = groups
            .iter()
            .map(|g| (g.values[0].round() as i64, g.values[1].round() as i64, g.basis.len()))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(-1, -1, 1), (0, 0, 1), (1, -1, 1), (1, 1, 1)]);
        assert!(groups.iter().all(|g| g.residual < 1e-12));
    }
}
