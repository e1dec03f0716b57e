//! Curvature tensor at the base point, computed from brackets and from the
//! explicit expression in `g`, `J` and `J₁, J₂, J₃`; Jacobi operators and
//! sectional curvature.

use crate::context::Grassmannian;
use crate::error::{Error, Result};
use crate::lie::{cartan_split, embed_block, metric, AlgebraElement, TangentVector};
use crate::linalg::{
    complement_in, group_eigenvalues, max_principal_angle, orthonormalize, restrict_operator, symmetric_eig,
    RealMatrix, SpectralTable,
};
use crate::structures::{classify_vector, kahler_j, QuaternionBasis, SingularType};

fn p_block(x: &AlgebraElement) -> TangentVector {
    let (_, p) = cartan_split(x);
    let m = x.size() - 2;
    TangentVector::from_block(p.matrix().block(0, 2, 2, m)).expect("m >= 2")
}

/// `R(X,Y)Z` as the p-part of `−[[X,Y],Z]`.
pub fn r_bracket(x: &TangentVector, y: &TangentVector, z: &TangentVector) -> TangentVector {
    let (x, y, z) = (embed_block(x), embed_block(y), embed_block(z));
    let xy = x.matrix().commutator(y.matrix());
    let r = xy.commutator(z.matrix()).scale(-1.0);
    p_block(&AlgebraElement::from_matrix_unchecked(r))
}

/// `R(X,Y)Z` from the closed expression in `g`, `J` and the `J_ν`.
pub fn r_formula(q: &QuaternionBasis, x: &TangentVector, y: &TangentVector, z: &TangentVector) -> TangentVector {
    let j = kahler_j;
    let mut acc = TangentVector::zero(x.m());
    let mut add = |c: f64, v: &TangentVector| acc = &acc + &v.scaled(c);

    add(metric(y, z), x);
    add(-metric(x, z), y);
    let (jx, jy) = (j(x), j(y));
    add(metric(&jy, z), &jx);
    add(-metric(&jx, z), &jy);
    add(-2.0 * metric(&jx, y), &j(z));
    for nu in 0..3 {
        let jn = |v: &TangentVector| q.apply(nu, v);
        let (jnx, jny) = (jn(x), jn(y));
        add(metric(&jny, z), &jnx);
        add(-metric(&jnx, z), &jny);
        add(-2.0 * metric(&jnx, y), &jn(z));
        let (jnjx, jnjy) = (jn(&jx), jn(&jy));
        add(metric(&jnjy, z), &jnjx);
        add(-metric(&jnjx, z), &jnjy);
    }
    acc.scaled(-0.5)
}

/// Largest relative deviation `‖R_f − R_b‖ / max(‖R_b‖, |X||Y||Z|)` of the
/// two curvature evaluations on one triple.
pub fn curvature_agreement(q: &QuaternionBasis, x: &TangentVector, y: &TangentVector, z: &TangentVector) -> f64 {
    let b = r_bracket(x, y, z);
    let f = r_formula(q, x, y, z);
    let scale = b.norm().max(x.norm() * y.norm() * z.norm());
    if scale == 0.0 {
        return 0.0;
    }
    (&f - &b).norm() / scale
}

/// Residual of the derivation identity
/// `[K, R(X,Y)Z] = R([K,X],Y)Z + R(X,[K,Y])Z + R(X,Y)[K,Z]` for `K ∈ k`.
pub fn k_derivation_residual(k: &AlgebraElement, x: &TangentVector, y: &TangentVector, z: &TangentVector) -> f64 {
    let act = |v: &TangentVector| {
        p_block(&AlgebraElement::from_matrix_unchecked(
            k.matrix().commutator(embed_block(v).matrix()),
        ))
    };
    let lhs = act(&r_bracket(x, y, z));
    let rhs = &(&r_bracket(&act(x), y, z) + &r_bracket(x, &act(y), z)) + &r_bracket(x, y, &act(z));
    (&lhs - &rhs).norm()
}

fn check_unit(x: &TangentVector, eps: f64) -> Result<()> {
    let n = x.norm();
    if (n - 1.0).abs() > eps {
        return Err(Error::NotUnit(n));
    }
    Ok(())
}

/// Matrix of `R_X Y = R(Y,X)X` in the canonical orthonormal coordinates.
pub fn jacobi_operator(ctx: &Grassmannian, x: &TangentVector) -> Result<RealMatrix> {
    check_unit(x, ctx.tol().eps_resid)?;
    Ok(jacobi_matrix(x))
}

pub(crate) fn jacobi_matrix(x: &TangentVector) -> RealMatrix {
    let n = 4 * x.m();
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            r_bracket(&TangentVector::from_coords(x.m(), &e), x, x).coords()
        })
        .collect();
    RealMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Grouped spectrum of the Jacobi operator on all of p.
pub fn jacobi_spectrum(ctx: &Grassmannian, x: &TangentVector) -> Result<SpectralTable> {
    let mat = jacobi_operator(ctx, x)?;
    let eig = symmetric_eig(&mat, ctx.tol().eps_resid)?;
    group_eigenvalues(&eig.values, &eig.vectors, ctx.tol().eps_group)
}

/// Spectrum of the Jacobi operator restricted to an invariant subspace given
/// by an orthonormal coordinate basis; eigenvectors in ambient coordinates.
pub fn jacobi_spectrum_on(ctx: &Grassmannian, x: &TangentVector, basis: &[Vec<f64>]) -> Result<SpectralTable> {
    let mat = jacobi_operator(ctx, x)?;
    let restricted = restrict_operator(&|v: &Vec<f64>| mat.apply(v), basis);
    let eig = symmetric_eig(&restricted, ctx.tol().eps_resid)?;
    let table = group_eigenvalues(&eig.values, &eig.vectors, ctx.tol().eps_group)?;
    Ok(table.map_basis(|c| combine(basis, c, 4 * x.m())))
}

pub(crate) fn combine(basis: &[Vec<f64>], coeffs: &[f64], n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * bi;
        }
    }
    v
}

/// Orthonormal coordinate basis of the span of some tangent vectors.
pub fn span_coords(vectors: &[TangentVector], eps_rank: f64) -> Vec<Vec<f64>> {
    let coords: Vec<Vec<f64>> = vectors.iter().map(TangentVector::coords).collect();
    orthonormalize(&coords, |a: &Vec<f64>, b: &Vec<f64>| crate::linalg::dot(a, b), eps_rank)
}

pub(crate) fn identity_basis(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect()
}

/// An eigenvalue with the subspace predicted for it from `J` and the `J_ν`.
#[derive(Debug, Clone)]
pub struct PredictedEigenspace {
    pub value: f64,
    pub label: &'static str,
    pub basis: Vec<Vec<f64>>,
}

/// Comparison of one predicted eigenspace with the computed one.
#[derive(Debug, Clone)]
pub struct EigenspaceMatch {
    pub value: f64,
    pub label: &'static str,
    pub expected_multiplicity: usize,
    pub computed_multiplicity: usize,
    /// Largest principal angle between predicted and computed spaces.
    pub angle: f64,
}

#[derive(Debug, Clone)]
pub struct JacobiCheck {
    pub kind: SingularType,
    pub rows: Vec<EigenspaceMatch>,
}

impl JacobiCheck {
    pub fn max_angle(&self) -> f64 {
        self.rows.iter().map(|r| r.angle).fold(0.0, f64::max)
    }

    pub fn multiplicities_match(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.expected_multiplicity == r.computed_multiplicity)
    }
}

/// The eigenspaces of `R_X` for a singular unit vector described through
/// `J` and the quaternionic structure.
pub fn predicted_jacobi_eigenspaces(
    ctx: &Grassmannian,
    x: &TangentVector,
) -> Result<(SingularType, Vec<PredictedEigenspace>)> {
    let q = ctx.quaternions();
    let eps = ctx.tol().eps_rank;
    let n = ctx.dim();
    let kind = classify_vector(q, x, ctx.tol().eps_angle)?;
    let jx = kahler_j(x);
    let jn = |v: &TangentVector| (0..3).map(|nu| q.apply(nu, v)).collect::<Vec<_>>();
    match kind {
        SingularType::Regular => Err(Error::RegularVector),
        SingularType::PerpType => {
            let mut zero = vec![x.clone()];
            zero.extend(jn(&jx));
            let mut minus_two = vec![jx.clone()];
            minus_two.extend(jn(x));
            let zero = span_coords(&zero, eps);
            let minus_two = span_coords(&minus_two, eps);
            let mut both = zero.clone();
            both.extend(minus_two.iter().cloned());
            let half = complement_in(&identity_basis(n), &both, eps);
            Ok((
                kind,
                vec![
                    PredictedEigenspace {
                        value: -2.0,
                        label: "RJX+JX",
                        basis: minus_two,
                    },
                    PredictedEigenspace {
                        value: -0.5,
                        label: "(RX+RJX+JX+JJX)^perp",
                        basis: half,
                    },
                    PredictedEigenspace {
                        value: 0.0,
                        label: "RX+JJX",
                        basis: zero,
                    },
                ],
            ))
        }
        SingularType::ComplexType => {
            let (adapted, _) = q.adapted_to(x)?;
            let mut hx = vec![x.clone()];
            hx.extend(jn(x));
            let hx = span_coords(&hx, eps);
            let perp = complement_in(&identity_basis(n), &hx, eps);
            let (plus, minus) = involution_split(
                &perp,
                |v| {
                    let y = TangentVector::from_coords(ctx.m(), v);
                    kahler_j(&adapted.apply(0, &y)).scaled(-1.0).coords()
                },
                eps,
            );
            let cx = span_coords(&[x.clone(), jx.clone()], eps);
            let h_minus_c = complement_in(&hx, &cx, eps);
            let mut zero = span_coords(std::slice::from_ref(x), eps);
            zero.extend(minus);
            let mut minus_one = h_minus_c;
            minus_one.extend(plus);
            Ok((
                kind,
                vec![
                    PredictedEigenspace {
                        value: -4.0,
                        label: "RJX",
                        basis: span_coords(&[jx], eps),
                    },
                    PredictedEigenspace {
                        value: -1.0,
                        label: "(HX-CX)+{JY=J1Y}",
                        basis: minus_one,
                    },
                    PredictedEigenspace {
                        value: 0.0,
                        label: "RX+{JY=-J1Y}",
                        basis: zero,
                    },
                ],
            ))
        }
    }
}

/// `±1` eigenspaces of an involution `S` preserving the span of `basis`,
/// computed as the images of `(1 ± S)/2`.
pub(crate) fn involution_split(
    basis: &[Vec<f64>],
    s: impl Fn(&[f64]) -> Vec<f64>,
    eps_rank: f64,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let euclid = |a: &Vec<f64>, b: &Vec<f64>| crate::linalg::dot(a, b);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for v in basis {
        let sv = s(v);
        plus.push(v.iter().zip(&sv).map(|(a, b)| 0.5 * (a + b)).collect());
        minus.push(v.iter().zip(&sv).map(|(a, b)| 0.5 * (a - b)).collect());
    }
    (
        orthonormalize(&plus, euclid, eps_rank),
        orthonormalize(&minus, euclid, eps_rank),
    )
}

/// Compares the computed Jacobi eigenspaces with their descriptions in terms
/// of `J` and the quaternionic structure.
pub fn jacobi_eigenspace_check(ctx: &Grassmannian, x: &TangentVector) -> Result<JacobiCheck> {
    let (kind, predicted) = predicted_jacobi_eigenspaces(ctx, x)?;
    let table = jacobi_spectrum(ctx, x)?;
    let tol = 1e3 * ctx.tol().eps_resid;
    let mut rows = Vec::new();
    for p in predicted {
        let computed = table.group_near(p.value, tol);
        let computed_basis = computed.map(|g| g.basis.clone()).unwrap_or_default();
        rows.push(EigenspaceMatch {
            value: p.value,
            label: p.label,
            expected_multiplicity: p.basis.len(),
            computed_multiplicity: computed_basis.len(),
            angle: max_principal_angle(&p.basis, &computed_basis),
        });
    }
    let covered: usize = rows.iter().map(|r| r.computed_multiplicity).sum();
    if covered != table.dim {
        rows.push(EigenspaceMatch {
            value: f64::NAN,
            label: "unpredicted",
            expected_multiplicity: 0,
            computed_multiplicity: table.dim - covered,
            angle: std::f64::consts::FRAC_PI_2,
        });
    }
    Ok(JacobiCheck { kind, rows })
}

/// `K(X,Y) = g(R(X,Y)Y, X) / (|X|²|Y|² − g(X,Y)²)`.
pub fn sectional_curvature(x: &TangentVector, y: &TangentVector, eps_rank: f64) -> Result<f64> {
    let (xx, yy, xy) = (metric(x, x), metric(y, y), metric(x, y));
    let denom = xx * yy - xy * xy;
    if denom <= eps_rank * eps_rank * xx * yy || denom == 0.0 {
        return Err(Error::DependentVectors);
    }
    Ok(metric(&r_bracket(x, y, y), x) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{basis_a, weyl_chamber_vector};
    use std::f64::consts::FRAC_PI_4;

    fn sample(m: usize, seed: u64) -> TangentVector {
        let mut s = seed;
        let coords: Vec<f64> = (0..4 * m)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
            })
            .collect();
        TangentVector::from_coords(m, &coords)
    }

    #[test]
    fn holomorphic_plane_of_e1() {
        let (e1, e2) = basis_a(3);
        let je1 = kahler_j(&e1);
        let q = QuaternionBasis::canonical();
        for r in [r_bracket(&je1, &e1, &e1), r_formula(&q, &je1, &e1, &e1)] {
            assert!((&r + &je1.scaled(4.0)).norm() < 1e-14);
        }
        assert!((sectional_curvature(&e1, &je1, 1e-10).unwrap() + 4.0).abs() < 1e-14);
        assert_eq!(sectional_curvature(&e1, &e2, 1e-10).unwrap(), 0.0);
        assert!(matches!(
            sectional_curvature(&e1, &e1.scaled(2.0), 1e-10),
            Err(Error::DependentVectors)
        ));
    }

    #[test]
    fn formula_matches_brackets() {
        let q = QuaternionBasis::canonical();
        for m in 2..=4 {
            for k in 0..20 {
                let s = 100 * m as u64 + k;
                let (x, y, z) = (sample(m, s), sample(m, s + 1000), sample(m, s + 2000));
                assert!(curvature_agreement(&q, &x, &y, &z) < 1e-12);
            }
        }
    }

    #[test]
    fn curvature_symmetries() {
        let m = 3;
        let (x, y, z, w) = (sample(m, 1), sample(m, 2), sample(m, 3), sample(m, 4));
        let r = |a: &TangentVector, b: &TangentVector, c: &TangentVector| r_bracket(a, b, c);
        assert!((&r(&x, &y, &z) + &r(&y, &x, &z)).norm() < 1e-14);
        let pair = metric(&r(&x, &y, &z), &w) - metric(&r(&z, &w, &x), &y);
        assert!(pair.abs() < 1e-14);
        let bianchi = &(&r(&x, &y, &z) + &r(&y, &z, &x)) + &r(&z, &x, &y);
        assert!(bianchi.norm() < 1e-14);
        assert_eq!(r(&x, &x, &z).norm(), 0.0);
    }

    #[test]
    fn k_acts_by_derivations() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let (x, y, z) = (sample(3, 5), sample(3, 6), sample(3, 7));
        for k in ctx.cartan().k_basis.iter().take(5) {
            assert!(k_derivation_residual(k, &x, &y, &z) < 1e-13);
        }
    }

    #[test]
    fn jacobi_spectra_table() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let (e1, _) = basis_a(3);
        let t = jacobi_spectrum(&ctx, &e1).unwrap();
        assert_eq!(t.multiplicities(), vec![1, 6, 5]);
        let h = weyl_chamber_vector(3, FRAC_PI_4).unwrap();
        let t = jacobi_spectrum(&ctx, &h).unwrap();
        assert_eq!(t.multiplicities(), vec![4, 4, 4]);
        assert!((t.values()[1] + 0.5).abs() < 1e-12);
        assert!(matches!(jacobi_spectrum(&ctx, &e1.scaled(2.0)), Err(Error::NotUnit(_))));
    }

    #[test]
    fn jacobi_eigenspaces_match_descriptions() {
        for m in 2..=4 {
            let ctx = Grassmannian::with_defaults(m).unwrap();
            for t in [0.0, FRAC_PI_4] {
                let x = weyl_chamber_vector(m, t).unwrap();
                let check = jacobi_eigenspace_check(&ctx, &x).unwrap();
                assert!(check.multiplicities_match(), "{m} {t} {:?}", check.rows);
                assert!(check.max_angle() < 1e-8);
            }
            let regular = weyl_chamber_vector(m, 0.3).unwrap();
            assert!(matches!(
                jacobi_eigenspace_check(&ctx, &regular),
                Err(Error::RegularVector)
            ));
        }
    }
}
