//! The Kähler structure `J`, the quaternionic structure spanned by
//! `J₁, J₂, J₃`, the Kähler angle and the singular-vector classification.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::lie::{block_of, embed_block, metric, AlgebraElement, TangentVector};
use crate::linalg::{orthonormalize, ComplexMatrix, C64};

/// `JX`: multiplication of the block by `i`.
pub fn kahler_j(x: &TangentVector) -> TangentVector {
    x.mul_complex(C64::new(0.0, 1.0))
}

/// The element `Z = diag(mi/(m+2) I₂, −2i/(m+2) I_m)` of the center of k.
pub fn kahler_z(m: usize) -> AlgebraElement {
    let n = m + 2;
    let (a, b) = (m as f64 / n as f64, -2.0 / n as f64);
    AlgebraElement::from_matrix_unchecked(ComplexMatrix::from_fn(n, n, |i, j| match (i == j, i < 2) {
        (true, true) => C64::new(0.0, a),
        (true, false) => C64::new(0.0, b),
        _ => C64::new(0.0, 0.0),
    }))
}

/// `JX` computed as `ad(Z) X`.
pub fn kahler_j_adjoint(x: &TangentVector, eps_resid: f64) -> Result<TangentVector> {
    let z = kahler_z(x.m());
    let y = AlgebraElement::from_matrix_unchecked(z.matrix().commutator(embed_block(x).matrix()));
    block_of(&y, eps_resid)
}

/// Three quaternionic structures acting by left multiplication of the block
/// by 2×2 matrices `q₁, q₂, q₃` with `q₁q₂ = q₃` (cyclically).
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionBasis {
    q: [ComplexMatrix; 3],
}

impl QuaternionBasis {
    /// `q₁ = [[i,0],[0,−i]]`, `q₂ = [[0,1],[−1,0]]`, `q₃ = [[0,i],[i,0]]`.
    pub fn canonical() -> Self {
        let z = |re: f64, im: f64| C64::new(re, im);
        let m = |a: [C64; 4]| ComplexMatrix::from_rows(&[vec![a[0], a[1]], vec![a[2], a[3]]]);
        Self {
            q: [
                m([z(0.0, 1.0), z(0.0, 0.0), z(0.0, 0.0), z(0.0, -1.0)]),
                m([z(0.0, 0.0), z(1.0, 0.0), z(-1.0, 0.0), z(0.0, 0.0)]),
                m([z(0.0, 0.0), z(0.0, 1.0), z(0.0, 1.0), z(0.0, 0.0)]),
            ],
        }
    }

    /// The basis obtained by rotating the canonical one with the rows of a
    /// 3×3 orthogonal matrix: `J'_k = Σ_ν r[k][ν] J_ν`.
    pub fn rotated(&self, r: [[f64; 3]; 3]) -> Self {
        let combo = |row: [f64; 3]| {
            let mut acc = ComplexMatrix::zeros(2, 2);
            for (q, c) in self.q.iter().zip(row) {
                acc = &acc + &q.scale(c);
            }
            acc
        };
        Self {
            q: [combo(r[0]), combo(r[1]), combo(r[2])],
        }
    }

    /// `J_ν X` for `ν ∈ {0, 1, 2}` (standing for `J₁, J₂, J₃`).
    pub fn apply(&self, nu: usize, x: &TangentVector) -> TangentVector {
        x.left_mul(&self.q[nu % 3])
    }

    pub fn matrix(&self, nu: usize) -> &ComplexMatrix {
        &self.q[nu % 3]
    }

    /// Largest violation of `J_ν² = −1` and `J_ν J_{ν+1} = J_{ν+2} = −J_{ν+1} J_ν`.
    pub fn relation_residual(&self) -> f64 {
        let minus_one = ComplexMatrix::identity(2).scale(-1.0);
        let mut r: f64 = 0.0;
        for nu in 0..3 {
            let (a, b, c) = (&self.q[nu], &self.q[(nu + 1) % 3], &self.q[(nu + 2) % 3]);
            r = r.max((a * a).max_abs_diff(&minus_one));
            r = r.max((a * b).max_abs_diff(c));
            r = r.max((b * a).max_abs_diff(&c.scale(-1.0)));
        }
        r
    }

    /// Basis adapted to a vector of complex type: the first structure
    /// satisfies `J₁'X = JX`. Returns the basis and the residual
    /// `‖JX − J₁'X‖ / ‖X‖`.
    pub fn adapted_to(&self, x: &TangentVector) -> Result<(Self, f64)> {
        let n2 = metric(x, x);
        if n2 == 0.0 {
            return Err(Error::ZeroVector);
        }
        let jx = kahler_j(x);
        let mut a = [0.0; 3];
        for (nu, coeff) in a.iter_mut().enumerate() {
            *coeff = metric(&jx, &self.apply(nu, x)) / n2;
        }
        let len = a.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len == 0.0 {
            return Err(Error::WrongSingularType);
        }
        a.iter_mut().for_each(|c| *c /= len);
        // Complete to a right-handed orthonormal frame, seeded with the axis
        // least aligned with `a`.
        let pivot = (0..3).min_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs())).unwrap_or(0);
        let mut b = [0.0; 3];
        b[pivot] = 1.0;
        let d = a[pivot];
        b.iter_mut().zip(a).for_each(|(bi, ai)| *bi -= d * ai);
        let bl = b.iter().map(|c| c * c).sum::<f64>().sqrt();
        b.iter_mut().for_each(|c| *c /= bl);
        let c = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let basis = self.rotated([a, b, c]);
        let diff = &jx - &basis.apply(0, x);
        Ok((basis, diff.norm() / n2.sqrt()))
    }
}

impl Default for QuaternionBasis {
    fn default() -> Self {
        Self::canonical()
    }
}

/// Orthonormal basis of `𝔍X = span{J₁X, J₂X, J₃X}`.
pub fn jspan(q: &QuaternionBasis, x: &TangentVector, eps_rank: f64) -> Result<Vec<TangentVector>> {
    if x.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let images: Vec<TangentVector> = (0..3).map(|nu| q.apply(nu, x)).collect();
    Ok(orthonormalize(&images, metric, eps_rank))
}

/// Angle between `JX` and the subspace `𝔍X`, in `[0, π/2]`.
///
/// Evaluated as `atan2(‖JX − P JX‖, ‖P JX‖)`, which stays accurate at both
/// ends of the range.
pub fn kahler_angle(q: &QuaternionBasis, x: &TangentVector) -> Result<f64> {
    let span = jspan(q, x, 1e-12)?;
    let jx = kahler_j(x);
    let mut proj = TangentVector::zero(x.m());
    for v in &span {
        proj = &proj + &v.scaled(metric(v, &jx));
    }
    let perp = &jx - &proj;
    Ok(perp.norm().atan2(proj.norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularType {
    Regular,
    /// `JX ∈ 𝔍X`.
    ComplexType,
    /// `JX ⊥ 𝔍X`.
    PerpType,
}

impl SingularType {
    pub fn name(self) -> &'static str {
        match self {
            SingularType::Regular => "regular",
            SingularType::ComplexType => "complex",
            SingularType::PerpType => "perp",
        }
    }
}

pub fn classify_vector(q: &QuaternionBasis, x: &TangentVector, eps_angle: f64) -> Result<SingularType> {
    let angle = kahler_angle(q, x)?;
    Ok(if angle < eps_angle {
        SingularType::ComplexType
    } else if (angle - FRAC_PI_2).abs() < eps_angle {
        SingularType::PerpType
    } else {
        SingularType::Regular
    })
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
    fn j_matches_adjoint_action() {
        for m in 2..=5 {
            let x = sample(m, m as u64);
            let a = kahler_j(&x);
            let b = kahler_j_adjoint(&x, 1e-9).unwrap();
            assert!((&a - &b).norm() < 1e-14);
            assert!((&kahler_j(&a) + &x).norm() < 1e-15);
            assert!(metric(&x, &a).abs() < 1e-15);
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = QuaternionBasis::canonical();
        assert_eq!(q.relation_residual(), 0.0);
        let x = sample(3, 7);
        let j1j2 = q.apply(0, &q.apply(1, &x));
        assert!((&j1j2 - &q.apply(2, &x)).norm() < 1e-15);
        for nu in 0..3 {
            let jjn = kahler_j(&q.apply(nu, &x));
            let jnj = q.apply(nu, &kahler_j(&x));
            assert!((&jjn - &jnj).norm() < 1e-15);
        }
    }

    #[test]
    fn j1_agrees_with_j_on_e1() {
        let (e1, _) = basis_a(3);
        let q = QuaternionBasis::canonical();
        assert_eq!(q.apply(0, &e1), kahler_j(&e1));
        assert_eq!(jspan(&q, &e1, 1e-12).unwrap().len(), 3);
        assert!(matches!(
            jspan(&q, &TangentVector::zero(3), 1e-12),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn kahler_angle_is_twice_t() {
        let q = QuaternionBasis::canonical();
        for t in [0.0, 0.2, 0.3, FRAC_PI_4] {
            let h = weyl_chamber_vector(4, t).unwrap();
            assert!((kahler_angle(&q, &h).unwrap() - 2.0 * t).abs() < 1e-12);
        }
    }

    #[test]
    fn classification() {
        let q = QuaternionBasis::canonical();
        let c = |t: f64| classify_vector(&q, &weyl_chamber_vector(3, t).unwrap(), 1e-7).unwrap();
        assert_eq!(c(0.0), SingularType::ComplexType);
        assert_eq!(c(FRAC_PI_4), SingularType::PerpType);
        assert_eq!(c(0.3), SingularType::Regular);
    }

    #[test]
    fn adapted_basis_for_rotated_complex_vector() {
        // A ComplexType vector not aligned with e₁: act on e₁ by a unitary
        // 2×2 matrix from the left and by a unitary from the right.
        let m = 3;
        let (e1, _) = basis_a(m);
        let s = 0.6_f64;
        let u = ComplexMatrix::from_rows(&[
            vec![C64::new(s.cos(), 0.0), C64::new(0.0, s.sin())],
            vec![C64::new(0.0, s.sin()), C64::new(s.cos(), 0.0)],
        ]);
        let x = e1.left_mul(&u);
        let q = QuaternionBasis::canonical();
        let (adapted, residual) = q.adapted_to(&x).unwrap();
        assert!(residual < 1e-12);
        assert!(adapted.relation_residual() < 1e-12);
    }
}
