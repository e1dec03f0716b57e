//! The totally geodesic submanifolds `SU(2,m−1)/S(U₂U_{m−1})` and
//! `Sp(1,n)/Sp₁Sp_n` through the base point, as tangent/normal splits of p.

mod tables;

pub use tables::{
    expected_table, subbundle_decomposition, tube_label_check, tube_label_spaces, ClosedForm, DecompositionCheck,
    ExpectedRow, ExpectedTable, LabelMatch, TableComparison,
};

use std::fmt;

use crate::context::Grassmannian;
use crate::curvature::{jacobi_operator, r_bracket, span_coords};
use crate::error::{Error, Result};
use crate::hypersurface::TotallyGeodesicTangentSplit;
use crate::lie::{bracket, cartan_split, inner, theta, AlgebraElement, TangentVector};
use crate::linalg::{dot, max_principal_angle, orthonormalize, projection_residual, ComplexMatrix, VectorSpace, C64};
use crate::rng::Sampler;
use crate::structures::{classify_vector, SingularType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotallyGeodesicModelKind {
    /// `SU(2,m−1)/S(U₂U_{m−1})` inside the space with parameter `m`.
    Su { m: usize },
    /// `Sp(1,n)/Sp₁Sp_n = ℍH^n` inside the space with parameter `m = 2n`.
    Sp { n: usize },
}

impl TotallyGeodesicModelKind {
    pub fn su(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadParams(format!("SU model needs m >= 2, got {m}")));
        }
        Ok(Self::Su { m })
    }

    pub fn sp(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParams(format!("Sp model needs n >= 1, got {n}")));
        }
        Ok(Self::Sp { n })
    }

    /// Parameter `m` of the ambient space.
    pub fn ambient_m(self) -> usize {
        match self {
            Self::Su { m } => m,
            Self::Sp { n } => 2 * n,
        }
    }

    /// `m = 2`, where the submanifold is the rank-one space `SU(2,1)/S(U₂U₁)`.
    pub fn is_degenerate(self) -> bool {
        matches!(self, Self::Su { m: 2 })
    }

    pub fn split(self) -> TotallyGeodesicTangentSplit {
        match self {
            Self::Su { m } => su_split(m),
            Self::Sp { n } => sp_split(n),
        }
    }

    /// Orthonormal basis (for [`inner`]) of the defining subalgebra of g.
    pub fn subalgebra(self) -> Vec<AlgebraElement> {
        match self {
            Self::Su { m } => su_subalgebra(m),
            Self::Sp { n } => sp_subalgebra(n),
        }
    }

    /// Singular type every unit normal is expected to have.
    pub fn normal_type(self) -> SingularType {
        match self {
            Self::Su { .. } => SingularType::ComplexType,
            Self::Sp { .. } => SingularType::PerpType,
        }
    }
}

impl fmt::Display for TotallyGeodesicModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Su { m } => write!(f, "su(m={m})"),
            Self::Sp { n } => write!(f, "sp(n={n})"),
        }
    }
}

pub fn su_submodel(m: usize) -> Result<TotallyGeodesicTangentSplit> {
    Ok(TotallyGeodesicModelKind::su(m)?.split())
}

pub fn sp_submodel(n: usize) -> Result<TotallyGeodesicTangentSplit> {
    Ok(TotallyGeodesicModelKind::sp(n)?.split())
}

fn unit(m: usize, idx: usize) -> Vec<f64> {
    let mut c = vec![0.0; 4 * m];
    c[idx] = 1.0;
    c
}

fn su_split(m: usize) -> TotallyGeodesicTangentSplit {
    let mut tangent = Vec::new();
    let mut normal = Vec::new();
    for i in 0..2 {
        for j in 0..m {
            for part in 0..2 {
                let c = unit(m, 2 * (i * m + j) + part);
                if j + 1 == m {
                    normal.push(c);
                } else {
                    tangent.push(c);
                }
            }
        }
    }
    TotallyGeodesicTangentSplit {
        name: format!("su(m={m})"),
        tangent_basis: tangent,
        normal_basis: normal,
        normal: TangentVector::elementary(m, 0, m - 1, C64::new(1.0, 0.0)),
    }
}

/// Block with rows `[C₁, C₂]` and `[s C̄₂, −s C̄₁]`: `s = 1` gives tangent
/// vectors of the Sp model, and `s = −1` normal ones.
fn sp_block(n: usize, c1: &[C64], c2: &[C64], s: f64) -> TangentVector {
    let mut b = ComplexMatrix::zeros(2, 2 * n);
    for k in 0..n {
        b[(0, k)] = c1[k];
        b[(0, n + k)] = c2[k];
        b[(1, k)] = c2[k].conj() * s;
        b[(1, n + k)] = -c1[k].conj() * s;
    }
    TangentVector::from_block(b).expect("2 x 2n block")
}

fn sp_split(n: usize) -> TotallyGeodesicTangentSplit {
    let side = |s: f64| {
        let mut vecs = Vec::new();
        for which in 0..2 {
            for k in 0..n {
                for z in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
                    let mut c = [vec![C64::new(0.0, 0.0); n], vec![C64::new(0.0, 0.0); n]];
                    c[which][k] = z;
                    vecs.push(sp_block(n, &c[0], &c[1], s));
                }
            }
        }
        span_coords(&vecs, 1e-12)
    };
    let mut e1 = vec![C64::new(0.0, 0.0); n];
    e1[0] = C64::new(1.0, 0.0);
    let zero = vec![C64::new(0.0, 0.0); n];
    let normal = sp_block(n, &e1, &zero, -1.0).normalized().expect("nonzero");
    TotallyGeodesicTangentSplit {
        name: format!("sp(n={n})"),
        tangent_basis: side(1.0),
        normal_basis: side(-1.0),
        normal,
    }
}

fn su_subalgebra(m: usize) -> Vec<AlgebraElement> {
    let size = m + 2;
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let mut out = Vec::new();
    let mut push = |entries: &[(usize, usize, C64)]| {
        let mut x = ComplexMatrix::zeros(size, size);
        for &(r, c, z) in entries {
            x[(r, c)] = z;
        }
        out.push(AlgebraElement::from_matrix_unchecked(x));
    };
    // Indices 0..=m; the last index m+1 is left out.
    for a in 0..=m {
        for b in a + 1..=m {
            if (a < 2) == (b < 2) {
                push(&[(a, b, one), (b, a, -one)]);
                push(&[(a, b, i), (b, a, i)]);
            } else {
                push(&[(a, b, one), (b, a, one)]);
                push(&[(a, b, i), (b, a, -i)]);
            }
        }
    }
    for a in 0..m {
        push(&[(a, a, i), (a + 1, a + 1, -i)]);
    }
    orthonormalize(&out, inner, 1e-12)
}

/// Basis of sp(1,n) in su(2,2n), enumerated through the parameters
/// `x, z, C₁, C₂, B₁, B₂` of
/// `[[ix, z, C₁, C₂], [−z̄, −ix, C̄₂, −C̄₁], [C₁*, C̄₂*, B₁, B₂], [C₂*, −C̄₁*, −B̄₂, B̄₁]]`
/// with `B₁ ∈ u_n` and `B₂` complex symmetric.
fn sp_subalgebra(n: usize) -> Vec<AlgebraElement> {
    let size = 2 * n + 2;
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let (a, b) = (2, 2 + n);
    let mut out = Vec::new();
    let mut push = |x: ComplexMatrix| out.push(AlgebraElement::from_matrix_unchecked(x));

    let mut x = ComplexMatrix::zeros(size, size);
    x[(0, 0)] = i;
    x[(1, 1)] = -i;
    push(x);
    for z in [one, i] {
        let mut x = ComplexMatrix::zeros(size, size);
        x[(0, 1)] = z;
        x[(1, 0)] = -z.conj();
        push(x);
    }
    for which in 0..2 {
        for k in 0..n {
            for z in [one, i] {
                let (c1, c2) = if which == 0 { (z, zero) } else { (zero, z) };
                let mut x = ComplexMatrix::zeros(size, size);
                x[(0, a + k)] = c1;
                x[(0, b + k)] = c2;
                x[(1, a + k)] = c2.conj();
                x[(1, b + k)] = -c1.conj();
                x[(a + k, 0)] = c1.conj();
                x[(b + k, 0)] = c2.conj();
                x[(a + k, 1)] = c2;
                x[(b + k, 1)] = -c1;
                push(x);
            }
        }
    }
    let b_block = |b1: &ComplexMatrix, b2: &ComplexMatrix| {
        let mut x = ComplexMatrix::zeros(size, size);
        for r in 0..n {
            for c in 0..n {
                x[(a + r, a + c)] = b1[(r, c)];
                x[(a + r, b + c)] = b2[(r, c)];
                x[(b + r, a + c)] = -b2[(r, c)].conj();
                x[(b + r, b + c)] = b1[(r, c)].conj();
            }
        }
        x
    };
    let zn = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            let mut variants = Vec::new();
            if r == c {
                let mut d = zn.clone();
                d[(r, r)] = i;
                variants.push(d);
            } else {
                let mut re = zn.clone();
                re[(r, c)] = one;
                re[(c, r)] = -one;
                let mut im = zn.clone();
                im[(r, c)] = i;
                im[(c, r)] = i;
                variants.push(re);
                variants.push(im);
            }
            for v in variants {
                push(b_block(&v, &zn));
            }
        }
    }
    for r in 0..n {
        for c in r..n {
            for z in [one, i] {
                let mut s = zn.clone();
                s[(r, c)] = z;
                s[(c, r)] = z;
                push(b_block(&zn, &s));
            }
        }
    }
    orthonormalize(&out, inner, 1e-12)
}

/// Distance of `x` from the span of an orthonormal basis of g.
fn g_residual(basis: &[AlgebraElement], x: &AlgebraElement) -> f64 {
    let mut r = x.clone();
    for b in basis {
        r.axpy(-inner(b, x), b);
    }
    inner(&r, &r).max(0.0).sqrt()
}

/// Residuals of the total-geodesy checks for a split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotallyGeodesicReport {
    /// Largest distance of `[A, B]` from the subalgebra over basis pairs.
    pub closure: f64,
    /// Largest distance of `θA` from the subalgebra.
    pub theta_invariance: f64,
    /// Principal angle between the p-part of the subalgebra and `T`.
    pub tangent_match: f64,
    /// Largest distance of `[[X, Y], Z]` from `T` over basis triples of `T`.
    pub triple: f64,
    /// Largest distance of `R_N T` from `T` over the sampled normals.
    pub curvature: f64,
    /// Largest violation of `g(T, ν) = 0` and orthonormality.
    pub orthonormality: f64,
    pub normals_sampled: usize,
}

impl TotallyGeodesicReport {
    pub fn max(&self) -> f64 {
        [
            self.closure,
            self.theta_invariance,
            self.tangent_match,
            self.triple,
            self.curvature,
            self.orthonormality,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, eps_resid: f64) -> bool {
        self.max() < eps_resid
    }
}

/// Checks that the subalgebra is closed and θ-invariant with p-part `T`, that
/// `T` is a Lie triple system, and that `R_N` preserves `T` for the split's
/// normal and `samples` further random unit normals.
pub fn verify_totally_geodesic(
    ctx: &Grassmannian,
    split: &TotallyGeodesicTangentSplit,
    subalgebra: &[AlgebraElement],
    sampler: &mut Sampler,
    samples: usize,
) -> Result<TotallyGeodesicReport> {
    let m = split.m();
    let mut closure: f64 = 0.0;
    let mut theta_invariance: f64 = 0.0;
    for (k, x) in subalgebra.iter().enumerate() {
        theta_invariance = theta_invariance.max(g_residual(subalgebra, &theta(x)));
        for y in &subalgebra[k + 1..] {
            closure = closure.max(g_residual(subalgebra, &bracket(x, y)?));
        }
    }
    let p_parts: Vec<Vec<f64>> = subalgebra
        .iter()
        .map(|x| {
            let p = cartan_split(x).1;
            TangentVector::from_block(p.matrix().block(0, 2, 2, m)).map(|v| v.coords())
        })
        .collect::<Result<_>>()?;
    let p_span = orthonormalize(&p_parts, |a: &Vec<f64>, b: &Vec<f64>| dot(a, b), 1e-10);
    let tangent_match = max_principal_angle(&p_span, &split.tangent_basis);

    let t: Vec<TangentVector> = split
        .tangent_basis
        .iter()
        .map(|c| TangentVector::from_coords(m, c))
        .collect();
    let mut triple: f64 = 0.0;
    for (a, x) in t.iter().enumerate() {
        for y in &t[a + 1..] {
            for z in &t {
                let v = r_bracket(x, y, z).coords();
                triple = triple.max(projection_residual(&split.tangent_basis, &v));
            }
        }
    }

    let mut normals = vec![split.normal.clone()];
    for _ in 0..samples {
        normals.push(TangentVector::from_coords(m, &sampler.unit_in(&split.normal_basis)));
    }
    let mut curvature: f64 = 0.0;
    for n in &normals {
        let rn = jacobi_operator(ctx, n)?;
        for v in &split.tangent_basis {
            curvature = curvature.max(projection_residual(&split.tangent_basis, &rn.apply(v)));
        }
    }
    Ok(TotallyGeodesicReport {
        closure,
        theta_invariance,
        tangent_match,
        triple,
        curvature,
        orthonormality: split.orthonormality_residual(),
        normals_sampled: normals.len(),
    })
}

/// The split with its first tangent vector rotated by `angle` toward a normal
/// direction orthogonal to `N`. For `angle ≠ 0` the tangent space is no longer
/// a Lie triple system.
pub fn tilted_split(
    split: &TotallyGeodesicTangentSplit,
    angle: f64,
    eps_rank: f64,
) -> Result<TotallyGeodesicTangentSplit> {
    let nu = split.normal_complement(eps_rank);
    let (Some(t0), Some(n0)) = (split.tangent_basis.first(), nu.first()) else {
        return Err(Error::BadParams("split has no room to tilt".into()));
    };
    let (c, s) = (angle.cos(), angle.sin());
    let t_new: Vec<f64> = t0.iter().zip(n0).map(|(a, b)| c * a + s * b).collect();
    let n_new: Vec<f64> = t0.iter().zip(n0).map(|(a, b)| -s * a + c * b).collect();
    let mut tangent = split.tangent_basis.clone();
    tangent[0] = t_new;
    let mut normal = vec![split.normal.coords(), n_new];
    normal.extend(nu[1..].iter().cloned());
    Ok(TotallyGeodesicTangentSplit {
        name: format!("{} tilted by {angle}", split.name),
        tangent_basis: tangent,
        normal_basis: normal,
        normal: split.normal.clone(),
    })
}

/// Singular types of the split's normal and of `samples` random unit normals.
pub fn normal_types(
    ctx: &Grassmannian,
    split: &TotallyGeodesicTangentSplit,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<Vec<SingularType>> {
    let m = split.m();
    let mut out = vec![classify_vector(ctx.quaternions(), &split.normal, ctx.tol().eps_angle)?];
    for _ in 0..samples {
        let n = TangentVector::from_coords(m, &sampler.unit_in(&split.normal_basis));
        out.push(classify_vector(ctx.quaternions(), &n, ctx.tol().eps_angle)?);
    }
    Ok(out)
}

/// Largest deviation between the tube spectrum for the split's normal and
/// those for `samples` random unit normals, compared as sorted multisets.
pub fn normal_independence(
    ctx: &Grassmannian,
    split: &TotallyGeodesicTangentSplit,
    r: f64,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<f64> {
    let m = split.m();
    let base = crate::hypersurface::tube_spectrum(ctx, split, r)?.spectrum.multiset();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let n = TangentVector::from_coords(m, &sampler.unit_in(&split.normal_basis));
        let other = crate::hypersurface::tube_spectrum(ctx, &split.with_normal(n)?, r)?
            .spectrum
            .multiset();
        if other.len() != base.len() {
            return Ok(f64::INFINITY);
        }
        for (a, b) in base.iter().zip(&other) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::AlgebraElement;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn split_dimensions() {
        for m in 2..=4 {
            let s = su_submodel(m).unwrap();
            assert_eq!(s.tangent_basis.len(), 4 * m - 4);
            assert_eq!(s.normal_basis.len(), 4);
            assert!(s.orthonormality_residual() < 1e-15);
        }
        for n in 1..=3 {
            let s = sp_submodel(n).unwrap();
            assert_eq!(s.tangent_basis.len(), 4 * n);
            assert_eq!(s.normal_basis.len(), 4 * n);
            assert!(s.orthonormality_residual() < 1e-15);
            assert!((s.normal.norm() - 1.0).abs() < 1e-15);
        }
        assert!(su_submodel(1).is_err());
        assert!(sp_submodel(0).is_err());
    }

    #[test]
    fn subalgebras_are_members_of_the_right_dimension() {
        for m in 2..=4 {
            let basis = su_subalgebra(m);
            assert_eq!(basis.len(), (m + 1) * (m + 1) - 1);
            for x in &basis {
                assert!(AlgebraElement::new(x.matrix().clone(), 1e-12).is_ok());
            }
        }
        for n in 1..=2 {
            let basis = sp_subalgebra(n);
            assert_eq!(basis.len(), (n + 1) * (2 * n + 3));
            for x in &basis {
                assert!(AlgebraElement::new(x.matrix().clone(), 1e-12).is_ok());
            }
        }
    }

    #[test]
    fn models_are_totally_geodesic() {
        let mut s = Sampler::new(11);
        for kind in [
            TotallyGeodesicModelKind::Su { m: 4 },
            TotallyGeodesicModelKind::Sp { n: 2 },
        ] {
            let ctx = Grassmannian::with_defaults(kind.ambient_m()).unwrap();
            let report = verify_totally_geodesic(&ctx, &kind.split(), &kind.subalgebra(), &mut s, 4).unwrap();
            assert!(report.passes(1e-12), "{kind}: {report:?}");
        }
    }

    #[test]
    fn tilted_split_fails_triple_check() {
        let kind = TotallyGeodesicModelKind::Su { m: 3 };
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let tilted = tilted_split(&kind.split(), FRAC_PI_4, 1e-10).unwrap();
        assert!(tilted.orthonormality_residual() < 1e-15);
        let report = verify_totally_geodesic(&ctx, &tilted, &kind.subalgebra(), &mut Sampler::new(1), 2).unwrap();
        assert!(report.triple > 0.1, "{report:?}");
    }

    #[test]
    fn normals_have_the_expected_type() {
        let mut s = Sampler::new(5);
        for kind in [
            TotallyGeodesicModelKind::Su { m: 3 },
            TotallyGeodesicModelKind::Sp { n: 2 },
        ] {
            let ctx = Grassmannian::with_defaults(kind.ambient_m()).unwrap();
            let types = normal_types(&ctx, &kind.split(), &mut s, 16).unwrap();
            assert!(types.iter().all(|&t| t == kind.normal_type()), "{kind}: {types:?}");
        }
    }
}
