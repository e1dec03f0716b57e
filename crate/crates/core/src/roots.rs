//! Maximal abelian subspace, restricted roots of type BC₂, the Weyl chamber
//! parametrization `H_t` and the Iwasawa spectrum of `ad(H_t)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{
    block_of, cartan_split, embed_block, inner, metric, theta, AlgebraElement, CartanDecomposition, GrassmannParameter,
    TangentVector,
};
use crate::linalg::{
    group_eigenvalues, operator_matrix, orthonormalize, simultaneous_eig, symmetric_eig, SpectralTable, C64,
};
use crate::tolerance::Tolerances;

/// Angle of the generic chamber vector used to separate root spaces.
pub const GENERIC_ANGLE: f64 = 0.2;

/// A restricted root given by its values `(λ(e₁), λ(e₂))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    pub a: i32,
    pub b: i32,
}

impl RootVector {
    pub const fn new(a: i32, b: i32) -> Self {
        Self { a, b }
    }

    pub fn coords(self) -> (f64, f64) {
        (self.a as f64, self.b as f64)
    }

    /// `λ(H) = λ(e₁) g(H, e₁) + λ(e₂) g(H, e₂)`.
    pub fn eval(self, h: &TangentVector) -> f64 {
        let (e1, e2) = basis_a(h.m());
        self.a as f64 * metric(h, &e1) + self.b as f64 * metric(h, &e2)
    }

    /// Whether the pair lies in `{±ε₁±ε₂, ±ε_i, ±2ε_i}`.
    pub fn is_bc2(self) -> bool {
        matches!((self.a.abs(), self.b.abs()), (1, 1) | (1, 0) | (0, 1) | (2, 0) | (0, 2))
    }

    /// Positive with respect to the chamber containing `H_t`, `0 < t < π/4`.
    pub fn is_positive(self) -> bool {
        self.a > 0 || (self.a == 0 && self.b > 0)
    }

    pub fn negate(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i32, name: &str| match c {
            0 => String::new(),
            1 => name.to_string(),
            -1 => format!("-{name}"),
            c => format!("{c}{name}"),
        };
        let (x, y) = (term(self.a, "e1"), term(self.b, "e2"));
        match (x.is_empty(), y.is_empty()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{x}"),
            (true, false) => write!(f, "{y}"),
            (false, false) if y.starts_with('-') => write!(f, "{x}{y}"),
            (false, false) => write!(f, "{x}+{y}"),
        }
    }
}

/// The six positive roots of BC₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositiveRoot {
    E1MinusE2,
    E1PlusE2,
    E1,
    E2,
    TwoE1,
    TwoE2,
}

impl PositiveRoot {
    pub const ALL: [PositiveRoot; 6] = [
        PositiveRoot::E1MinusE2,
        PositiveRoot::E1PlusE2,
        PositiveRoot::E1,
        PositiveRoot::E2,
        PositiveRoot::TwoE1,
        PositiveRoot::TwoE2,
    ];

    pub fn root(self) -> RootVector {
        match self {
            PositiveRoot::E1MinusE2 => RootVector::new(1, -1),
            PositiveRoot::E1PlusE2 => RootVector::new(1, 1),
            PositiveRoot::E1 => RootVector::new(1, 0),
            PositiveRoot::E2 => RootVector::new(0, 1),
            PositiveRoot::TwoE1 => RootVector::new(2, 0),
            PositiveRoot::TwoE2 => RootVector::new(0, 2),
        }
    }

    pub fn from_root(r: RootVector) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.root() == r)
    }

    pub fn expected_multiplicity(self, m: usize) -> usize {
        match self {
            PositiveRoot::E1MinusE2 | PositiveRoot::E1PlusE2 => 2,
            PositiveRoot::E1 | PositiveRoot::E2 => 2 * m - 4,
            PositiveRoot::TwoE1 | PositiveRoot::TwoE2 => 1,
        }
    }

    pub fn label(self) -> String {
        self.root().to_string()
    }
}

impl std::str::FromStr for PositiveRoot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Self::ALL
            .into_iter()
            .find(|p| p.label() == key)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// One positive restricted root with its spaces in g and in p.
#[derive(Debug, Clone)]
pub struct RootSpace {
    pub root: RootVector,
    pub multiplicity: usize,
    /// Orthonormal basis of `g_λ` for the product `−½ Re tr(X θY)`.
    pub g_basis: Vec<AlgebraElement>,
    /// Orthonormal basis of `p_λ = (1 − θ) g_λ`.
    pub p_basis: Vec<TangentVector>,
}

#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub m: usize,
    /// Positive roots in the order of [`PositiveRoot::ALL`].
    pub roots: Vec<RootSpace>,
    /// `(e₁, e₂)`.
    pub zero_space: [TangentVector; 2],
    /// Dimension of the centralizer `k₀` of `a` in `k`.
    pub k0_dim: usize,
    /// Largest joint-eigenvector residual of `ad(e₁), ad(e₂)` on g.
    pub residual: f64,
}

impl RootSystemData {
    pub fn space(&self, root: PositiveRoot) -> &RootSpace {
        self.roots
            .iter()
            .find(|s| s.root == root.root())
            .expect("every positive root is present")
    }

    /// Largest `‖ad(e_i)² Y − λ(e_i)² Y‖` over `Y` in the p-bases.
    pub fn p_residual(&self) -> f64 {
        let [e1, e2] = &self.zero_space;
        let (x1, x2) = (embed_block(e1), embed_block(e2));
        let mut r: f64 = 0.0;
        for space in &self.roots {
            let (a, b) = space.root.coords();
            for y in &space.p_basis {
                let yy = embed_block(y);
                for (x, l) in [(&x1, a), (&x2, b)] {
                    let once = x.matrix().commutator(yy.matrix());
                    let twice = x.matrix().commutator(&once);
                    let diff = &twice - &yy.matrix().scale(l * l);
                    r = r.max(diff.frobenius_norm());
                }
            }
        }
        r
    }

    pub fn dim_p_total(&self) -> usize {
        2 + self.roots.iter().map(|s| s.p_basis.len()).sum::<usize>()
    }
}

/// The basis `e₁, e₂` of `a`: blocks `Δ(1,0)` and `Δ(0,1)` in the first two
/// columns.
pub fn basis_a(m: usize) -> (TangentVector, TangentVector) {
    let one = C64::new(1.0, 0.0);
    (
        TangentVector::elementary(m, 0, 0, one),
        TangentVector::elementary(m, 1, 1, one),
    )
}

/// Restricted root space decomposition by simultaneous diagonalization of
/// `ad(e₁), ad(e₂)` on g.
pub fn restricted_root_decomposition(
    param: GrassmannParameter,
    cartan: &CartanDecomposition,
    tol: &Tolerances,
) -> Result<RootSystemData> {
    let m = param.m();
    let (e1, e2) = basis_a(m);
    let g_basis = cartan.g_basis();
    let ad = |h: &TangentVector| {
        let x = embed_block(h);
        operator_matrix(
            |y: &AlgebraElement| AlgebraElement::from_matrix_unchecked(x.matrix().commutator(y.matrix())),
            &g_basis,
            inner,
        )
    };
    let ops = [ad(&e1), ad(&e2)];
    let weights = [GENERIC_ANGLE.cos(), GENERIC_ANGLE.sin()];
    let groups = simultaneous_eig(&ops, &weights, tol.eps_group, tol.eps_resid)?;

    let lift = |coeffs: &[f64]| {
        let mut x = AlgebraElement::zeros(param.size());
        for (b, &c) in g_basis.iter().zip(coeffs) {
            crate::linalg::VectorSpace::axpy(&mut x, c, b);
        }
        x
    };

    let mut residual: f64 = 0.0;
    let mut k0_dim = 0;
    let mut positive: Vec<(RootVector, Vec<AlgebraElement>)> = Vec::new();
    for group in &groups {
        residual = residual.max(group.residual);
        let snap = |v: f64| {
            let r = v.round();
            ((v - r).abs() <= tol.eps_group).then_some(r as i32)
        };
        let (a, b) = match (snap(group.values[0]), snap(group.values[1])) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::UnexpectedRoot(group.values[0], group.values[1])),
        };
        let root = RootVector::new(a, b);
        let elements: Vec<AlgebraElement> = group.basis.iter().map(|c| lift(c)).collect();
        if a == 0 && b == 0 {
            let k_parts: Vec<AlgebraElement> = elements.iter().map(|x| cartan_split(x).0).collect();
            k0_dim = orthonormalize(&k_parts, inner, tol.eps_rank).len();
            continue;
        }
        if !root.is_bc2() {
            return Err(Error::UnexpectedRoot(group.values[0], group.values[1]));
        }
        if root.is_positive() {
            match positive.iter_mut().find(|(r, _)| *r == root) {
                Some((_, v)) => v.extend(elements),
                None => positive.push((root, elements)),
            }
        }
    }

    let mut roots = Vec::with_capacity(6);
    for p in PositiveRoot::ALL {
        let g_space = positive
            .iter()
            .find(|(r, _)| *r == p.root())
            .map(|(_, v)| v.clone())
            .unwrap_or_default();
        let expected = p.expected_multiplicity(m);
        let p_parts: Vec<AlgebraElement> = g_space.iter().map(|x| cartan_split(x).1).collect();
        let p_parts = orthonormalize(&p_parts, inner, tol.eps_rank);
        if g_space.len() != expected || p_parts.len() != expected {
            return Err(Error::MultiplicityMismatch {
                root: p.label(),
                expected,
                found: g_space.len().min(p_parts.len()),
            });
        }
        let p_basis = p_parts
            .iter()
            .map(|x| block_of(x, tol.eps_resid))
            .collect::<Result<Vec<_>>>()?;
        roots.push(RootSpace {
            root: p.root(),
            multiplicity: expected,
            g_basis: g_space,
            p_basis,
        });
    }

    Ok(RootSystemData {
        m,
        roots,
        zero_space: [e1, e2],
        k0_dim,
        residual,
    })
}

/// The hard-coded bases of the root spaces `p_λ`, normalized for g.
pub fn explicit_root_space(root: PositiveRoot, m: usize) -> Vec<TangentVector> {
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let entry = |r: usize, c: usize, z: C64| TangentVector::elementary(m, r, c, z);
    let pair = |z01: C64, z10: C64| {
        let mut v = entry(0, 1, z01 * FRAC_1_SQRT_2);
        v = &v + &entry(1, 0, z10 * FRAC_1_SQRT_2);
        v
    };
    match root {
        PositiveRoot::E1 | PositiveRoot::E2 => {
            let row = if root == PositiveRoot::E1 { 0 } else { 1 };
            (2..m).flat_map(|c| [entry(row, c, one), entry(row, c, i)]).collect()
        }
        PositiveRoot::TwoE1 => vec![entry(0, 0, i)],
        PositiveRoot::TwoE2 => vec![entry(1, 1, i)],
        PositiveRoot::E1MinusE2 => vec![pair(one, one), pair(i, -i)],
        PositiveRoot::E1PlusE2 => vec![pair(-one, one), pair(-i, -i)],
    }
}

/// `H_t = cos t e₁ + sin t e₂` for `t ∈ [0, π/4]`.
pub fn weyl_chamber_vector(m: usize, t: f64) -> Result<TangentVector> {
    if !(0.0..=FRAC_PI_4 + 1e-12).contains(&t) {
        return Err(Error::OutOfChamber(t));
    }
    let (e1, e2) = basis_a(m);
    Ok(&e1.scaled(t.cos()) + &e2.scaled(t.sin()))
}

/// `H_λ = λ(e₁) e₁ + λ(e₂) e₂`.
pub fn dual_root_vector(root: RootVector, m: usize) -> TangentVector {
    let (e1, e2) = basis_a(m);
    let (a, b) = root.coords();
    &e1.scaled(a) + &e2.scaled(b)
}

/// Spectrum of `ad(H_t)` on `s_H = (a ⊖ ℝH_t) ⊕ n`.
///
/// Eigenvectors are given in coordinates of the orthonormal basis made of the
/// unit vector of `a ⊖ ℝH_t` followed by the `g_λ` bases of the positive
/// roots in the order of [`PositiveRoot::ALL`].
pub fn iwasawa_spectrum(roots: &RootSystemData, t: f64, tol: &Tolerances) -> Result<SpectralTable> {
    let m = roots.m;
    let h = embed_block(&weyl_chamber_vector(m, t)?);
    let (e1, e2) = basis_a(m);
    let perp = embed_block(&(&e1.scaled(-t.sin()) + &e2.scaled(t.cos())));
    let mut basis = vec![perp];
    for space in &roots.roots {
        basis.extend(space.g_basis.iter().cloned());
    }
    let ad_h = |y: &AlgebraElement| AlgebraElement::from_matrix_unchecked(h.matrix().commutator(y.matrix()));
    let mat = operator_matrix(ad_h, &basis, inner);
    let eig = symmetric_eig(&mat, tol.eps_resid)?;
    group_eigenvalues(&eig.values, &eig.vectors, tol.eps_group)
}

/// `θ` maps `g_λ` onto `g_{−λ}`; returns the rank of `(1 − θ)/2` on `g_λ`
/// for each positive root, which must equal its multiplicity.
pub fn p_projection_ranks(roots: &RootSystemData, eps_rank: f64) -> Vec<usize> {
    roots
        .roots
        .iter()
        .map(|s| {
            let parts: Vec<AlgebraElement> = s
                .g_basis
                .iter()
                .map(|x| {
                    let mut d = x - &theta(x);
                    crate::linalg::VectorSpace::scale(&mut d, 0.5);
                    d
                })
                .collect();
            orthonormalize(&parts, inner, eps_rank).len()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_principal_angle;

    fn system(m: usize) -> RootSystemData {
        let param = GrassmannParameter::new(m).unwrap();
        let tol = Tolerances::default();
        let cd = CartanDecomposition::new(param, tol.eps_rank);
        restricted_root_decomposition(param, &cd, &tol).unwrap()
    }

    #[test]
    fn a_is_orthonormal_and_abelian() {
        let (e1, e2) = basis_a(3);
        assert_eq!(metric(&e1, &e1), 1.0);
        assert_eq!(metric(&e1, &e2), 0.0);
        let c = embed_block(&e1).matrix().commutator(embed_block(&e2).matrix());
        assert_eq!(c.max_abs(), 0.0);
    }

    #[test]
    fn multiplicities_at_m3() {
        let rs = system(3);
        let mults: Vec<usize> = rs.roots.iter().map(|s| s.multiplicity).collect();
        assert_eq!(mults, vec![2, 2, 2, 2, 1, 1]);
        assert_eq!(rs.dim_p_total(), 12);
        assert_eq!(rs.k0_dim, 2);
        assert!(rs.residual < 1e-9);
        assert!(rs.p_residual() < 1e-9);
    }

    #[test]
    fn m2_has_empty_short_root_spaces() {
        let rs = system(2);
        assert!(rs.space(PositiveRoot::E1).p_basis.is_empty());
        assert!(rs.space(PositiveRoot::E2).p_basis.is_empty());
        assert!(explicit_root_space(PositiveRoot::E1, 2).is_empty());
    }

    #[test]
    fn explicit_spaces_match_computed() {
        let rs = system(4);
        for p in PositiveRoot::ALL {
            let to_coords = |v: &[TangentVector]| v.iter().map(TangentVector::coords).collect::<Vec<_>>();
            let computed = to_coords(&rs.space(p).p_basis);
            let explicit = to_coords(&explicit_root_space(p, 4));
            assert!(max_principal_angle(&computed, &explicit) < 1e-8, "{p:?}");
        }
    }

    #[test]
    fn chamber_vectors() {
        let h = weyl_chamber_vector(3, FRAC_PI_4).unwrap();
        let (e1, e2) = basis_a(3);
        assert!((metric(&h, &e1) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((metric(&h, &e2) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(weyl_chamber_vector(3, 1.0), Err(Error::OutOfChamber(_))));
        let t: f64 = 0.3;
        let ht = weyl_chamber_vector(3, t).unwrap();
        let d = dual_root_vector(RootVector::new(1, 1), 3);
        assert!((metric(&d, &ht) - (t.cos() + t.sin())).abs() < 1e-15);
    }

    #[test]
    fn labels_roundtrip() {
        for p in PositiveRoot::ALL {
            assert_eq!(p.label().parse::<PositiveRoot>().unwrap(), p);
        }
        assert_eq!(RootVector::new(1, -1).to_string(), "e1-e2");
        assert!("3e1".parse::<PositiveRoot>().is_err());
    }

    #[test]
    fn iwasawa_generic_t() {
        let rs = system(3);
        let t: f64 = 0.3;
        let table = iwasawa_spectrum(&rs, t, &Tolerances::default()).unwrap();
        let mut expected = vec![
            0.0,
            2.0 * t.cos(),
            2.0 * t.sin(),
            t.cos() - t.sin(),
            t.cos() - t.sin(),
            t.cos() + t.sin(),
            t.cos() + t.sin(),
            t.cos(),
            t.cos(),
            t.sin(),
            t.sin(),
        ];
        expected.sort_by(f64::total_cmp);
        let got = table.multiset();
        assert_eq!(got.len(), expected.len());
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).abs() < 1e-9);
        }
    }

    #[test]
    fn theta_pairs_root_spaces() {
        let rs = system(3);
        let ranks = p_projection_ranks(&rs, 1e-10);
        let mults: Vec<usize> = rs.roots.iter().map(|s| s.multiplicity).collect();
        assert_eq!(ranks, mults);
    }
}
