//! Point models of real hypersurfaces: the structures induced by `J` and the
//! quaternionic structure on `TM = N^⊥`, shape operators of horospheres and
//! tubes, and the relations between their principal curvatures.

mod identities;
mod spectra;

pub use identities::{identity_suite, phi_phi1_eigenbundles, Eigenbundles, IdentityCheck, IdentityReport};
pub use spectra::{
    horosphere_spectrum, ode_residual_check, subbundle_invariance, tube_spectrum, OdeCheck, PrincipalCurvatureTable,
    Side, Subbundle, SurfaceParam, TotallyGeodesicTangentSplit,
};

use crate::context::Grassmannian;
use crate::curvature::{identity_basis, r_bracket, span_coords};
use crate::error::{Error, Result};
use crate::lie::{metric, TangentVector};
use crate::linalg::complement_in;
use crate::structures::{kahler_j, QuaternionBasis};
use crate::tolerance::Tolerances;

/// The hypersurface data at one point with unit normal `N`.
#[derive(Debug, Clone)]
pub struct HypersurfacePointModel {
    normal: TangentVector,
    quaternions: QuaternionBasis,
    /// Orthonormal coordinate basis of `TM = N^⊥`.
    pub tm: Vec<Vec<f64>>,
    /// `ξ = −JN`.
    pub xi: TangentVector,
    /// `ξ_ν = −J_ν N`.
    pub xi_nu: [TangentVector; 3],
    /// Basis of `C = TM ⊖ ℝξ`.
    pub c_basis: Vec<Vec<f64>>,
    /// Basis of `Q = TM ⊖ span{ξ₁, ξ₂, ξ₃}`.
    pub q_basis: Vec<Vec<f64>>,
    /// Basis of `Q^⊥ = span{ξ₁, ξ₂, ξ₃}`.
    pub q_perp: Vec<Vec<f64>>,
}

/// Builds the model for a unit normal with the context's quaternionic basis.
pub fn build_model(ctx: &Grassmannian, normal: &TangentVector) -> Result<HypersurfacePointModel> {
    build_model_with(normal, ctx.quaternions().clone(), ctx.tol())
}

/// Builds the model with an explicit basis of the quaternionic structure.
pub fn build_model_with(
    normal: &TangentVector,
    quaternions: QuaternionBasis,
    tol: &Tolerances,
) -> Result<HypersurfacePointModel> {
    let len = normal.norm();
    if (len - 1.0).abs() > tol.eps_resid {
        return Err(Error::NotUnit(len));
    }
    let m = normal.m();
    let n_coords = span_coords(std::slice::from_ref(normal), tol.eps_rank);
    let tm = complement_in(&identity_basis(4 * m), &n_coords, tol.eps_rank);
    let xi = kahler_j(normal).scaled(-1.0);
    let xi_nu = [0, 1, 2].map(|nu| quaternions.apply(nu, normal).scaled(-1.0));
    let c_basis = complement_in(&tm, &span_coords(std::slice::from_ref(&xi), tol.eps_rank), tol.eps_rank);
    let q_perp = span_coords(&xi_nu, tol.eps_rank);
    let q_basis = complement_in(&tm, &q_perp, tol.eps_rank);
    Ok(HypersurfacePointModel {
        normal: normal.clone(),
        quaternions,
        tm,
        xi,
        xi_nu,
        c_basis,
        q_basis,
        q_perp,
    })
}

impl HypersurfacePointModel {
    pub fn normal(&self) -> &TangentVector {
        &self.normal
    }

    pub fn m(&self) -> usize {
        self.normal.m()
    }

    pub fn quaternions(&self) -> &QuaternionBasis {
        &self.quaternions
    }

    pub fn vector(&self, coords: &[f64]) -> TangentVector {
        TangentVector::from_coords(self.m(), coords)
    }

    /// `X − g(X,N)N`.
    pub fn tangential(&self, x: &TangentVector) -> TangentVector {
        x - &self.normal.scaled(metric(x, &self.normal))
    }

    pub fn eta(&self, x: &TangentVector) -> f64 {
        metric(x, &self.xi)
    }

    pub fn eta_nu(&self, nu: usize, x: &TangentVector) -> f64 {
        metric(x, &self.xi_nu[nu % 3])
    }

    /// `φX = JX − η(X)N`.
    pub fn phi(&self, x: &TangentVector) -> TangentVector {
        &kahler_j(x) - &self.normal.scaled(self.eta(x))
    }

    /// `φ_ν X = J_ν X − η_ν(X)N`.
    pub fn phi_nu(&self, nu: usize, x: &TangentVector) -> TangentVector {
        &self.quaternions.apply(nu, x) - &self.normal.scaled(self.eta_nu(nu, x))
    }

    /// Tangent basis vectors as [`TangentVector`]s.
    pub fn tm_vectors(&self) -> Vec<TangentVector> {
        self.tm.iter().map(|c| self.vector(c)).collect()
    }

    /// Largest `|g(ξ,N)|`, `|g(ξ_ν,N)|`, `|g(φX,N)|` over the tangent basis;
    /// zero when the induced structures are tangent to `M`.
    pub fn tangency_residual(&self) -> f64 {
        let mut r = metric(&self.xi, &self.normal).abs();
        for x in &self.xi_nu {
            r = r.max(metric(x, &self.normal).abs());
        }
        for x in self.tm_vectors() {
            r = r.max(metric(&self.phi(&x), &self.normal).abs());
            for nu in 0..3 {
                r = r.max(metric(&self.phi_nu(nu, &x), &self.normal).abs());
            }
        }
        r
    }

    /// Deviation of the Gram matrix of some vectors from the identity.
    pub fn gram_residual(vectors: &[TangentVector]) -> f64 {
        let mut r: f64 = 0.0;
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((metric(a, b) - target).abs());
            }
        }
        r
    }
}

/// Residuals of the four families of almost contact identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactResiduals {
    /// `φ_{ν+1} ξ_ν = −ξ_{ν+2}`.
    pub phi_next_xi: f64,
    /// `φ_ν ξ_{ν+1} = ξ_{ν+2}`.
    pub phi_xi_next: f64,
    /// `φ ξ_ν = φ_ν ξ`.
    pub phi_xi_nu: f64,
    /// `η_ν(φX) = η(φ_ν X)`.
    pub eta_phi: f64,
}

impl ContactResiduals {
    pub fn max(&self) -> f64 {
        self.phi_next_xi
            .max(self.phi_xi_next)
            .max(self.phi_xi_nu)
            .max(self.eta_phi)
    }
}

pub fn contact_identity_check(model: &HypersurfacePointModel) -> ContactResiduals {
    let xi = &model.xi_nu;
    let mut out = ContactResiduals {
        phi_next_xi: 0.0,
        phi_xi_next: 0.0,
        phi_xi_nu: 0.0,
        eta_phi: 0.0,
    };
    let basis = model.tm_vectors();
    for nu in 0..3 {
        let (n1, n2) = ((nu + 1) % 3, (nu + 2) % 3);
        let a = &model.phi_nu(n1, &xi[nu]) + &xi[n2];
        out.phi_next_xi = out.phi_next_xi.max(a.norm());
        let b = &model.phi_nu(nu, &xi[n1]) - &xi[n2];
        out.phi_xi_next = out.phi_xi_next.max(b.norm());
        let c = &model.phi(&xi[nu]) - &model.phi_nu(nu, &model.xi);
        out.phi_xi_nu = out.phi_xi_nu.max(c.norm());
        for x in &basis {
            let d = model.eta_nu(nu, &model.phi(x)) - model.eta(&model.phi_nu(nu, x));
            out.eta_phi = out.eta_phi.max(d.abs());
        }
    }
    out
}

/// Right-hand side of the Codazzi equation written in terms of the induced
/// structures `φ, ξ, η, φ_ν, ξ_ν, η_ν`.
pub fn codazzi_rhs(model: &HypersurfacePointModel, x: &TangentVector, y: &TangentVector) -> TangentVector {
    let mut acc = TangentVector::zero(model.m());
    let mut add = |c: f64, v: &TangentVector| acc = &acc + &v.scaled(c);
    let (phx, phy) = (model.phi(x), model.phi(y));
    add(model.eta(x), &phy);
    add(-model.eta(y), &phx);
    add(-2.0 * metric(&phx, y), &model.xi);
    for nu in 0..3 {
        let xn = &model.xi_nu[nu];
        add(model.eta_nu(nu, x), &model.phi_nu(nu, y));
        add(-model.eta_nu(nu, y), &model.phi_nu(nu, x));
        add(-2.0 * metric(&model.phi_nu(nu, x), y), xn);
        let (pnx, pny) = (model.phi_nu(nu, x), model.phi_nu(nu, y));
        add(model.eta(&pnx), &model.phi_nu(nu, &phy));
        add(-model.eta(&pny), &model.phi_nu(nu, &phx));
        add(model.eta(x) * model.eta(&pny) - model.eta(y) * model.eta(&pnx), xn);
    }
    acc.scaled(-0.5)
}

/// Tangential part of `R(X,Y)N`.
pub fn codazzi_curvature_term(model: &HypersurfacePointModel, x: &TangentVector, y: &TangentVector) -> TangentVector {
    model.tangential(&r_bracket(x, y, model.normal()))
}

/// Outcome of comparing the Codazzi right-hand side with `R(X,Y)N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodazziCheck {
    /// The sign `ε` with `rhs = ε (R(X,Y)N)^T`, or `0` if it varied.
    pub sign: f64,
    /// Largest `‖rhs − ε (R(X,Y)N)^T‖ / (|X||Y|)`.
    pub residual: f64,
    pub samples: usize,
}

/// Determines `ε` on the given pairs and measures the agreement.
pub fn codazzi_check(model: &HypersurfacePointModel, pairs: &[(TangentVector, TangentVector)]) -> CodazziCheck {
    let mut signs = Vec::new();
    let mut terms = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let (x, y) = (model.tangential(x), model.tangential(y));
        let rhs = codazzi_rhs(model, &x, &y);
        let curv = codazzi_curvature_term(model, &x, &y);
        let c = metric(&rhs, &curv);
        if curv.norm() > 1e-8 * x.norm() * y.norm() {
            signs.push(c.signum());
        }
        terms.push((rhs, curv, x.norm() * y.norm()));
    }
    let sign = match signs.first() {
        Some(&s) if signs.iter().all(|&t| t == s) => s,
        Some(_) => 0.0,
        None => 1.0,
    };
    let residual = terms
        .iter()
        .map(|(rhs, curv, scale)| (rhs - &curv.scaled(sign)).norm() / scale.max(1e-300))
        .fold(0.0, f64::max);
    CodazziCheck {
        sign,
        residual,
        samples: pairs.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Sampler;
    use crate::roots::{basis_a, weyl_chamber_vector};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn dimensions_and_tangency() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        for t in [0.0, 0.3, FRAC_PI_4] {
            let model = build_model(&ctx, &weyl_chamber_vector(3, t).unwrap()).unwrap();
            assert_eq!(model.tm.len(), 11);
            assert_eq!(model.c_basis.len(), 10);
            assert_eq!(model.q_basis.len(), 8);
            assert!(model.tangency_residual() < 1e-14);
        }
        assert!(matches!(
            build_model(&ctx, &basis_a(3).0.scaled(2.0)),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn complex_normal_has_xi_equal_xi1() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let model = build_model(&ctx, &basis_a(3).0).unwrap();
        assert!((&model.xi - &model.xi_nu[0]).norm() < 1e-15);
    }

    #[test]
    fn perp_normal_frame_is_orthonormal() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let model = build_model(&ctx, &weyl_chamber_vector(3, FRAC_PI_4).unwrap()).unwrap();
        let mut frame = vec![model.xi.clone()];
        frame.extend(model.xi_nu.iter().cloned());
        frame.extend(model.xi_nu.iter().map(|x| model.phi(x)));
        assert!(HypersurfacePointModel::gram_residual(&frame) < 1e-14);
    }

    #[test]
    fn contact_identities() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        for t in [0.0, 0.3, FRAC_PI_4] {
            let model = build_model(&ctx, &weyl_chamber_vector(3, t).unwrap()).unwrap();
            assert!(contact_identity_check(&model).max() < 1e-14);
        }
    }

    #[test]
    fn codazzi_sign_is_constant() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let mut s = Sampler::new(3);
        for t in [0.0, 0.3, FRAC_PI_4] {
            let model = build_model(&ctx, &weyl_chamber_vector(3, t).unwrap()).unwrap();
            let pairs: Vec<_> = (0..50).map(|_| (s.tangent(3), s.tangent(3))).collect();
            let check = codazzi_check(&model, &pairs);
            assert_eq!(check.sign, -1.0);
            assert!(check.residual < 1e-12, "{check:?}");
            let x = model.tangential(&s.tangent(3));
            assert!(codazzi_rhs(&model, &x, &x).norm() < 1e-12);
        }
    }
}
