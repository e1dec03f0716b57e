use crate::context::Grassmannian;
use crate::curvature::{involution_split, span_coords};
use crate::error::{Error, Result};
use crate::hypersurface::{build_model_with, HypersurfacePointModel, PrincipalCurvatureTable};
use crate::lie::TangentVector;
use crate::linalg::{complement_in, group_eigenvalues, norm, restrict_operator, symmetric_eig, RealMatrix};
use crate::structures::{classify_vector, SingularType};

/// The `±1` eigenbundles of `φφ₁` on `Q` for a normal with `JN = J₁N`.
#[derive(Debug, Clone)]
pub struct Eigenbundles {
    pub plus: Vec<Vec<f64>>,
    pub minus: Vec<Vec<f64>>,
    /// `‖(φφ₁)² − 1‖` on `Q`.
    pub square_residual: f64,
    /// Trace of `φφ₁` on `Q`.
    pub trace: f64,
}

/// Splits `Q` into the eigenbundles `E₊₁` and `E₋₁` of `φφ₁`, where `J₁` is
/// the structure with `JN = J₁N`.
pub fn phi_phi1_eigenbundles(ctx: &Grassmannian, model: &HypersurfacePointModel) -> Result<Eigenbundles> {
    let q = ctx.quaternions();
    let tol = ctx.tol();
    if classify_vector(q, model.normal(), tol.eps_angle)? != SingularType::ComplexType {
        return Err(Error::WrongSingularType);
    }
    let (adapted, _) = q.adapted_to(model.normal())?;
    let model = build_model_with(model.normal(), adapted, tol)?;
    let m = model.m();
    let s = |v: &[f64]| {
        let x = TangentVector::from_coords(m, v);
        model.phi(&model.phi_nu(0, &x)).coords()
    };
    let mat = restrict_operator(&|v: &Vec<f64>| s(v), &model.q_basis);
    let k = mat.rows();
    let square_residual = (&mat * &mat).max_abs_diff(&RealMatrix::identity(k));
    let trace = (0..k).map(|i| mat[(i, i)]).sum();
    let (plus, minus) = involution_split(&model.q_basis, s, tol.eps_rank);
    Ok(Eigenbundles {
        plus,
        minus,
        square_residual,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub case: SingularType,
    /// Principal curvatures identified by their eigenspaces.
    pub roles: Vec<(String, f64)>,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn role(&self, name: &str) -> Option<f64> {
        self.roles.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

const ROLE_TOL: f64 = 1e-8;

/// Eigenvalue of `A` on the unit vector `v`, or an error if `v` is not an
/// eigenvector.
fn role(a: &RealMatrix, v: &TangentVector, name: &str) -> Result<f64> {
    let c = v.coords();
    let n = norm(&c);
    let c: Vec<f64> = c.iter().map(|x| x / n).collect();
    let av = a.apply(&c);
    let lambda: f64 = av.iter().zip(&c).map(|(x, y)| x * y).sum();
    let resid: Vec<f64> = av.iter().zip(&c).map(|(x, y)| x - lambda * y).collect();
    if norm(&resid) > ROLE_TOL * a.max_abs().max(1.0) {
        return Err(Error::RoleResolutionFailure(format!(
            "{name} is not a principal curvature vector"
        )));
    }
    Ok(lambda)
}

/// Distinct eigenvalues of `A` on an invariant subspace.
fn values_on(ctx: &Grassmannian, a: &RealMatrix, basis: &[Vec<f64>], name: &str) -> Result<Vec<f64>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let restricted = restrict_operator(&|v: &Vec<f64>| a.apply(v), basis);
    let eig = symmetric_eig(&restricted, ctx.tol().eps_resid)?;
    let table = group_eigenvalues(&eig.values, &eig.vectors, ctx.tol().eps_group)
        .map_err(|_| Error::RoleResolutionFailure(name.to_string()))?;
    for v in basis {
        let mut resid = a.apply(v);
        for b in basis {
            let c: f64 = b.iter().zip(&resid).map(|(x, y)| x * y).sum();
            resid.iter_mut().zip(b).for_each(|(r, x)| *r -= c * x);
        }
        if norm(&resid) > ROLE_TOL * a.max_abs().max(1.0) {
            return Err(Error::RoleResolutionFailure(format!("{name} is not invariant")));
        }
    }
    Ok(table.values())
}

/// Evaluates the relations between principal curvatures that hold for a
/// hypersurface with `h(C, C^⊥) = 0` and `h(Q, Q^⊥) = 0` and a normal of the
/// given singular type. Roles are assigned by eigenspace membership.
pub fn identity_suite(
    ctx: &Grassmannian,
    table: &PrincipalCurvatureTable,
    case: SingularType,
) -> Result<IdentityReport> {
    let q = ctx.quaternions();
    let tol = ctx.tol();
    let normal = &table.normal;
    if classify_vector(q, normal, tol.eps_angle)? != case {
        return Err(Error::WrongSingularType);
    }
    let basis = match case {
        SingularType::ComplexType => q.adapted_to(normal)?.0,
        _ => q.clone(),
    };
    let model = build_model_with(normal, basis, tol)?;
    let mut a = table.shape_operator();
    let mut alpha = role(&a, &model.xi, "xi")?;
    if alpha < 0.0 {
        a = a.scaled(-1.0);
        alpha = -alpha;
    }
    let mut roles = vec![("alpha".to_string(), alpha)];
    let mut checks = Vec::new();
    let mut check = |name: &str, residual: f64| {
        checks.push(IdentityCheck {
            name: name.to_string(),
            residual,
        })
    };
    match case {
        SingularType::PerpType => {
            let betas = model
                .xi_nu
                .iter()
                .enumerate()
                .map(|(nu, x)| role(&a, x, &format!("xi_{}", nu + 1)))
                .collect::<Result<Vec<_>>>()?;
            let phi_xi: Vec<TangentVector> = model.xi_nu.iter().map(|x| model.phi(x)).collect();
            let gammas = phi_xi
                .iter()
                .enumerate()
                .map(|(nu, x)| role(&a, x, &format!("phi xi_{}", nu + 1)))
                .collect::<Result<Vec<_>>>()?;
            let beta = betas[0];
            let gamma = gammas[0];
            let mut special = vec![model.xi.clone()];
            special.extend(model.xi_nu.iter().cloned());
            special.extend(phi_xi);
            let rest = complement_in(&model.tm, &span_coords(&special, tol.eps_rank), tol.eps_rank);
            let lambdas = values_on(ctx, &a, &rest, "lambda")?;
            let (l1, l2) = match lambdas.as_slice() {
                [] => (None, None),
                [l] => (Some(*l), Some(*l)),
                [l1, l2] => (Some(*l1), Some(*l2)),
                _ => {
                    return Err(Error::RoleResolutionFailure(format!(
                        "{} principal curvatures on the complement, expected at most 2",
                        lambdas.len()
                    )))
                }
            };
            roles.push(("beta".into(), beta));
            roles.push(("gamma".into(), gamma));
            let spread = |v: &[f64]| v.iter().map(|x| (x - v[0]).abs()).fold(0.0, f64::max);
            check("beta1=beta2=beta3", spread(&betas));
            check("gamma1=gamma2=gamma3", spread(&gammas));
            check("gamma=0", gamma.abs());
            check("alpha*beta=2", (alpha * beta - 2.0).abs());
            if let (Some(l1), Some(l2)) = (l1, l2) {
                roles.push(("lambda1".into(), l1));
                roles.push(("lambda2".into(), l2));
                check("lambda1+lambda2=beta", (l1 + l2 - beta).abs());
                check("lambda1*lambda2=1/2", (l1 * l2 - 0.5).abs());
                let quad = |l: f64| (2.0 * alpha * l * l - 4.0 * l + alpha).abs();
                check("2*alpha*lambda^2-4*lambda+alpha=0", quad(l1).max(quad(l2)));
            }
        }
        SingularType::ComplexType => {
            let b2 = role(&a, &model.xi_nu[1], "xi_2")?;
            let b3 = role(&a, &model.xi_nu[2], "xi_3")?;
            let bundles = phi_phi1_eigenbundles(ctx, &model)?;
            let single = |basis: &[Vec<f64>], name: &str| -> Result<Option<f64>> {
                match values_on(ctx, &a, basis, name)?.as_slice() {
                    [] => Ok(None),
                    [l] => Ok(Some(*l)),
                    _ => Err(Error::RoleResolutionFailure(format!(
                        "{name} carries more than one principal curvature"
                    ))),
                }
            };
            let l1 = single(&bundles.minus, "E-1")?;
            let l2 = single(&bundles.plus, "E+1")?;
            roles.push(("beta2".into(), b2));
            roles.push(("beta3".into(), b3));
            check("beta2=beta3", (b2 - b3).abs());
            check("beta^2-alpha*beta+1=0", (b2 * b2 - alpha * b2 + 1.0).abs());
            check(
                "2*beta2*beta3-alpha*(beta2+beta3)+2=0",
                (2.0 * b2 * b3 - alpha * (b2 + b3) + 2.0).abs(),
            );
            if let Some(l1) = l1 {
                roles.push(("lambda1".into(), l1));
                check("lambda1=1/beta", (l1 - 1.0 / b2).abs());
            }
            if let Some(l2) = l2 {
                roles.push(("lambda2".into(), l2));
                check("lambda2=0", l2.abs());
            }
        }
        SingularType::Regular => return Err(Error::WrongSingularType),
    }
    Ok(IdentityReport { case, roles, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{build_model, horosphere_spectrum};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn horosphere_t0_is_complex_case() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let table = horosphere_spectrum(&ctx, 0.0).unwrap();
        let report = identity_suite(&ctx, &table, SingularType::ComplexType).unwrap();
        assert!(report.max_residual() < 1e-9, "{report:?}");
        assert!((report.role("alpha").unwrap() - 2.0).abs() < 1e-12);
        assert!((report.role("beta2").unwrap() - 1.0).abs() < 1e-12);
        assert!(report.role("lambda2").unwrap().abs() < 1e-12);
    }

    #[test]
    fn horosphere_pi4_is_perp_case() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let table = horosphere_spectrum(&ctx, FRAC_PI_4).unwrap();
        let report = identity_suite(&ctx, &table, SingularType::PerpType).unwrap();
        assert!(report.max_residual() < 1e-9, "{report:?}");
        assert!((report.role("alpha").unwrap() - SQRT_2).abs() < 1e-12);
        assert!(matches!(
            identity_suite(&ctx, &table, SingularType::ComplexType),
            Err(Error::WrongSingularType)
        ));
    }

    #[test]
    fn eigenbundle_ranks() {
        for m in 2..=5 {
            let ctx = Grassmannian::with_defaults(m).unwrap();
            let table = horosphere_spectrum(&ctx, 0.0).unwrap();
            let model = build_model(&ctx, &table.normal).unwrap();
            let b = phi_phi1_eigenbundles(&ctx, &model).unwrap();
            assert_eq!(b.plus.len(), 2 * m - 2);
            assert_eq!(b.minus.len(), 2 * m - 2);
            assert!(b.square_residual < 1e-14);
            assert!(b.trace.abs() < 1e-12);
        }
    }
}
