use std::fmt;

use crate::context::Grassmannian;
use crate::curvature::{identity_basis, jacobi_operator, jacobi_spectrum_on, span_coords};
use crate::error::{Error, Result};
use crate::hypersurface::HypersurfacePointModel;
use crate::lie::TangentVector;
use crate::linalg::{
    complement_in, dot, group_eigenvalues, norm, project_onto, projection_residual, restrict_operator, symmetric_eig,
    RealMatrix, SpectralTable,
};
use crate::roots::{basis_a, explicit_root_space, weyl_chamber_vector, PositiveRoot};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceParam {
    Horosphere { t: f64 },
    Tube { r: f64 },
}

impl fmt::Display for SurfaceParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceParam::Horosphere { t } => write!(f, "t={t}"),
            SurfaceParam::Tube { r } => write!(f, "r={r}"),
        }
    }
}

/// Which side of a tangent/normal split an eigendirection comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Tangent,
    Normal,
}

/// Principal curvatures of a model hypersurface with eigenspaces in
/// coordinates of p and one label per eigenvalue group.
#[derive(Debug, Clone)]
pub struct PrincipalCurvatureTable {
    pub spectrum: SpectralTable,
    pub labels: Vec<String>,
    pub param: SurfaceParam,
    pub model: String,
    pub normal: TangentVector,
}

impl PrincipalCurvatureTable {
    pub fn values(&self) -> Vec<f64> {
        self.spectrum.values()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.spectrum.multiplicities()
    }

    /// The shape operator `Σ λ_i P_i` on p; it vanishes on the normal.
    pub fn shape_operator(&self) -> RealMatrix {
        self.spectrum.assemble(4 * self.normal.m())
    }
}

/// Tangent and normal spaces of a totally geodesic submanifold through the
/// base point, with a chosen unit normal.
#[derive(Debug, Clone)]
pub struct TotallyGeodesicTangentSplit {
    pub name: String,
    pub tangent_basis: Vec<Vec<f64>>,
    pub normal_basis: Vec<Vec<f64>>,
    pub normal: TangentVector,
}

impl TotallyGeodesicTangentSplit {
    pub fn m(&self) -> usize {
        self.normal.m()
    }

    /// The same split with another unit normal from the normal space.
    pub fn with_normal(&self, normal: TangentVector) -> Result<Self> {
        let n = normal.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::NotUnit(n));
        }
        let off = projection_residual(&self.normal_basis, &normal.coords());
        if off > 1e-9 {
            return Err(Error::BasisMismatch(off));
        }
        Ok(Self { normal, ..self.clone() })
    }

    /// Orthonormal basis of `ν ⊖ ℝN`.
    pub fn normal_complement(&self, eps_rank: f64) -> Vec<Vec<f64>> {
        let n = span_coords(std::slice::from_ref(&self.normal), eps_rank);
        complement_in(&self.normal_basis, &n, eps_rank)
    }

    /// Largest deviation from orthonormality of the joint basis.
    pub fn orthonormality_residual(&self) -> f64 {
        let all: Vec<&Vec<f64>> = self.tangent_basis.iter().chain(&self.normal_basis).collect();
        let mut r: f64 = 0.0;
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((dot(a, b) - target).abs());
            }
        }
        r
    }
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64]) -> Vec<f64> {
    let mut v = vec![0.0; basis.first().map_or(0, Vec::len)];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * bi;
        }
    }
    v
}

/// `c` with `−c²` the eigenvalue of the Jacobi operator.
fn rate(v: f64) -> f64 {
    (-v).max(0.0).sqrt()
}

/// Principal curvatures of the horosphere with unit normal `H_t`, from the
/// square root of `−R_{H_t}` on `H_t^⊥`.
pub fn horosphere_spectrum(ctx: &Grassmannian, t: f64) -> Result<PrincipalCurvatureTable> {
    let m = ctx.m();
    let tol = ctx.tol();
    let h = weyl_chamber_vector(m, t)?;
    let tm = complement_in(
        &identity_basis(4 * m),
        &span_coords(std::slice::from_ref(&h), tol.eps_rank),
        tol.eps_rank,
    );
    let jac = jacobi_spectrum_on(ctx, &h, &tm)?;
    let mut values = Vec::new();
    let mut vectors = Vec::new();
    for g in jac.groups.iter().rev() {
        for v in &g.basis {
            values.push(rate(g.value));
            vectors.push(v.clone());
        }
    }
    let spectrum = group_eigenvalues(&values, &vectors, tol.eps_group)?;

    let (e1, e2) = basis_a(m);
    let perp = &e1.scaled(-t.sin()) + &e2.scaled(t.cos());
    let mut candidates: Vec<(String, Vec<Vec<f64>>)> = vec![("a-RH".into(), vec![perp.coords()])];
    for p in PositiveRoot::ALL {
        let space: Vec<Vec<f64>> = explicit_root_space(p, m).iter().map(TangentVector::coords).collect();
        if !space.is_empty() {
            candidates.push((format!("p[{}]", p.label()), space));
        }
    }
    let labels = spectrum
        .groups
        .iter()
        .map(|g| {
            candidates
                .iter()
                .filter(|(_, s)| s.iter().all(|v| projection_residual(&g.basis, v) < 1e-8))
                .map(|(name, _)| name.as_str())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    Ok(PrincipalCurvatureTable {
        spectrum,
        labels,
        param: SurfaceParam::Horosphere { t },
        model: "horosphere".into(),
        normal: h,
    })
}

/// Eigen-decomposition of `R_N` on one side of the split: `(eigenvalue,
/// ambient eigenvector)` pairs.
fn side_spectrum(rn: &RealMatrix, basis: &[Vec<f64>], eps_resid: f64) -> Result<Vec<(f64, Vec<f64>)>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let restricted = restrict_operator(&|v: &Vec<f64>| rn.apply(v), basis);
    let eig = symmetric_eig(&restricted, eps_resid)?;
    Ok(eig
        .values
        .into_iter()
        .zip(eig.vectors.iter().map(|c| combine(basis, c)))
        .collect())
}

fn check_split(ctx: &Grassmannian, split: &TotallyGeodesicTangentSplit) -> Result<(RealMatrix, Vec<Vec<f64>>)> {
    let rn = jacobi_operator(ctx, &split.normal)?;
    let scale = rn.max_abs().max(1.0);
    let mut mixing: f64 = 0.0;
    for v in &split.tangent_basis {
        mixing = mixing.max(projection_residual(&split.tangent_basis, &rn.apply(v)));
    }
    if mixing > ctx.tol().eps_resid * scale {
        return Err(Error::SplitNotInvariant(mixing));
    }
    let nu = split.normal_complement(ctx.tol().eps_rank);
    Ok((rn, nu))
}

/// Principal curvatures of the tube of radius `r` around the totally
/// geodesic submanifold, with respect to the outward normal.
///
/// Eigenvalues `−c²` of `R_N` give `c tanh(cr)` on tangent directions and
/// `c coth(cr)` on normal ones. Parallel transport along the normal geodesic
/// is the identity in this model, so eigenvectors are reported in p.
pub fn tube_spectrum(
    ctx: &Grassmannian,
    split: &TotallyGeodesicTangentSplit,
    r: f64,
) -> Result<PrincipalCurvatureTable> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::BadParams(format!("tube radius must be positive, got {r}")));
    }
    let tol = ctx.tol();
    let (rn, nu) = check_split(ctx, split)?;
    let mut entries: Vec<(f64, Vec<f64>, Side)> = Vec::new();
    for (v, vec) in side_spectrum(&rn, &split.tangent_basis, tol.eps_resid)? {
        let c = rate(v);
        entries.push((c * (c * r).tanh(), vec, Side::Tangent));
    }
    for (v, vec) in side_spectrum(&rn, &nu, tol.eps_resid)? {
        let c = rate(v);
        if c < tol.eps_group {
            return Err(Error::NormalKernel);
        }
        entries.push((c / (c * r).tanh(), vec, Side::Normal));
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    let values: Vec<f64> = entries.iter().map(|e| e.0).collect();
    let vectors: Vec<Vec<f64>> = entries.iter().map(|e| e.1.clone()).collect();
    let spectrum = group_eigenvalues(&values, &vectors, tol.eps_group)?;

    let mut labels = Vec::new();
    let mut k = 0;
    for g in &spectrum.groups {
        let sides = &entries[k..k + g.multiplicity()];
        k += g.multiplicity();
        let tangent = sides.iter().any(|e| e.2 == Side::Tangent);
        let normal = sides.iter().any(|e| e.2 == Side::Normal);
        labels.push(
            match (tangent, normal) {
                (true, true) => "tangent+normal",
                (true, false) => "tangent",
                _ => "normal",
            }
            .to_string(),
        );
    }
    Ok(PrincipalCurvatureTable {
        spectrum,
        labels,
        param: SurfaceParam::Tube { r },
        model: split.name.clone(),
        normal: split.normal.clone(),
    })
}

/// Residuals of the closed-form solution `D` of `D'' + R_N D = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCheck {
    /// `‖D''(r) + R_N D(r)‖_F`, relative to `max(1, ‖D''(r)‖_F)`.
    pub residual: f64,
    /// `‖D(0) − P_T‖ + ‖D'(0) − P_ν‖`.
    pub initial: f64,
    /// `‖A_r D(r) − D'(r)‖_F` for the shape operator of [`tube_spectrum`].
    pub shape: f64,
}

impl OdeCheck {
    pub fn max(&self) -> f64 {
        self.residual.max(self.initial).max(self.shape)
    }
}

/// Builds `D(r)` from `cosh(cr)` on tangent eigendirections, `sinh(cr)/c` on
/// normal ones (`1` and `r` for `c = 0`), and evaluates the ODE residual.
pub fn ode_residual_check(ctx: &Grassmannian, split: &TotallyGeodesicTangentSplit, r: f64) -> Result<OdeCheck> {
    let tol = ctx.tol();
    let (rn, nu) = check_split(ctx, split)?;
    let n = 4 * split.m();
    // (f, f', f'') at a given radius.
    type Profile = Box<dyn Fn(f64) -> (f64, f64, f64)>;
    let mut modes: Vec<(Vec<f64>, Profile)> = Vec::new();
    for (v, vec) in side_spectrum(&rn, &split.tangent_basis, tol.eps_resid)? {
        let c = rate(v);
        let c2 = -v;
        modes.push((
            vec,
            Box::new(move |s| {
                if c == 0.0 {
                    (1.0, 0.0, 0.0)
                } else {
                    ((c * s).cosh(), c * (c * s).sinh(), c2 * (c * s).cosh())
                }
            }),
        ));
    }
    for (v, vec) in side_spectrum(&rn, &nu, tol.eps_resid)? {
        let c = rate(v);
        let c2 = -v;
        modes.push((
            vec,
            Box::new(move |s| {
                if c == 0.0 {
                    (s, 1.0, 0.0)
                } else {
                    ((c * s).sinh() / c, (c * s).cosh(), c2 * (c * s).sinh() / c)
                }
            }),
        ));
    }
    let build = |s: f64, which: usize| {
        let mut d = RealMatrix::zeros(n, n);
        for (v, f) in &modes {
            let vals = f(s);
            let w = [vals.0, vals.1, vals.2][which];
            for i in 0..n {
                for j in 0..n {
                    d[(i, j)] += w * v[i] * v[j];
                }
            }
        }
        d
    };
    let (d, d1, d2) = (build(r, 0), build(r, 1), build(r, 2));
    let ode = &d2 + &(&rn * &d);
    let residual = ode.frobenius_norm() / d2.frobenius_norm().max(1.0);

    let projector = |basis: &[Vec<f64>]| {
        let mut p = RealMatrix::zeros(n, n);
        for v in basis {
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] += v[i] * v[j];
                }
            }
        }
        p
    };
    let initial =
        build(0.0, 0).max_abs_diff(&projector(&split.tangent_basis)) + build(0.0, 1).max_abs_diff(&projector(&nu));

    let table = tube_spectrum(ctx, split, r)?;
    let a = table.shape_operator();
    let shape = (&(&a * &d) - &d1).frobenius_norm() / d1.frobenius_norm().max(1.0);
    Ok(OdeCheck {
        residual,
        initial,
        shape,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subbundle {
    /// The maximal complex subbundle `C = TM ⊖ ℝξ`.
    C,
    /// The maximal quaternionic subbundle `Q = TM ⊖ span{ξ_ν}`.
    Q,
}

/// Measures whether the shape operator preserves `C` (equivalently `ℝξ`) or
/// `Q` (equivalently `Q^⊥`). Returns the residual and whether it is below
/// `eps_resid`.
pub fn subbundle_invariance(
    model: &HypersurfacePointModel,
    table: &PrincipalCurvatureTable,
    which: Subbundle,
    eps_resid: f64,
) -> Result<(f64, bool)> {
    let n = model.normal().coords();
    let off = table
        .spectrum
        .groups
        .iter()
        .flat_map(|g| &g.basis)
        .map(|v| dot(v, &n).abs())
        .fold(0.0, f64::max);
    let angle = (&table.normal - model.normal())
        .norm()
        .min((&table.normal + model.normal()).norm());
    if off > 1e-8 || angle > 1e-8 {
        return Err(Error::BasisMismatch(off.max(angle)));
    }
    let a = table.shape_operator();
    let perp: Vec<Vec<f64>> = match which {
        Subbundle::C => vec![model.xi.coords()],
        Subbundle::Q => model.q_perp.clone(),
    };
    let residual = perp
        .iter()
        .map(|v| {
            let av = a.apply(v);
            let p = project_onto(&perp, &av);
            let d: Vec<f64> = av.iter().zip(&p).map(|(x, y)| x - y).collect();
            norm(&d)
        })
        .fold(0.0, f64::max);
    Ok((residual, residual < eps_resid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::build_model;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn horosphere_at_t0() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let t = horosphere_spectrum(&ctx, 0.0).unwrap();
        assert_eq!(t.multiplicities(), vec![4, 6, 1]);
        let v = t.values();
        assert!(v[0].abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12 && (v[2] - 2.0).abs() < 1e-12);
        assert_eq!(t.labels[2], "p[2e1]");
        assert_eq!(t.labels[0], "a-RH+p[e2]+p[2e2]");
    }

    #[test]
    fn horosphere_invariance_pattern() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        for (t, expect_q) in [(0.0, true), (FRAC_PI_4 / 2.0, false), (FRAC_PI_4, true)] {
            let table = horosphere_spectrum(&ctx, t).unwrap();
            let model = build_model(&ctx, &table.normal).unwrap();
            let (rq, pq) = subbundle_invariance(&model, &table, Subbundle::Q, 1e-9).unwrap();
            assert_eq!(pq, expect_q, "t={t} residual={rq}");
            if !expect_q {
                assert!(rq > 0.1);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_radius() {
        let ctx = Grassmannian::with_defaults(3).unwrap();
        let split = TotallyGeodesicTangentSplit {
            name: "x".into(),
            tangent_basis: vec![],
            normal_basis: vec![],
            normal: basis_a(3).0,
        };
        assert!(matches!(tube_spectrum(&ctx, &split, 0.0), Err(Error::BadParams(_))));
    }
}
