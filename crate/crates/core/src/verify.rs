//! The verification suites: every table and identity checked numerically,
//! collected into a [`VerificationReport`].

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::context::Grassmannian;
use crate::curvature::{
    curvature_agreement, jacobi_eigenspace_check, jacobi_spectrum, r_bracket, r_formula, sectional_curvature,
};
use crate::error::{Error, Result};
use crate::hypersurface::{
    build_model, codazzi_check, contact_identity_check, horosphere_spectrum, identity_suite, ode_residual_check,
    phi_phi1_eigenbundles, subbundle_invariance, tube_spectrum, Subbundle,
};
use crate::lie::TangentVector;
use crate::linalg::max_principal_angle;
use crate::models::{
    expected_table, normal_independence, normal_types, subbundle_decomposition, tube_label_check,
    verify_totally_geodesic, ClosedForm, TotallyGeodesicModelKind,
};
use crate::report::{Cell, CheckRecord, OutputFormat, VerificationReport};
use crate::rng::{Sampler, DEFAULT_SEED};
use crate::roots::{basis_a, explicit_root_space, iwasawa_spectrum, weyl_chamber_vector, PositiveRoot};
use crate::structures::{classify_vector, kahler_angle, kahler_j, SingularType};
use crate::tolerance::Tolerances;

/// Settings of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub ms: Vec<usize>,
    pub t_grid: Vec<f64>,
    pub r_grid: Vec<f64>,
    pub tol: Tolerances,
    pub seed: u64,
    pub format: OutputFormat,
    /// Random triples for the two curvature expressions.
    pub curvature_samples: usize,
    /// Random planes for the sectional curvature bounds.
    pub plane_samples: usize,
    /// Random pairs per normal for the Codazzi sign.
    pub codazzi_samples: usize,
    /// Random unit normals for the normal-independence and type checks.
    pub normal_samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ms: vec![3],
            t_grid: default_t_grid(),
            r_grid: vec![0.25, 0.5, 1.0, 2.0],
            tol: Tolerances::default(),
            seed: DEFAULT_SEED,
            format: OutputFormat::Json,
            curvature_samples: 1000,
            plane_samples: 10_000,
            codazzi_samples: 1000,
            normal_samples: 16,
        }
    }
}

pub fn default_t_grid() -> Vec<f64> {
    vec![
        0.0,
        FRAC_PI_8 / 2.0,
        FRAC_PI_8,
        0.5f64.atan(),
        3.0 * FRAC_PI_8 / 2.0,
        FRAC_PI_4,
    ]
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ms.is_empty() || self.t_grid.is_empty() || self.r_grid.is_empty() {
            return Err(Error::BadParams("parameter lists must be non-empty".into()));
        }
        if let Some(&m) = self.ms.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidParameter(m));
        }
        if let Some(t) = self.t_grid.iter().find(|t| !(0.0..=FRAC_PI_4 + 1e-12).contains(*t)) {
            return Err(Error::OutOfChamber(*t));
        }
        if let Some(r) = self.r_grid.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(Error::BadParams(format!("radius must be positive, got {r}")));
        }
        let t = &self.tol;
        if [t.eps_group, t.eps_resid, t.eps_rank, t.eps_angle]
            .iter()
            .any(|e| !(*e > 0.0 && e.is_finite()))
        {
            return Err(Error::BadParams("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn echo(&self) -> BTreeMap<String, Cell> {
        let list = |v: &[f64]| {
            Cell::Text(
                v.iter()
                    .map(|x| crate::report::format_float(*x).unwrap_or_default())
                    .collect::<Vec<_>>()
                    .join(","),
            )
        };
        let mut c = BTreeMap::new();
        c.insert(
            "m".into(),
            Cell::Text(self.ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")),
        );
        c.insert("t_grid".into(), list(&self.t_grid));
        c.insert("r_grid".into(), list(&self.r_grid));
        c.insert("eps_group".into(), self.tol.eps_group.into());
        c.insert("eps_resid".into(), self.tol.eps_resid.into());
        c.insert("eps_rank".into(), self.tol.eps_rank.into());
        c.insert("eps_angle".into(), self.tol.eps_angle.into());
        c.insert("seed".into(), self.seed.into());
        c.insert("curvature_samples".into(), self.curvature_samples.into());
        c.insert("plane_samples".into(), self.plane_samples.into());
        c.insert("codazzi_samples".into(), self.codazzi_samples.into());
        c.insert("normal_samples".into(), self.normal_samples.into());
        c
    }
}

/// Check tolerances derived from `eps_resid`.
#[derive(Debug, Clone, Copy)]
struct Tols {
    value: f64,
    angle: f64,
    ode: f64,
    limit: f64,
}

impl Tols {
    fn new(tol: &Tolerances) -> Self {
        Self {
            value: tol.eps_resid,
            angle: 10.0 * tol.eps_resid,
            ode: 0.1 * tol.eps_resid,
            limit: 10.0 * tol.eps_resid,
        }
    }
}

fn tag(x: f64) -> String {
    format!("{x:.4}")
}

fn spectrum_cell(pairs: Vec<(f64, usize)>) -> Cell {
    Cell::Spectrum(pairs)
}

/// Runs `f`, recording a failed check under `id` if it errors.
fn attempt(out: &mut Vec<CheckRecord>, id: &str, f: impl FnOnce(&mut Vec<CheckRecord>) -> Result<()>) {
    if let Err(e) = f(out) {
        out.push(CheckRecord::error(id, &e));
    }
}

fn table_record(
    id: String,
    expected: &crate::models::ExpectedTable,
    computed: &crate::linalg::SpectralTable,
    tol: f64,
) -> CheckRecord {
    let cmp = expected.compare(computed);
    let residual = if cmp.multiplicities_match {
        cmp.value_error
    } else {
        f64::INFINITY
    };
    CheckRecord::new(id, residual, tol)
        .expected(spectrum_cell(cmp.expected))
        .computed(spectrum_cell(cmp.computed))
}

pub fn root_checks(ctx: &Grassmannian, out: &mut Vec<CheckRecord>) {
    let m = ctx.m();
    let tols = Tols::new(ctx.tol());
    attempt(out, &format!("roots.m{m}.decomposition"), |out| {
        let data = ctx.roots()?;
        for p in PositiveRoot::ALL {
            let space = data.space(p);
            out.push(
                CheckRecord::exact(
                    format!("roots.m{m}.multiplicity.{}", p.label()),
                    p.expected_multiplicity(m),
                    space.multiplicity,
                )
                .param("m", m),
            );
            let explicit: Vec<Vec<f64>> = explicit_root_space(p, m).iter().map(TangentVector::coords).collect();
            let computed: Vec<Vec<f64>> = space.p_basis.iter().map(TangentVector::coords).collect();
            out.push(
                CheckRecord::new(
                    format!("roots.m{m}.explicit_space.{}", p.label()),
                    max_principal_angle(&explicit, &computed),
                    tols.angle,
                )
                .param("m", m),
            );
        }
        out.push(CheckRecord::new(format!("roots.m{m}.eigen_residual"), data.residual, tols.value).param("m", m));
        out.push(
            CheckRecord::new(format!("roots.m{m}.ad_squared_residual"), data.p_residual(), tols.value).param("m", m),
        );
        out.push(CheckRecord::exact(format!("roots.m{m}.dim_p"), 4 * m, data.dim_p_total()).param("m", m));
        out.push(CheckRecord::exact(format!("roots.m{m}.dim_k0"), (m - 2) * (m - 2) + 1, data.k0_dim).param("m", m));
        Ok(())
    });
}

pub fn curvature_checks(ctx: &Grassmannian, cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let m = ctx.m();
    let tols = Tols::new(ctx.tol());
    let q = ctx.quaternions();
    let mut s = Sampler::new(cfg.seed ^ (m as u64) << 8);
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.curvature_samples {
        let (x, y, z) = (s.tangent(m), s.tangent(m), s.tangent(m));
        worst = worst.max(curvature_agreement(q, &x, &y, &z));
    }
    out.push(
        CheckRecord::new(format!("curvature.m{m}.formula_vs_bracket"), worst, tols.value)
            .param("m", m)
            .param("samples", cfg.curvature_samples),
    );

    let e1 = basis_a(m).0;
    let je1 = kahler_j(&e1);
    let target = je1.scaled(-4.0);
    let r1 = (&r_bracket(&je1, &e1, &e1) - &target).norm();
    let r2 = (&r_formula(q, &je1, &e1, &e1) - &target).norm();
    out.push(CheckRecord::new(format!("curvature.m{m}.r_je1_e1_e1"), r1.max(r2), tols.value).param("m", m));

    attempt(out, &format!("curvature.m{m}.sectional"), |out| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..cfg.plane_samples {
            let k = sectional_curvature(&s.tangent(m), &s.tangent(m), ctx.tol().eps_rank)?;
            lo = lo.min(k);
            hi = hi.max(k);
        }
        let violation = (hi.max(0.0)).max((-4.0 - lo).max(0.0));
        out.push(
            CheckRecord::new(format!("curvature.m{m}.sectional_bounds"), violation, tols.value)
                .param("m", m)
                .param("samples", cfg.plane_samples)
                .expected("[-4, 0]")
                .computed(format!("[{lo:.12}, {hi:.12}]")),
        );
        let k = sectional_curvature(&e1, &je1, ctx.tol().eps_rank)?;
        out.push(
            CheckRecord::new(
                format!("curvature.m{m}.sectional_complex_plane"),
                (k + 4.0).abs(),
                tols.value,
            )
            .param("m", m)
            .expected(-4.0)
            .computed(k),
        );
        Ok(())
    });
}

pub fn jacobi_checks(ctx: &Grassmannian, out: &mut Vec<CheckRecord>) {
    let m = ctx.m();
    let tols = Tols::new(ctx.tol());
    for (case, t) in [(SingularType::ComplexType, 0.0), (SingularType::PerpType, FRAC_PI_4)] {
        let name = case.name();
        attempt(out, &format!("jacobi.m{m}.{name}"), |out| {
            let x = weyl_chamber_vector(m, t)?;
            let expected = expected_table(ClosedForm::Jacobi { m, case })?;
            let spec = jacobi_spectrum(ctx, &x)?;
            out.push(table_record(format!("jacobi.m{m}.{name}.table"), &expected, &spec, tols.value).param("m", m));
            let check = jacobi_eigenspace_check(ctx, &x)?;
            let residual = if check.multiplicities_match() {
                check.max_angle()
            } else {
                f64::INFINITY
            };
            out.push(
                CheckRecord::new(format!("jacobi.m{m}.{name}.eigenspaces"), residual, tols.angle)
                    .param("m", m)
                    .computed(
                        check
                            .rows
                            .iter()
                            .map(|r| format!("{}:{}", r.label, r.computed_multiplicity))
                            .collect::<Vec<_>>()
                            .join(" "),
                    ),
            );
            Ok(())
        });
    }
}

pub fn kahler_checks(ctx: &Grassmannian, cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let m = ctx.m();
    let tols = Tols::new(ctx.tol());
    let q = ctx.quaternions();
    for &t in &cfg.t_grid {
        attempt(out, &format!("kahler.m{m}.angle.t{}", tag(t)), |out| {
            let a = kahler_angle(q, &weyl_chamber_vector(m, t)?)?;
            out.push(
                CheckRecord::new(
                    format!("kahler.m{m}.angle.t{}", tag(t)),
                    (a - 2.0 * t).abs(),
                    tols.value,
                )
                .param("m", m)
                .param("t", t)
                .expected(2.0 * t)
                .computed(a),
            );
            Ok(())
        });
    }
    for (t, expected) in [
        (0.0, SingularType::ComplexType),
        (FRAC_PI_8, SingularType::Regular),
        (FRAC_PI_4, SingularType::PerpType),
    ] {
        attempt(out, &format!("kahler.m{m}.classify.t{}", tag(t)), |out| {
            let got = classify_vector(q, &weyl_chamber_vector(m, t)?, ctx.tol().eps_angle)?;
            out.push(
                CheckRecord::exact(format!("kahler.m{m}.classify.t{}", tag(t)), expected.name(), got.name())
                    .param("m", m)
                    .param("t", t),
            );
            Ok(())
        });
    }
}

fn is_wall(t: f64) -> bool {
    t.abs() < 1e-12 || (t - FRAC_PI_4).abs() < 1e-12
}

pub fn horosphere_checks(ctx: &Grassmannian, cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let m = ctx.m();
    let tols = Tols::new(ctx.tol());
    let mut ts = cfg.t_grid.clone();
    for t in [0.0, 0.5f64.atan(), FRAC_PI_4] {
        if !ts.iter().any(|x| (x - t).abs() < 1e-12) {
            ts.push(t);
        }
    }
    for &t in &ts {
        let id = format!("horosphere.m{m}.t{}", tag(t));
        attempt(out, &id, |out| {
            let table = horosphere_spectrum(ctx, t)?;
            let e1 = expected_table(ClosedForm::Horosphere { m, t })?;
            out.push(
                table_record(format!("{id}.closed_form"), &e1, &table.spectrum, tols.value)
                    .param("m", m)
                    .param("t", t),
            );
            out.push(
                CheckRecord::exact(format!("{id}.closed_form_labels"), true, e1.labels_match(&table.labels))
                    .param("m", m)
                    .param("t", t)
                    .computed(table.labels.join(" ")),
            );
            let iw = iwasawa_spectrum(ctx.roots()?, t, ctx.tol())?;
            let (a, b) = (table.spectrum.multiset(), iw.multiset());
            let diff = if a.len() == b.len() {
                a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            out.push(
                CheckRecord::new(format!("{id}.iwasawa_agreement"), diff, tols.value)
                    .param("m", m)
                    .param("t", t),
            );
            if let Ok(e2) = expected_table(ClosedForm::HorosphereMerged { m, t }) {
                out.push(
                    table_record(format!("{id}.merged"), &e2, &table.spectrum, tols.value)
                        .param("m", m)
                        .param("t", t),
                );
                out.push(
                    table_record(format!("{id}.merged_iwasawa"), &e2, &iw, tols.value)
                        .param("m", m)
                        .param("t", t),
                );
                out.push(
                    CheckRecord::exact(format!("{id}.merged_labels"), true, e2.labels_match(&table.labels))
                        .param("m", m)
                        .param("t", t),
                );
            }

            let model = build_model(ctx, &table.normal)?;
            out.push(
                CheckRecord::new(
                    format!("{id}.contact_identities"),
                    contact_identity_check(&model).max(),
                    tols.value,
                )
                .param("m", m)
                .param("t", t),
            );
            for (which, name) in [(Subbundle::C, "C"), (Subbundle::Q, "Q")] {
                let (r, _) = subbundle_invariance(&model, &table, which, tols.value)?;
                let rec = if is_wall(t) {
                    CheckRecord::new(format!("{id}.invariant_{name}"), r, tols.value).expected("invariant")
                } else {
                    // Not invariant: the residual must be bounded away from
                    // zero, by 0.1 at t = π/8.
                    let floor = if (t - FRAC_PI_8).abs() < 1e-12 {
                        0.1
                    } else {
                        1e3 * tols.value
                    };
                    CheckRecord::new(format!("{id}.not_invariant_{name}"), floor / r, 1.0)
                        .expected(format!("> {floor}"))
                };
                out.push(rec.param("m", m).param("t", t).computed(r));
            }
            Ok(())
        });
    }

    attempt(out, &format!("horosphere.m{m}.t0.complex"), |out| {
        let table = horosphere_spectrum(ctx, 0.0)?;
        identity_records(
            ctx,
            &table,
            SingularType::ComplexType,
            &format!("horosphere.m{m}.t0.identities"),
            tols,
            out,
        )?;
        let model = build_model(ctx, &table.normal)?;
        let bundles = phi_phi1_eigenbundles(ctx, &model)?;
        let id = format!("horosphere.m{m}.t0.eigenbundles");
        out.push(CheckRecord::exact(format!("{id}.rank_plus"), 2 * m - 2, bundles.plus.len()).param("m", m));
        out.push(CheckRecord::exact(format!("{id}.rank_minus"), 2 * m - 2, bundles.minus.len()).param("m", m));
        out.push(CheckRecord::new(format!("{id}.square"), bundles.square_residual, tols.value).param("m", m));
        out.push(CheckRecord::new(format!("{id}.trace"), bundles.trace.abs(), tols.value).param("m", m));
        let zero = table
            .spectrum
            .group_near(0.0, 1e3 * tols.value)
            .map(|g| g.basis.clone())
            .unwrap_or_default();
        out.push(
            CheckRecord::new(
                format!("{id}.t0_equals_e_plus"),
                max_principal_angle(&zero, &bundles.plus),
                tols.angle,
            )
            .param("m", m),
        );
        let one = table
            .spectrum
            .group_near(1.0, 1e3 * tols.value)
            .map(|g| g.basis.clone())
            .unwrap_or_default();
        let outside = bundles
            .minus
            .iter()
            .map(|v| crate::linalg::projection_residual(&one, v))
            .fold(0.0, f64::max);
        out.push(CheckRecord::new(format!("{id}.e_minus_in_t1"), outside, tols.angle).param("m", m));
        Ok(())
    });
    attempt(out, &format!("horosphere.m{m}.tpi4.perp"), |out| {
        let table = horosphere_spectrum(ctx, FRAC_PI_4)?;
        identity_records(
            ctx,
            &table,
            SingularType::PerpType,
            &format!("horosphere.m{m}.t0.7854.identities"),
            tols,
            out,
        )
    });

    let mut s = Sampler::new(cfg.seed ^ 0xc0da ^ (m as u64) << 16);
    for t in [0.0, FRAC_PI_4] {
        attempt(out, &format!("codazzi.m{m}.t{}", tag(t)), |out| {
            let model = build_model(ctx, &weyl_chamber_vector(m, t)?)?;
            codazzi_record(
                &model,
                &mut s,
                cfg.codazzi_samples,
                &format!("codazzi.m{m}.horosphere.t{}", tag(t)),
                tols,
                out,
            );
            Ok(())
        });
    }
}

fn codazzi_record(
    model: &crate::hypersurface::HypersurfacePointModel,
    s: &mut Sampler,
    samples: usize,
    id: &str,
    tols: Tols,
    out: &mut Vec<CheckRecord>,
) {
    let m = model.m();
    let pairs: Vec<_> = (0..samples).map(|_| (s.tangent(m), s.tangent(m))).collect();
    let check = codazzi_check(model, &pairs);
    out.push(
        CheckRecord::exact(format!("{id}.sign"), -1.0, check.sign)
            .param("m", m)
            .param("samples", samples),
    );
    out.push(CheckRecord::new(format!("{id}.residual"), check.residual, tols.value).param("m", m));
}

fn identity_records(
    ctx: &Grassmannian,
    table: &crate::hypersurface::PrincipalCurvatureTable,
    case: SingularType,
    id: &str,
    tols: Tols,
    out: &mut Vec<CheckRecord>,
) -> Result<()> {
    let report = identity_suite(ctx, table, case)?;
    let roles = report
        .roles
        .iter()
        .map(|(n, v)| format!("{n}={v:.12}"))
        .collect::<Vec<_>>()
        .join(" ");
    for c in &report.checks {
        out.push(
            CheckRecord::new(format!("{id}.{}", c.name), c.residual, tols.value)
                .param("m", ctx.m())
                .param("case", case.name())
                .computed(roles.clone()),
        );
    }
    Ok(())
}

pub fn tube_checks(ctx: &Grassmannian, kind: TotallyGeodesicModelKind, cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let m = ctx.m();
    let tols = Tols::new(ctx.tol());
    let split = kind.split();
    let base = match kind {
        TotallyGeodesicModelKind::Su { m } => format!("tube.su.m{m}"),
        TotallyGeodesicModelKind::Sp { n } => format!("tube.sp.n{n}"),
    };
    let mut s =
        Sampler::new(cfg.seed ^ 0x7b ^ (m as u64) << 24 ^ matches!(kind, TotallyGeodesicModelKind::Sp { .. }) as u64);
    attempt(out, &format!("{base}.totally_geodesic"), |out| {
        let r = verify_totally_geodesic(ctx, &split, &kind.subalgebra(), &mut s, 4)?;
        let id = format!("{base}.totally_geodesic");
        for (name, value) in [
            ("subalgebra_closed", r.closure),
            ("theta_invariant", r.theta_invariance),
            ("tangent_is_p_part", r.tangent_match),
            ("lie_triple_system", r.triple),
            ("curvature_invariant", r.curvature),
            ("orthonormal", r.orthonormality),
        ] {
            out.push(CheckRecord::new(format!("{id}.{name}"), value, tols.value).param("model", kind.to_string()));
        }
        let types = normal_types(ctx, &split, &mut s, cfg.normal_samples)?;
        let matching = types.iter().filter(|&&t| t == kind.normal_type()).count();
        out.push(
            CheckRecord::exact(format!("{base}.normal_type"), types.len(), matching)
                .param("model", kind.to_string())
                .param("type", kind.normal_type().name()),
        );
        Ok(())
    });

    for &r in &cfg.r_grid {
        let id = format!("{base}.r{}", tag(r));
        attempt(out, &id, |out| {
            let table = tube_spectrum(ctx, &split, r)?;
            let expected = expected_table(match kind {
                TotallyGeodesicModelKind::Su { m } => ClosedForm::SuTube { m, r },
                TotallyGeodesicModelKind::Sp { n } => ClosedForm::SpTube { n, r },
            })?;
            let p = |rec: CheckRecord| rec.param("model", kind.to_string()).param("r", r);
            out.push(p(table_record(
                format!("{id}.table"),
                &expected,
                &table.spectrum,
                tols.value,
            )));
            out.push(p(CheckRecord::exact(
                format!("{id}.sides"),
                true,
                expected.labels_match(&table.labels),
            )
            .computed(table.labels.join(" "))));
            let labels = tube_label_check(ctx, kind, &split, r)?;
            let worst = labels
                .iter()
                .map(|l| {
                    if l.expected_dim == l.computed_dim {
                        l.angle
                    } else {
                        f64::INFINITY
                    }
                })
                .fold(0.0, f64::max);
            out.push(p(CheckRecord::new(
                format!("{id}.eigenspace_labels"),
                worst,
                tols.angle,
            )
            .computed(
                labels
                    .iter()
                    .map(|l| format!("{}:{}", l.label, l.computed_dim))
                    .collect::<Vec<_>>()
                    .join(" "),
            )));
            let ode = ode_residual_check(ctx, &split, r)?;
            out.push(p(CheckRecord::new(format!("{id}.ode"), ode.residual, tols.ode)));
            out.push(p(CheckRecord::new(format!("{id}.ode_initial"), ode.initial, tols.ode)));
            out.push(p(CheckRecord::new(format!("{id}.ode_shape"), ode.shape, tols.value)));
            let model = build_model(ctx, &split.normal)?;
            for (which, name) in [(Subbundle::C, "C"), (Subbundle::Q, "Q")] {
                let (res, _) = subbundle_invariance(&model, &table, which, tols.value)?;
                out.push(p(CheckRecord::new(format!("{id}.invariant_{name}"), res, tols.value)));
            }
            let d = subbundle_decomposition(ctx, kind, &split, r)?;
            out.push(p(CheckRecord::new(
                format!("{id}.decomposition_Q"),
                d.q_angle,
                tols.angle,
            )));
            out.push(p(CheckRecord::new(
                format!("{id}.decomposition_C"),
                d.c_angle,
                tols.angle,
            )));
            out.push(p(CheckRecord::new(
                format!("{id}.contact_identities"),
                contact_identity_check(&model).max(),
                tols.value,
            )));
            identity_records(ctx, &table, kind.normal_type(), &format!("{id}.identities"), tols, out)?;
            if let TotallyGeodesicModelKind::Sp { n } = kind {
                let rep = identity_suite(ctx, &table, SingularType::PerpType)?;
                let (a, b) = (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::SQRT_2);
                let closed = [
                    ("alpha", b * (b * r).tanh()),
                    ("beta", b / (b * r).tanh()),
                    ("gamma", 0.0),
                    ("lambda1", a * (a * r).tanh()),
                    ("lambda2", a / (a * r).tanh()),
                ];
                let mut worst: f64 = 0.0;
                // For n = 1 the lambda rows have multiplicity 4n - 4 = 0.
                for (name, v) in closed.into_iter().take(if n > 1 { 5 } else { 3 }) {
                    let got = rep
                        .role(name)
                        .ok_or_else(|| Error::RoleResolutionFailure(name.into()))?;
                    worst = worst.max((got - v).abs());
                }
                out.push(p(CheckRecord::new(format!("{id}.closed_forms"), worst, tols.value)));
            }
            Ok(())
        });
    }

    let r0 = cfg.r_grid[cfg.r_grid.len() / 2];
    attempt(out, &format!("{base}.normal_independence"), |out| {
        let dev = normal_independence(ctx, &split, r0, &mut s, cfg.normal_samples)?;
        out.push(
            CheckRecord::new(format!("{base}.normal_independence"), dev, tols.value)
                .param("model", kind.to_string())
                .param("r", r0)
                .param("samples", cfg.normal_samples),
        );
        Ok(())
    });

    attempt(out, &format!("{base}.limit"), |out| {
        let tube = tube_spectrum(ctx, &split, 20.0)?;
        let t = match kind {
            TotallyGeodesicModelKind::Su { .. } => 0.0,
            TotallyGeodesicModelKind::Sp { .. } => FRAC_PI_4,
        };
        let horo = horosphere_spectrum(ctx, t)?;
        let (a, b) = (tube.spectrum.multiset(), horo.spectrum.multiset());
        let diff = if a.len() == b.len() {
            a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        out.push(
            CheckRecord::new(format!("{base}.limit_r20"), diff, tols.limit)
                .param("model", kind.to_string())
                .param("t", t)
                .expected(spectrum_cell(
                    horo.spectrum
                        .groups
                        .iter()
                        .map(|g| (g.value, g.multiplicity()))
                        .collect(),
                ))
                .computed(spectrum_cell(
                    tube.spectrum
                        .groups
                        .iter()
                        .map(|g| (g.value, g.multiplicity()))
                        .collect(),
                )),
        );
        Ok(())
    });

    attempt(out, &format!("codazzi.{base}"), |out| {
        let model = build_model(ctx, &split.normal)?;
        codazzi_record(
            &model,
            &mut s,
            cfg.codazzi_samples,
            &format!("codazzi.{base}"),
            tols,
            out,
        );
        Ok(())
    });
}

/// Every check for one value of `m`.
pub fn checks_for_m(m: usize, cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let ctx = match Grassmannian::new(m, cfg.tol) {
        Ok(ctx) => ctx,
        Err(e) => {
            out.push(CheckRecord::error(format!("context.m{m}"), &e));
            return out;
        }
    };
    root_checks(&ctx, &mut out);
    curvature_checks(&ctx, cfg, &mut out);
    jacobi_checks(&ctx, &mut out);
    kahler_checks(&ctx, cfg, &mut out);
    horosphere_checks(&ctx, cfg, &mut out);
    tube_checks(&ctx, TotallyGeodesicModelKind::Su { m }, cfg, &mut out);
    if m.is_multiple_of(2) {
        tube_checks(&ctx, TotallyGeodesicModelKind::Sp { n: m / 2 }, cfg, &mut out);
    }
    out
}

/// Runs every suite for every `m` of the configuration. Each `m` runs on its
/// own thread; the report is sorted by check id, so the output does not
/// depend on scheduling.
pub fn run(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let checks = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .ms
            .iter()
            .map(|&m| scope.spawn(move || checks_for_m(m, cfg)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification thread panicked"))
            .collect::<Vec<_>>()
    });
    Ok(VerificationReport::new(cfg.echo(), checks))
}
