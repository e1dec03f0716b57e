//! Command-line front end.
//!
//! Exit codes: 0 when every check passes or the printed table matches its
//! closed form, 1 when something fails, 2 for usage and parameter errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::context::Grassmannian;
use crate::curvature::jacobi_eigenspace_check;
use crate::error::{Error, Result};
use crate::hypersurface::{horosphere_spectrum, identity_suite, tube_spectrum};
use crate::linalg::max_principal_angle;
use crate::models::{expected_table, tube_label_check, ClosedForm, TotallyGeodesicModelKind};
use crate::report::{Cell, OutputFormat, TableReport};
use crate::rng::{DEFAULT_SEED, SEED_ENV};
use crate::roots::{explicit_root_space, weyl_chamber_vector, PositiveRoot};
use crate::structures::SingularType;
use crate::tolerance::Tolerances;
use crate::verify::{self, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "ncgrass", version)]
#[command(about = "Verify the geometry of SU(2,m)/S(U2 Um) numerically")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Residual tolerance for identities and tables.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_resid: f64,

    /// Eigenvalues closer than this are grouped together.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol_group: f64,

    /// Angular tolerance for singular-type classification.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol_angle: f64,

    /// Seed of the random samples.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Markdown => OutputFormat::Markdown,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Su,
    Sp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VectorType {
    Complex,
    Perp,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every verification suite.
    Verify {
        /// Values of m, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        m: Vec<usize>,
        /// Horosphere angles t, comma separated (default: six points in [0, pi/4]).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        /// Tube radii, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0.25,0.5,1,2"
        )]
        r: Vec<f64>,
    },
    /// Principal curvatures of the horosphere with normal H_t.
    Horosphere {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Principal curvatures of a tube around a totally geodesic submanifold.
    Tube {
        #[arg(long, value_enum, default_value_t = Model::Su)]
        model: Model,
        /// Ambient m (SU model, or 2n for the Sp model).
        #[arg(long)]
        m: Option<usize>,
        /// Quaternionic dimension n of the Sp model.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        r: f64,
    },
    /// Restricted roots with multiplicities.
    Roots {
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Spectrum and eigenspaces of the Jacobi operator of a singular vector.
    Jacobi {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long = "type", value_enum, default_value_t = VectorType::Complex)]
        kind: VectorType,
    },
    /// Relations between principal curvatures of a tube, or of a horosphere
    /// when --t is given.
    Identities {
        #[arg(long, value_enum, default_value_t = Model::Su)]
        model: Model,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        r: f64,
        /// Use the horosphere with normal H_t (t = 0 or pi/4) instead of a tube.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
    },
}

/// Parses the process arguments and runs the command.
pub fn run() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => ExitCode::from(execute(&cli)),
        Err(e) => {
            let _ = e.print();
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn execute(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok((text, pass)) => {
            if let Err(e) = emit(&cli.common, &text) {
                eprintln!("error: {e}");
                return 2;
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BadParams(_) | Error::InvalidParameter(_) | Error::OutOfChamber(_) | Error::UnknownLabel(_)
    )
}

fn emit(common: &Common, text: &str) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tolerances(common: &Common) -> Result<Tolerances> {
    let tol = Tolerances {
        eps_resid: common.tol_resid,
        eps_group: common.tol_group,
        eps_angle: common.tol_angle,
        ..Tolerances::default()
    };
    if [tol.eps_resid, tol.eps_group, tol.eps_angle]
        .iter()
        .any(|e| !(*e > 0.0 && e.is_finite()))
    {
        return Err(Error::BadParams("tolerances must be positive".into()));
    }
    Ok(tol)
}

fn context(m: usize, common: &Common) -> Result<Grassmannian> {
    Grassmannian::new(m, tolerances(common)?)
}

fn model_kind(model: Model, m: Option<usize>, n: Option<usize>) -> Result<TotallyGeodesicModelKind> {
    match model {
        Model::Su => TotallyGeodesicModelKind::su(m.unwrap_or(3)),
        Model::Sp => {
            let n = match (n, m) {
                (Some(n), _) => n,
                (None, Some(m)) if m % 2 == 0 => m / 2,
                (None, Some(m)) => return Err(Error::BadParams(format!("the Sp model needs even m, got {m}"))),
                (None, None) => 2,
            };
            TotallyGeodesicModelKind::sp(n)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool)> {
    let common = &cli.common;
    let format: OutputFormat = common.format.into();
    match &cli.command {
        Command::Verify { m, t, r } => {
            let cfg = RunConfig {
                ms: m.clone(),
                t_grid: if t.is_empty() {
                    verify::default_t_grid()
                } else {
                    t.clone()
                },
                r_grid: r.clone(),
                tol: tolerances(common)?,
                seed: common.seed,
                format,
                ..RunConfig::default()
            };
            let started = std::time::Instant::now();
            let report = verify::run(&cfg)?;
            for f in report.failures() {
                eprintln!("FAIL {} residual={:?}", f.id, f.residual());
            }
            eprintln!(
                "{} checks, {} passed, {} failed in {:.2?}",
                report.summary.total,
                report.summary.passed,
                report.summary.failed,
                started.elapsed()
            );
            Ok((report.render(format), report.all_passed()))
        }
        Command::Horosphere { m, t } => {
            let table = horosphere_table(&context(*m, common)?, *t)?;
            let pass = table.pass.unwrap_or(true);
            Ok((table.render(format), pass))
        }
        Command::Tube { model, m, n, r } => {
            let kind = model_kind(*model, *m, *n)?;
            let table = tube_table(&context(kind.ambient_m(), common)?, kind, *r)?;
            let pass = table.pass.unwrap_or(true);
            Ok((table.render(format), pass))
        }
        Command::Roots { m } => {
            let table = roots_table(&context(*m, common)?)?;
            let pass = table.pass.unwrap_or(true);
            Ok((table.render(format), pass))
        }
        Command::Jacobi { m, kind } => {
            let case = match kind {
                VectorType::Complex => SingularType::ComplexType,
                VectorType::Perp => SingularType::PerpType,
            };
            let table = jacobi_table(&context(*m, common)?, case)?;
            let pass = table.pass.unwrap_or(true);
            Ok((table.render(format), pass))
        }
        Command::Identities { model, m, n, r, t } => {
            let table = match t {
                Some(t) => {
                    let m = m.unwrap_or(3);
                    identities_table(&context(m, common)?, None, *t)?
                }
                None => {
                    let kind = model_kind(*model, *m, *n)?;
                    identities_table(&context(kind.ambient_m(), common)?, Some(kind), *r)?
                }
            };
            let pass = table.pass.unwrap_or(true);
            Ok((table.render(format), pass))
        }
    }
}

fn opt_f(x: Option<f64>) -> Cell {
    x.map_or(Cell::Null, Cell::Float)
}

/// Horosphere spectrum next to the merged closed form when `t` is one of its
/// angles, and the general one otherwise.
pub fn horosphere_table(ctx: &Grassmannian, t: f64) -> Result<TableReport> {
    let m = ctx.m();
    let computed = horosphere_spectrum(ctx, t)?;
    let expected = expected_table(ClosedForm::HorosphereMerged { m, t })
        .or_else(|_| expected_table(ClosedForm::Horosphere { m, t }))?;
    let rows: Vec<_> = expected.nonempty().collect();
    let groups = &computed.spectrum.groups;
    let mut out = TableReport::new(
        "horosphere",
        "groups",
        &[
            "value",
            "mult",
            "label",
            "expected_value",
            "expected_mult",
            "expected_label",
        ],
    )
    .param("m", m)
    .param("t", t);
    for k in 0..groups.len().max(rows.len()) {
        let g = groups.get(k);
        let e = rows.get(k);
        out.push(vec![
            opt_f(g.map(|g| g.value)),
            g.map_or(Cell::Null, |g| g.multiplicity().into()),
            computed.labels.get(k).map_or(Cell::Null, |l| l.clone().into()),
            opt_f(e.map(|e| e.value)),
            e.map_or(Cell::Null, |e| e.multiplicity.into()),
            e.map_or(Cell::Null, |e| e.label.clone().into()),
        ]);
    }
    let tol = ctx.tol().eps_resid;
    out.pass = Some(expected.compare(&computed.spectrum).passes(tol) && expected.labels_match(&computed.labels));
    Ok(out)
}

pub fn tube_table(ctx: &Grassmannian, kind: TotallyGeodesicModelKind, r: f64) -> Result<TableReport> {
    let split = kind.split();
    let computed = tube_spectrum(ctx, &split, r)?;
    let expected = expected_table(match kind {
        TotallyGeodesicModelKind::Su { m } => ClosedForm::SuTube { m, r },
        TotallyGeodesicModelKind::Sp { n } => ClosedForm::SpTube { n, r },
    })?;
    let labels = tube_label_check(ctx, kind, &split, r)?;
    let rows: Vec<_> = expected.nonempty().collect();
    let groups = &computed.spectrum.groups;
    let mut out = TableReport::new(
        "tube",
        "groups",
        &[
            "value",
            "mult",
            "side",
            "expected_value",
            "expected_mult",
            "expected_label",
            "angle",
        ],
    )
    .param("model", kind.to_string())
    .param("m", kind.ambient_m())
    .param("r", r);
    for k in 0..groups.len().max(rows.len()) {
        let g = groups.get(k);
        let e = rows.get(k);
        out.push(vec![
            opt_f(g.map(|g| g.value)),
            g.map_or(Cell::Null, |g| g.multiplicity().into()),
            computed.labels.get(k).map_or(Cell::Null, |l| l.clone().into()),
            opt_f(e.map(|e| e.value)),
            e.map_or(Cell::Null, |e| e.multiplicity.into()),
            e.map_or(Cell::Null, |e| e.label.clone().into()),
            opt_f(labels.get(k).map(|l| l.angle)),
        ]);
    }
    let tol = ctx.tol().eps_resid;
    let spaces_ok = labels
        .iter()
        .all(|l| l.expected_dim == l.computed_dim && l.angle < 10.0 * tol);
    out.pass =
        Some(expected.compare(&computed.spectrum).passes(tol) && expected.labels_match(&computed.labels) && spaces_ok);
    Ok(out)
}

pub fn roots_table(ctx: &Grassmannian) -> Result<TableReport> {
    let m = ctx.m();
    let data = ctx.roots()?;
    let mut out = TableReport::new("roots", "roots", &["root", "expected_mult", "mult", "explicit_angle"])
        .param("m", m)
        .param("residual", data.residual)
        .param("dim_k0", data.k0_dim);
    let mut pass = true;
    for p in PositiveRoot::ALL {
        let space = data.space(p);
        let explicit: Vec<Vec<f64>> = explicit_root_space(p, m).iter().map(|v| v.coords()).collect();
        let computed: Vec<Vec<f64>> = space.p_basis.iter().map(|v| v.coords()).collect();
        let angle = max_principal_angle(&explicit, &computed);
        pass &= space.multiplicity == p.expected_multiplicity(m) && angle < 10.0 * ctx.tol().eps_resid;
        out.push(vec![
            p.label().into(),
            p.expected_multiplicity(m).into(),
            space.multiplicity.into(),
            angle.into(),
        ]);
    }
    out.pass = Some(pass && data.residual < ctx.tol().eps_resid);
    Ok(out)
}

/// Jacobi spectrum of `e₁` (complex type) or `H_{π/4}` (perp type) against
/// the closed form, by decreasing eigenvalue. Empty rows of the table are kept.
pub fn jacobi_table(ctx: &Grassmannian, case: SingularType) -> Result<TableReport> {
    let m = ctx.m();
    let t = match case {
        SingularType::ComplexType => 0.0,
        SingularType::PerpType => std::f64::consts::FRAC_PI_4,
        SingularType::Regular => return Err(Error::RegularVector),
    };
    let x = weyl_chamber_vector(m, t)?;
    let expected = expected_table(ClosedForm::Jacobi { m, case })?;
    let check = jacobi_eigenspace_check(ctx, &x)?;
    let spectrum = crate::curvature::jacobi_spectrum(ctx, &x)?;
    let tol = ctx.tol().eps_resid;
    let mut out = TableReport::new(
        "jacobi",
        "groups",
        &["value", "mult", "expected_value", "expected_mult", "label", "angle"],
    )
    .param("m", m)
    .param("type", case.name());
    for row in expected.rows.iter().rev() {
        let g = spectrum.group_near(row.value, 1e3 * tol);
        let angle = check
            .rows
            .iter()
            .find(|r| (r.value - row.value).abs() < 1e-12)
            .map(|r| r.angle);
        out.push(vec![
            g.map_or(row.value, |g| g.value).into(),
            g.map_or(0, |g| g.multiplicity()).into(),
            row.value.into(),
            row.multiplicity.into(),
            row.label.clone().into(),
            opt_f(angle),
        ]);
    }
    out.pass =
        Some(expected.compare(&spectrum).passes(tol) && check.multiplicities_match() && check.max_angle() < 10.0 * tol);
    Ok(out)
}

/// Identity suite of a tube (`kind` given) or of the horosphere at `param = t`.
pub fn identities_table(ctx: &Grassmannian, kind: Option<TotallyGeodesicModelKind>, param: f64) -> Result<TableReport> {
    let (table, case) = match kind {
        Some(kind) => (tube_spectrum(ctx, &kind.split(), param)?, kind.normal_type()),
        None => {
            let table = horosphere_spectrum(ctx, param)?;
            let case = crate::structures::classify_vector(ctx.quaternions(), &table.normal, ctx.tol().eps_angle)?;
            if case == SingularType::Regular {
                return Err(Error::BadParams(format!(
                    "H_t is regular for t = {param}; use t = 0 or pi/4"
                )));
            }
            (table, case)
        }
    };
    let report = identity_suite(ctx, &table, case)?;
    let tol = ctx.tol().eps_resid;
    let mut out = TableReport::new("identities", "checks", &["check", "residual", "pass"])
        .param("surface", table.model.clone())
        .param("param", table.param.to_string())
        .param("type", case.name());
    for (name, value) in &report.roles {
        out.params.insert(name.clone(), (*value).into());
    }
    for c in &report.checks {
        out.push(vec![
            c.name.clone().into(),
            c.residual.into(),
            (c.residual < tol).into(),
        ]);
    }
    out.pass = Some(report.max_residual() < tol);
    Ok(out)
}
