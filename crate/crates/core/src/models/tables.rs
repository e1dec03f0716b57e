use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use crate::context::Grassmannian;
use crate::curvature::{involution_split, span_coords};
use crate::error::{Error, Result};
use crate::hypersurface::{build_model, tube_spectrum, TotallyGeodesicTangentSplit};
use crate::lie::TangentVector;
use crate::linalg::{complement_in, dot, max_principal_angle, orthonormalize, SpectralTable};
use crate::models::TotallyGeodesicModelKind;
use crate::structures::{kahler_j, SingularType};

/// The closed-form tables of principal curvatures and Jacobi eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// Horosphere with normal `H_t`, general `t ∈ [0, π/4]`.
    Horosphere { m: usize, t: f64 },
    /// Horosphere at `t ∈ {0, arctan(1/2), π/4}`, where rows of the general
    /// form coincide and are merged.
    HorosphereMerged { m: usize, t: f64 },
    /// Jacobi operator of a singular unit vector.
    Jacobi { m: usize, case: SingularType },
    /// Tube of radius `r` around `SU(2,m−1)/S(U₂U_{m−1})`.
    SuTube { m: usize, r: f64 },
    /// Tube of radius `r` around `ℍH^n` in the space with `m = 2n`.
    SpTube { n: usize, r: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedRow {
    pub value: f64,
    pub multiplicity: usize,
    /// Description of the eigenspace.
    pub label: String,
    /// `tangent`, `normal` or `tangent+normal` for tube rows.
    pub side: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedTable {
    pub table: ClosedForm,
    /// Rows by increasing value. Rows of multiplicity zero are kept.
    pub rows: Vec<ExpectedRow>,
}

/// Outcome of comparing a computed spectrum with an expected table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableComparison {
    pub expected: Vec<(f64, usize)>,
    pub computed: Vec<(f64, usize)>,
    /// Largest eigenvalue deviation, or infinity if the group counts differ.
    pub value_error: f64,
    pub multiplicities_match: bool,
}

impl TableComparison {
    pub fn passes(&self, eps: f64) -> bool {
        self.multiplicities_match && self.value_error < eps
    }
}

impl ExpectedTable {
    pub fn nonempty(&self) -> impl Iterator<Item = &ExpectedRow> {
        self.rows.iter().filter(|r| r.multiplicity > 0)
    }

    pub fn dim(&self) -> usize {
        self.rows.iter().map(|r| r.multiplicity).sum()
    }

    pub fn compare(&self, computed: &SpectralTable) -> TableComparison {
        let expected: Vec<(f64, usize)> = self.nonempty().map(|r| (r.value, r.multiplicity)).collect();
        let got: Vec<(f64, usize)> = computed.groups.iter().map(|g| (g.value, g.multiplicity())).collect();
        let (value_error, multiplicities_match) = if expected.len() == got.len() {
            let err = expected
                .iter()
                .zip(&got)
                .map(|(a, b)| (a.0 - b.0).abs())
                .fold(0.0, f64::max);
            (err, expected.iter().zip(&got).all(|(a, b)| a.1 == b.1))
        } else {
            (f64::INFINITY, false)
        };
        TableComparison {
            expected,
            computed: got,
            value_error,
            multiplicities_match,
        }
    }

    /// Whether the computed group labels carry the same set of `+`-joined
    /// pieces as the expected rows (horosphere root-space labels) or the same
    /// side (tube labels).
    pub fn labels_match(&self, labels: &[String]) -> bool {
        let rows: Vec<&ExpectedRow> = self.nonempty().collect();
        if rows.len() != labels.len() {
            return false;
        }
        let pieces = |s: &str| {
            let mut v: Vec<String> = s.split('+').map(str::to_string).collect();
            v.sort();
            v
        };
        rows.iter().zip(labels).all(|(row, got)| match &row.side {
            Some(side) => side == got,
            None => pieces(&row.label) == pieces(got),
        })
    }
}

fn row(value: f64, multiplicity: usize, label: &str) -> ExpectedRow {
    ExpectedRow {
        value,
        multiplicity,
        label: label.to_string(),
        side: None,
    }
}

fn tube_row(value: f64, multiplicity: usize, label: &str, side: &str) -> ExpectedRow {
    ExpectedRow {
        side: Some(side.to_string()),
        ..row(value, multiplicity, label)
    }
}

/// Sorts by value and merges rows whose values coincide. Labels of empty rows
/// are dropped from merged rows.
fn merge(mut rows: Vec<ExpectedRow>) -> Vec<ExpectedRow> {
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut out: Vec<ExpectedRow> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(last) if (last.value - r.value).abs() < 1e-12 * last.value.abs().max(1.0) => {
                if r.multiplicity > 0 {
                    if last.multiplicity == 0 {
                        last.label = r.label;
                        last.side = r.side;
                    } else {
                        last.label = format!("{}+{}", last.label, r.label);
                        if last.side != r.side {
                            last.side = Some("tangent+normal".into());
                        }
                    }
                    last.multiplicity += r.multiplicity;
                }
            }
            _ => out.push(r),
        }
    }
    out
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::BadParams(format!("m must be at least 2, got {m}")));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::BadParams(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

pub fn expected_table(table: ClosedForm) -> Result<ExpectedTable> {
    let rows = match table {
        ClosedForm::Horosphere { m, t } => {
            check_m(m)?;
            if !(-1e-12..=FRAC_PI_4 + 1e-12).contains(&t) {
                return Err(Error::BadParams(format!("t = {t} outside [0, pi/4]")));
            }
            let (c, s) = (t.cos(), t.sin());
            let k = 2 * m - 4;
            merge(vec![
                row(0.0, 1, "a-RH"),
                row(2.0 * c, 1, "p[2e1]"),
                row(2.0 * s, 1, "p[2e2]"),
                row(c - s, 2, "p[e1-e2]"),
                row(c + s, 2, "p[e1+e2]"),
                row(c, k, "p[e1]"),
                row(s, k, "p[e2]"),
            ])
        }
        ClosedForm::HorosphereMerged { m, t } => {
            check_m(m)?;
            let r5 = 5f64.sqrt();
            let mut rows = if t.abs() < 1e-12 {
                vec![
                    row(0.0, 2 * m - 2, "a-RH+p[e2]+p[2e2]"),
                    row(1.0, 2 * m, "p[e1-e2]+p[e1+e2]+p[e1]"),
                    row(2.0, 1, "p[2e1]"),
                ]
            } else if (t - 0.5f64.atan()).abs() < 1e-12 {
                vec![
                    row(0.0, 1, "a-RH"),
                    row(1.0 / r5, 2 * m - 2, "p[e1-e2]+p[e2]"),
                    row(2.0 / r5, 2 * m - 3, "p[e1]+p[2e2]"),
                    row(3.0 / r5, 2, "p[e1+e2]"),
                    row(4.0 / r5, 1, "p[2e1]"),
                ]
            } else if (t - FRAC_PI_4).abs() < 1e-12 {
                vec![
                    row(0.0, 3, "a-RH+p[e1-e2]"),
                    row(FRAC_1_SQRT_2, 4 * m - 8, "p[e1]+p[e2]"),
                    row(SQRT_2, 4, "p[2e1]+p[2e2]+p[e1+e2]"),
                ]
            } else {
                return Err(Error::BadParams(format!("t = {t} is not one of 0, arctan(1/2), pi/4")));
            };
            if m == 2 {
                // p[e1] and p[e2] are empty.
                for r in rows.iter_mut() {
                    r.label = r
                        .label
                        .split('+')
                        .filter(|p| *p != "p[e1]" && *p != "p[e2]")
                        .collect::<Vec<_>>()
                        .join("+");
                }
            }
            rows
        }
        ClosedForm::Jacobi { m, case } => {
            check_m(m)?;
            match case {
                SingularType::ComplexType => vec![
                    row(-4.0, 1, "RJX"),
                    row(-1.0, 2 * m, "(HX-CX)+{JY=J1Y}"),
                    row(0.0, 2 * m - 1, "RX+{JY=-J1Y}"),
                ],
                SingularType::PerpType => vec![
                    row(-2.0, 4, "RJX+JX"),
                    row(-0.5, 4 * m - 8, "(RX+RJX+JX+JJX)^perp"),
                    row(0.0, 4, "RX+JJX"),
                ],
                SingularType::Regular => return Err(Error::BadParams("Jacobi table needs a singular type".into())),
            }
        }
        ClosedForm::SuTube { m, r } => {
            check_m(m)?;
            check_r(r)?;
            merge(vec![
                tube_row(0.0, 2 * m - 2, "T:JY=-J1Y", "tangent"),
                tube_row(r.tanh(), 2 * m - 2, "T:JY=J1Y", "tangent"),
                tube_row(1.0 / r.tanh(), 2, "HN-CN", "normal"),
                tube_row(2.0 / (2.0 * r).tanh(), 1, "RJN", "normal"),
            ])
        }
        ClosedForm::SpTube { n, r } => {
            if n < 1 {
                return Err(Error::BadParams(format!("n must be at least 1, got {n}")));
            }
            check_r(r)?;
            let (a, b) = (FRAC_1_SQRT_2, SQRT_2);
            merge(vec![
                tube_row(0.0, 3, "JJN", "tangent"),
                tube_row(a * (a * r).tanh(), 4 * n - 4, "T-HJN", "tangent"),
                tube_row(b * (b * r).tanh(), 1, "RJN", "tangent"),
                tube_row(a / (a * r).tanh(), 4 * n - 4, "nu-HN", "normal"),
                tube_row(b / (b * r).tanh(), 3, "JN", "normal"),
            ])
        }
    };
    Ok(ExpectedTable { table, rows })
}

/// Subspaces of p described in the tube tables, keyed by the row labels of
/// [`expected_table`], for the split's normal.
pub fn tube_label_spaces(
    ctx: &Grassmannian,
    kind: TotallyGeodesicModelKind,
    split: &TotallyGeodesicTangentSplit,
) -> Result<Vec<(String, Vec<Vec<f64>>)>> {
    let eps = ctx.tol().eps_rank;
    let m = split.m();
    let q = ctx.quaternions();
    let n = &split.normal;
    let jn = kahler_j(n);
    let quat =
        |v: &TangentVector, b: &crate::structures::QuaternionBasis| (0..3).map(|nu| b.apply(nu, v)).collect::<Vec<_>>();
    let spaces = match kind {
        TotallyGeodesicModelKind::Su { .. } => {
            let (adapted, _) = q.adapted_to(n)?;
            let (plus, minus) = involution_split(
                &split.tangent_basis,
                |v| {
                    let y = TangentVector::from_coords(m, v);
                    kahler_j(&adapted.apply(0, &y)).scaled(-1.0).coords()
                },
                eps,
            );
            vec![
                ("T:JY=-J1Y".to_string(), minus),
                ("T:JY=J1Y".to_string(), plus),
                (
                    "HN-CN".to_string(),
                    span_coords(&[adapted.apply(1, n), adapted.apply(2, n)], eps),
                ),
                ("RJN".to_string(), span_coords(&[jn], eps)),
            ]
        }
        TotallyGeodesicModelKind::Sp { .. } => {
            let jjn = span_coords(&quat(&jn, q), eps);
            let mut hjn = jjn.clone();
            hjn.extend(span_coords(std::slice::from_ref(&jn), eps));
            let mut hn = span_coords(&quat(n, q), eps);
            hn.extend(span_coords(std::slice::from_ref(n), eps));
            vec![
                ("JJN".to_string(), jjn),
                ("T-HJN".to_string(), complement_in(&split.tangent_basis, &hjn, eps)),
                ("RJN".to_string(), span_coords(std::slice::from_ref(&jn), eps)),
                ("nu-HN".to_string(), complement_in(&split.normal_basis, &hn, eps)),
                ("JN".to_string(), span_coords(&quat(n, q), eps)),
            ]
        }
    };
    Ok(spaces)
}

/// One row of a tube table compared with its described eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMatch {
    pub label: String,
    pub value: f64,
    pub expected_dim: usize,
    pub computed_dim: usize,
    /// Largest principal angle between the described and computed spaces.
    pub angle: f64,
}

/// Compares each nonempty row of the tube table with the eigenspace of the
/// computed shape operator at the row's value.
pub fn tube_label_check(
    ctx: &Grassmannian,
    kind: TotallyGeodesicModelKind,
    split: &TotallyGeodesicTangentSplit,
    r: f64,
) -> Result<Vec<LabelMatch>> {
    let expected = expected_table(match kind {
        TotallyGeodesicModelKind::Su { m } => ClosedForm::SuTube { m, r },
        TotallyGeodesicModelKind::Sp { n } => ClosedForm::SpTube { n, r },
    })?;
    let table = tube_spectrum(ctx, split, r)?;
    let spaces = tube_label_spaces(ctx, kind, split)?;
    let euclid = |a: &Vec<f64>, b: &Vec<f64>| dot(a, b);
    let mut out = Vec::new();
    for row in expected.nonempty() {
        let mut described = Vec::new();
        for piece in row.label.split('+') {
            let (_, basis) = spaces
                .iter()
                .find(|(name, _)| name == piece)
                .ok_or_else(|| Error::RoleResolutionFailure(piece.to_string()))?;
            described.extend(basis.iter().cloned());
        }
        let described = orthonormalize(&described, euclid, ctx.tol().eps_rank);
        let computed = table
            .spectrum
            .group_near(row.value, 1e3 * ctx.tol().eps_resid)
            .map(|g| g.basis.clone())
            .unwrap_or_default();
        out.push(LabelMatch {
            label: row.label.clone(),
            value: row.value,
            expected_dim: described.len(),
            computed_dim: computed.len(),
            angle: max_principal_angle(&described, &computed),
        });
    }
    Ok(out)
}

/// Principal angles between `Q` and `C` of the tube and the sums of
/// eigenspaces that make them up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionCheck {
    pub q_angle: f64,
    pub c_angle: f64,
}

impl DecompositionCheck {
    pub fn max(&self) -> f64 {
        self.q_angle.max(self.c_angle)
    }
}

/// Checks `Q = E₀ ⊕ E_tanh` and `C = Q ⊕ E_coth` for the SU tube, and
/// `Q = E₀ ⊕ E_{tanh/√2} ⊕ E_{√2 tanh} ⊕ E_{coth/√2}`,
/// `C = E₀ ⊕ E_{tanh/√2} ⊕ E_{coth/√2} ⊕ E_{√2 coth}` for the Sp tube.
pub fn subbundle_decomposition(
    ctx: &Grassmannian,
    kind: TotallyGeodesicModelKind,
    split: &TotallyGeodesicTangentSplit,
    r: f64,
) -> Result<DecompositionCheck> {
    let table = tube_spectrum(ctx, split, r)?;
    let model = build_model(ctx, &split.normal)?;
    let (a, b) = (FRAC_1_SQRT_2, SQRT_2);
    let (q_values, c_values): (Vec<f64>, Vec<f64>) = match kind {
        TotallyGeodesicModelKind::Su { .. } => (vec![0.0, r.tanh()], vec![0.0, r.tanh(), 1.0 / r.tanh()]),
        TotallyGeodesicModelKind::Sp { .. } => (
            vec![0.0, a * (a * r).tanh(), b * (b * r).tanh(), a / (a * r).tanh()],
            vec![0.0, a * (a * r).tanh(), a / (a * r).tanh(), b / (b * r).tanh()],
        ),
    };
    let tol = 1e3 * ctx.tol().eps_resid;
    let gather = |values: &[f64]| {
        let mut basis = Vec::new();
        for v in values {
            if let Some(g) = table.spectrum.group_near(*v, tol) {
                basis.extend(g.basis.iter().cloned());
            }
        }
        basis
    };
    Ok(DecompositionCheck {
        q_angle: max_principal_angle(&gather(&q_values), &model.q_basis),
        c_angle: max_principal_angle(&gather(&c_values), &model.c_basis),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::horosphere_spectrum;
    use crate::roots::iwasawa_spectrum;

    #[test]
    fn generic_rows_merge_at_coincidences() {
        for m in 2..=4 {
            for t in [0.0, 0.5f64.atan(), FRAC_PI_4] {
                let a = expected_table(ClosedForm::Horosphere { m, t }).unwrap();
                let b = expected_table(ClosedForm::HorosphereMerged { m, t }).unwrap();
                let ra: Vec<_> = a.nonempty().map(|r| (r.multiplicity, r.value)).collect();
                let rb: Vec<_> = b.nonempty().map(|r| (r.multiplicity, r.value)).collect();
                assert_eq!(ra.len(), rb.len(), "m={m} t={t}");
                for (x, y) in ra.iter().zip(&rb) {
                    assert_eq!(x.0, y.0);
                    assert!((x.1 - y.1).abs() < 1e-15);
                }
                let labels: Vec<String> = b.nonempty().map(|r| r.label.clone()).collect();
                assert!(a.labels_match(&labels), "m={m} t={t}");
            }
        }
    }

    #[test]
    fn merged_rows_match_both_horosphere_methods() {
        for m in 2..=4 {
            let ctx = Grassmannian::with_defaults(m).unwrap();
            for t in [0.0, 0.5f64.atan(), FRAC_PI_4] {
                let e = expected_table(ClosedForm::HorosphereMerged { m, t }).unwrap();
                let h = horosphere_spectrum(&ctx, t).unwrap();
                assert!(e.compare(&h.spectrum).passes(1e-12), "m={m} t={t}");
                assert!(e.labels_match(&h.labels), "m={m} t={t} {:?}", h.labels);
                let i = iwasawa_spectrum(ctx.roots().unwrap(), t, ctx.tol()).unwrap();
                assert!(e.compare(&i).passes(1e-12), "m={m} t={t}");
            }
        }
    }

    #[test]
    fn jacobi_rows_keep_empty_group() {
        let e = expected_table(ClosedForm::Jacobi {
            m: 2,
            case: SingularType::PerpType,
        })
        .unwrap();
        assert_eq!(e.rows.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![4, 0, 4]);
        assert_eq!(e.nonempty().count(), 2);
    }

    #[test]
    fn tube_tables_and_labels() {
        for kind in [
            TotallyGeodesicModelKind::Su { m: 2 },
            TotallyGeodesicModelKind::Su { m: 3 },
            TotallyGeodesicModelKind::Sp { n: 1 },
            TotallyGeodesicModelKind::Sp { n: 2 },
        ] {
            let ctx = Grassmannian::with_defaults(kind.ambient_m()).unwrap();
            let split = kind.split();
            for r in [0.25, 1.0, 2.0] {
                let e = expected_table(match kind {
                    TotallyGeodesicModelKind::Su { m } => ClosedForm::SuTube { m, r },
                    TotallyGeodesicModelKind::Sp { n } => ClosedForm::SpTube { n, r },
                })
                .unwrap();
                let t = tube_spectrum(&ctx, &split, r).unwrap();
                let cmp = e.compare(&t.spectrum);
                assert!(cmp.passes(1e-12), "{kind} r={r}: {cmp:?}");
                assert!(e.labels_match(&t.labels), "{kind} r={r}: {:?}", t.labels);
                for l in tube_label_check(&ctx, kind, &split, r).unwrap() {
                    assert_eq!(l.expected_dim, l.computed_dim, "{kind} r={r}: {l:?}");
                    assert!(l.angle < 1e-8, "{kind} r={r}: {l:?}");
                }
                let d = subbundle_decomposition(&ctx, kind, &split, r).unwrap();
                assert!(d.max() < 1e-8, "{kind} r={r}: {d:?}");
            }
        }
    }

    #[test]
    fn bad_params() {
        assert!(expected_table(ClosedForm::HorosphereMerged { m: 3, t: 0.3 }).is_err());
        assert!(expected_table(ClosedForm::SuTube { m: 3, r: 0.0 }).is_err());
        assert!(expected_table(ClosedForm::SpTube { n: 0, r: 1.0 }).is_err());
        assert!(expected_table(ClosedForm::Horosphere { m: 1, t: 0.0 }).is_err());
    }
}
