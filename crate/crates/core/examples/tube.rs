// Tubes around the totally geodesic SU(2,m-1)/S(U2 Um-1) and
// Sp(1,n)/Sp1 Spn, with principal curvatures checked against closed forms.

use ncgrass::context::Grassmannian;
use ncgrass::hypersurface::tube_spectrum;
use ncgrass::models::{expected_table, ClosedForm, TotallyGeodesicModelKind};

pub fn run_example(kind: TotallyGeodesicModelKind, r: f64) -> ncgrass::Result<f64> {
    let ctx = Grassmannian::with_defaults(kind.ambient_m())?;
    let table = tube_spectrum(&ctx, &kind.split(), r)?;
    let expected = expected_table(match kind {
        TotallyGeodesicModelKind::Su { m } => ClosedForm::SuTube { m, r },
        TotallyGeodesicModelKind::Sp { n } => ClosedForm::SpTube { n, r },
    })?;
    println!("{kind}, r = {r}");
    for (g, side) in table.spectrum.groups.iter().zip(&table.labels) {
        println!("  {:>10.6}  x{:<3} {side}", g.value, g.multiplicity());
    }
    let cmp = expected.compare(&table.spectrum);
    println!("  deviation from closed form {:.1e}", cmp.value_error);
    Ok(cmp.value_error)
}

fn main() -> ncgrass::Result<()> {
    run_example(TotallyGeodesicModelKind::su(3)?, 1.0)?;
    run_example(TotallyGeodesicModelKind::sp(2)?, 1.0)?;
    Ok(())
}
