// Principal curvatures of horospheres whose normal `H_t` sweeps the closed
// Weyl chamber, compared with the root-space prediction.

use ncgrass::context::Grassmannian;
use ncgrass::hypersurface::horosphere_spectrum;
use ncgrass::roots::iwasawa_spectrum;

pub fn run_example(m: usize, t: f64) -> ncgrass::Result<Vec<(f64, usize, String)>> {
    let ctx = Grassmannian::with_defaults(m)?;
    let table = horosphere_spectrum(&ctx, t)?;
    let predicted = iwasawa_spectrum(ctx.roots()?, t, ctx.tol())?;
    println!("m = {m}, t = {t:.4}");
    let mut out = Vec::new();
    for (g, label) in table.spectrum.groups.iter().zip(&table.labels) {
        println!("  {:>10.6}  x{:<3} {label}", g.value, g.multiplicity());
        out.push((g.value, g.multiplicity(), label.clone()));
    }
    assert_eq!(predicted.multiplicities(), table.multiplicities());
    Ok(out)
}

fn main() -> ncgrass::Result<()> {
    run_example(3, 0.0)?;
    run_example(3, 0.5_f64.atan())?;
    run_example(3, 0.3)?;
    run_example(3, std::f64::consts::FRAC_PI_4)?;
    Ok(())
}
