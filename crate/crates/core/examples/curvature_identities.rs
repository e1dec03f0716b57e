// Relations among principal curvatures `alpha`, `beta`, `lambda` for
// hypersurfaces with invariant C and Q.

use ncgrass::context::Grassmannian;
use ncgrass::hypersurface::{horosphere_spectrum, identity_suite, tube_spectrum, IdentityReport};
use ncgrass::models::TotallyGeodesicModelKind;
use ncgrass::structures::SingularType;

fn show(title: &str, report: &IdentityReport) {
    println!("{title}");
    for (name, v) in &report.roles {
        println!("  {name} = {v:.6}");
    }
    for c in &report.checks {
        println!("  {:<40} {:.1e}", c.name, c.residual);
    }
}

pub fn run_example(m: usize) -> ncgrass::Result<f64> {
    let ctx = Grassmannian::with_defaults(m)?;
    let mut worst: f64 = 0.0;
    let tube = tube_spectrum(&ctx, &TotallyGeodesicModelKind::su(m)?.split(), 0.7)?;
    let rep = identity_suite(&ctx, &tube, SingularType::ComplexType)?;
    show("tube around su, r = 0.7", &rep);
    worst = worst.max(rep.max_residual());
    let horo = horosphere_spectrum(&ctx, std::f64::consts::FRAC_PI_4)?;
    let rep = identity_suite(&ctx, &horo, SingularType::PerpType)?;
    show("horosphere, t = pi/4", &rep);
    worst = worst.max(rep.max_residual());
    Ok(worst)
}

fn main() -> ncgrass::Result<()> {
    run_example(4)?;
    Ok(())
}
