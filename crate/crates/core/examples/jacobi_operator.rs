// Jacobi operator `R_X = R(., X)X` of the two kinds of singular unit vector.

use ncgrass::context::Grassmannian;
use ncgrass::curvature::{jacobi_eigenspace_check, jacobi_spectrum};
use ncgrass::roots::weyl_chamber_vector;

/// Spectra of `R_X` for `X = e1` (complex type) and `X = H_{pi/4}` (perp type).
pub fn run_example(m: usize) -> ncgrass::Result<Vec<Vec<(f64, usize)>>> {
    let ctx = Grassmannian::with_defaults(m)?;
    let mut out = Vec::new();
    for (name, t) in [("complex", 0.0), ("perp", std::f64::consts::FRAC_PI_4)] {
        let x = weyl_chamber_vector(m, t)?;
        let spec = jacobi_spectrum(&ctx, &x)?;
        let check = jacobi_eigenspace_check(&ctx, &x)?;
        let groups: Vec<(f64, usize)> = spec.values().into_iter().zip(spec.multiplicities()).collect();
        println!("{name}: {groups:?}");
        for row in &check.rows {
            println!("  {:>5}  {:<24} angle {:.1e}", row.value, row.label, row.angle);
        }
        out.push(groups);
    }
    Ok(out)
}

fn main() -> ncgrass::Result<()> {
    run_example(4)?;
    Ok(())
}
