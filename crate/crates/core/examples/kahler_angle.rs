// Kähler angle of `H_t = cos t e1 + sin t e2` and its singular type.

use ncgrass::context::Grassmannian;
use ncgrass::roots::weyl_chamber_vector;
use ncgrass::structures::{classify_vector, kahler_angle};

pub fn run_example(m: usize) -> ncgrass::Result<Vec<(f64, f64)>> {
    let ctx = Grassmannian::with_defaults(m)?;
    let q = ctx.quaternions();
    let mut out = Vec::new();
    for k in 0..=8 {
        let t = k as f64 * std::f64::consts::FRAC_PI_4 / 8.0;
        let h = weyl_chamber_vector(m, t)?;
        let angle = kahler_angle(q, &h)?;
        let kind = classify_vector(q, &h, ctx.tol().eps_angle)?;
        println!("t = {t:.4}  angle = {angle:.4}  {}", kind.name());
        out.push((t, angle));
    }
    Ok(out)
}

fn main() -> ncgrass::Result<()> {
    run_example(3)?;
    Ok(())
}
