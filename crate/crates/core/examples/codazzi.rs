// Sign of the curvature term in the Codazzi equation, measured on a
// horosphere and on a tube.

use ncgrass::context::Grassmannian;
use ncgrass::hypersurface::{build_model, codazzi_check};
use ncgrass::models::TotallyGeodesicModelKind;
use ncgrass::rng::Sampler;
use ncgrass::roots::weyl_chamber_vector;

pub fn run_example(m: usize, samples: usize) -> ncgrass::Result<Vec<f64>> {
    let ctx = Grassmannian::with_defaults(m)?;
    let mut s = Sampler::new(3);
    let pairs: Vec<_> = (0..samples).map(|_| (s.tangent(m), s.tangent(m))).collect();
    let normals = [
        ("H_0", weyl_chamber_vector(m, 0.0)?),
        ("H_pi/4", weyl_chamber_vector(m, std::f64::consts::FRAC_PI_4)?),
        ("su tube normal", TotallyGeodesicModelKind::su(m)?.split().normal),
    ];
    let mut signs = Vec::new();
    for (name, n) in normals {
        let model = build_model(&ctx, &n)?;
        let c = codazzi_check(&model, &pairs);
        println!("{name:<15} sign {:+}  residual {:.1e}", c.sign, c.residual);
        signs.push(c.sign);
    }
    Ok(signs)
}

fn main() -> ncgrass::Result<()> {
    run_example(3, 200)?;
    Ok(())
}
