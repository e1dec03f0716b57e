// The two tube centers are totally geodesic: their tangent spaces are Lie
// triple systems coming from theta-stable subalgebras.

use ncgrass::context::Grassmannian;
use ncgrass::models::{verify_totally_geodesic, TotallyGeodesicModelKind};
use ncgrass::rng::Sampler;

pub fn run_example(kind: TotallyGeodesicModelKind) -> ncgrass::Result<f64> {
    let ctx = Grassmannian::with_defaults(kind.ambient_m())?;
    let split = kind.split();
    let sub = kind.subalgebra();
    let mut sampler = Sampler::new(11);
    let report = verify_totally_geodesic(&ctx, &split, &sub, &mut sampler, 8)?;
    println!(
        "{kind}: dim T = {}, dim subalgebra = {}, normal type {}",
        split.tangent_basis.len(),
        sub.len(),
        kind.normal_type().name()
    );
    println!("  worst residual {:.1e}", report.max());
    Ok(report.max())
}

fn main() -> ncgrass::Result<()> {
    run_example(TotallyGeodesicModelKind::su(4)?)?;
    run_example(TotallyGeodesicModelKind::sp(2)?)?;
    Ok(())
}
