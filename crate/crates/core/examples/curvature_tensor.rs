// The curvature tensor two ways: from brackets `-[[X,Y],Z]` and from the
// closed quaternionic formula. Sectional curvatures land in [-4, -1/2].

use ncgrass::context::Grassmannian;
use ncgrass::curvature::{curvature_agreement, sectional_curvature};
use ncgrass::rng::Sampler;

/// Returns the worst disagreement and the observed sectional range.
pub fn run_example(m: usize, samples: usize) -> ncgrass::Result<(f64, f64, f64)> {
    let ctx = Grassmannian::with_defaults(m)?;
    let mut s = Sampler::new(7);
    let mut worst: f64 = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let (x, y, z) = (s.tangent(m), s.tangent(m), s.tangent(m));
        worst = worst.max(curvature_agreement(ctx.quaternions(), &x, &y, &z));
        let k = sectional_curvature(&x, &y, ctx.tol().eps_rank)?;
        lo = lo.min(k);
        hi = hi.max(k);
    }
    println!("formula vs bracket: {worst:.2e}");
    println!("sectional curvature in [{lo:.4}, {hi:.4}]");
    Ok((worst, lo, hi))
}

fn main() -> ncgrass::Result<()> {
    run_example(3, 500)?;
    Ok(())
}
