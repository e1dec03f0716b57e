// Restricted roots of SU(2,m)/S(U2 Um) and the multiplicities of their root
// spaces in p.

use ncgrass::context::Grassmannian;
use ncgrass::roots::PositiveRoot;

/// Returns `(label, multiplicity)` for every positive root.
pub fn run_example(m: usize) -> ncgrass::Result<Vec<(String, usize)>> {
    let ctx = Grassmannian::with_defaults(m)?;
    let roots = ctx.roots()?;
    println!("m = {m}, dim p = {}, dim k0 = {}", ctx.dim(), roots.k0_dim);
    let mut out = Vec::new();
    for p in PositiveRoot::ALL {
        let mult = roots.space(p).multiplicity;
        println!("  {:>6}  mult {mult}", p.label());
        out.push((p.label(), mult));
    }
    println!("decomposition residual {:.1e}", roots.residual);
    Ok(out)
}

fn main() -> ncgrass::Result<()> {
    for m in [2, 3, 5] {
        run_example(m)?;
    }
    Ok(())
}
