//! Orthogonality by quadrature, closed-form first moments and the Rodrigues
//! formula evaluated at a few points.

use meixner::mmp::{first_moment, moment_by_quadrature, orthogonality_residual, rodrigues_check, IndexPair, Weight};
use meixner::specfun::ModelParams;

fn main() -> meixner::Result<()> {
    let params = ModelParams::new(0.75, 0.2, -0.35)?;

    for (k1, k2) in [(2, 1), (3, 3), (5, 2)] {
        let idx = IndexPair::new(k1, k2);
        let orth = orthogonality_residual(idx, &params, 1e-8)?;
        println!("P_{{{k1},{k2}}}: worst relative orthogonality residual {:.2e}", orth.residual);

        for which in [Weight::First, Weight::Second] {
            let power = idx.get(which);
            let closed = first_moment(idx, &params, which).value();
            let (quad, _) = moment_by_quadrature(idx, &params, which, power, 1e-13)?;
            println!("  w{}: x^{power} moment closed {closed:.12e} quadrature {quad:.12e}", which.index());
        }
    }

    let idx = IndexPair::new(2, 2);
    for x in [-1.5, 0.0, 0.7, 2.3] {
        let r = rodrigues_check(idx, &params, x)?;
        println!("Rodrigues at x = {x:>5}: discrepancy {:.2e}, operator order {:.2e}", r.discrepancy, r.order_difference);
    }
    Ok(())
}
