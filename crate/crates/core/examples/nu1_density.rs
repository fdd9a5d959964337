//! The first equilibrium measure: closed form, the s-average of the cut
//! measures, and the zero counting measure of the polynomials.

use meixner::equilibrium::{nu1_cdf, nu1_density_averaged, nu1_density_closed, nu1_mass};
use meixner::mmp::zero_counting_cdf;
use meixner::specfun::ModelParams;
use meixner::toeplitz::support_constants;

fn main() -> meixner::Result<()> {
    let b = 1.0;
    let (c1, _) = support_constants(b)?;
    println!("support [-{c1:.6}, {c1:.6}], mass {:.12}", nu1_mass(b)?);

    println!("{:>10} {:>20} {:>20}", "x", "closed", "averaged");
    for i in 1..8 {
        let x = c1 * i as f64 / 8.0;
        println!("{x:>10.5} {:>20.14} {:>20.14}", nu1_density_closed(x, b)?, nu1_density_averaged(x, b)?);
    }

    let params = ModelParams::from_b(0.5, b)?;
    for n in [50, 100, 200] {
        let emp = zero_counting_cdf(n, &params)?;
        let d = emp.kolmogorov_distance(|x| nu1_cdf(x, b).unwrap_or(f64::NAN));
        println!("n = {n}: Kolmogorov distance to nu1 {d:.4e}");
    }
    Ok(())
}
