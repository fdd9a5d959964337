//! Solves the constrained vector equilibrium problem and samples the
//! variational residuals on both supports.

use meixner::equilibrium::{el_residuals, solve};
use meixner::Complex64;

fn main() -> meixner::Result<()> {
    let res = solve(1.0, 201, 400, 20.0)?;
    println!("c1 = {:.10}, c2 = {:.10}", res.c1, res.c2);
    println!("V slope {:.10}, sigma density {:.10}", res.v_slope, res.sigma_density);
    println!("Lagrange constant {:.13}", res.lagrange_l);
    println!("saturation deviation {:.2e}, constraint margin {:.4}", res.saturation_deviation, res.constraint_margin);
    println!("nu1 mass {:.10}, nu2 mass {:.10}", res.nu1.mass, res.nu2.mass);

    for f in [0.0, 0.5, 0.9, 1.2] {
        let r = el_residuals(Complex64::new(f * res.c1, 0.0), &res)?;
        println!("R1({:.3}) = {:+.3e}", f * res.c1, r.r1.unwrap_or(f64::NAN));
    }
    for f in [0.3, 0.8, 1.5, 3.0] {
        let r = el_residuals(Complex64::new(0.0, f * res.c2), &res)?;
        println!("R2({:.3}i) = {:+.3e}", f * res.c2, r.r2.unwrap_or(f64::NAN));
    }
    Ok(())
}
