//! Roots of the block symbol equation, the support constants and the
//! bisection check of the cut endpoints.

use meixner::toeplitz::{gamma1_endpoint_by_bisection, gamma2_endpoint_by_bisection, roots_z, supports};
use meixner::Complex64;

fn main() -> meixner::Result<()> {
    for b in [0.1, 1.0, 100.0] {
        let sup = supports(1.0, b)?;
        let e1 = gamma1_endpoint_by_bisection(1.0, b)?;
        let e2 = gamma2_endpoint_by_bisection(1.0, b)?;
        println!("b = {b}: c1 = {:.12}, c2 = {:.12}", sup.c1, sup.c2);
        println!("   bisection endpoints {e1:.12}, {e2:.12}");
    }

    let b = 1.0;
    for x in [Complex64::new(0.5, 0.0), Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.4), Complex64::new(1.0, 1.0)] {
        let r = roots_z(x, 1.0, b)?;
        let moduli: Vec<f64> = r.z.iter().map(|z| z.norm()).collect();
        println!("x = {x}: |z| = {moduli:.6?}, ties {:?}", r.ties);
    }
    Ok(())
}
