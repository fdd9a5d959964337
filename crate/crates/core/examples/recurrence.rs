//! Recurrence coefficients along the diagonal and the first few polynomials.
//!
//! ```bash
//! cargo run --example recurrence
//! ```

use meixner::mmp::{coefficient_vector, diagonal_index, recurrence_coeffs, IndexPair, Weight};
use meixner::specfun::ModelParams;

fn main() -> meixner::Result<()> {
    let params = ModelParams::new(0.5, 0.3, -0.4)?;

    println!("{:>4} {:>8} {:>22} {:>22} {:>22}", "k", "index", "a", "b", "c");
    for k in 0..8 {
        let idx = diagonal_index(k);
        let dir = if k % 2 == 0 { Weight::First } else { Weight::Second };
        let c = recurrence_coeffs(idx, &params, dir);
        println!("{:>4} {:>8} {:>22.15e} {:>22.15e} {:>22.15e}", k, format!("({},{})", idx.k1, idx.k2), c.a, c.b, c.c);
    }

    for (k1, k2) in [(1, 0), (1, 1), (2, 1), (2, 2)] {
        let coeffs = coefficient_vector(IndexPair::new(k1, k2), &params)?;
        println!("P_{{{k1},{k2}}} coefficients (low to high): {coeffs:?}");
    }
    Ok(())
}
