//! Real zeros of the diagonal polynomials and the interlacing of neighbours.

use meixner::mmp::{all_pair_zeros, diagonal_zeros, interlacing_from_zeros, IndexPair};
use meixner::specfun::ModelParams;

fn main() -> meixner::Result<()> {
    let params = ModelParams::from_b(0.5, 1.0)?;

    let n = 40;
    let zeros = diagonal_zeros(n, 1, &params)?;
    let first = zeros.first().copied().unwrap_or(f64::NAN);
    let last = zeros.last().copied().unwrap_or(f64::NAN);
    println!("Q_{{{n},{n}}} has {} real zeros in [{first:.6}, {last:.6}]", zeros.len());
    println!("scaled by n: [{:.6}, {:.6}]", first / n as f64, last / n as f64);

    let max_degree = 12;
    let all = all_pair_zeros(max_degree, &params)?;
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    for &idx in all.zeros.keys() {
        if idx.k1 + idx.k2 == 0 {
            continue;
        }
        let report = interlacing_from_zeros(idx, |q| all.zeros.get(&q).cloned().unwrap_or_default());
        worst = worst.min(report.margin);
        if !report.interlaces {
            failures += 1;
        }
    }
    println!("pairs up to degree {max_degree}: {failures} interlacing failures, smallest gap {worst:.3e}");

    let idx = IndexPair::new(3, 2);
    println!("zeros of P_{{3,2}}: {:?}", all.zeros[&idx]);
    Ok(())
}
