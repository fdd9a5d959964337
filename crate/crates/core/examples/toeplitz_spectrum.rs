//! Eigenvalues of block Toeplitz truncations against the limiting measure.

use meixner::toeplitz::toeplitz_spectrum;

fn main() -> meixner::Result<()> {
    let b = 1.0;
    for n_blocks in [25, 50, 100, 200] {
        let spec = toeplitz_spectrum(1.0, b, n_blocks)?;
        let lo = spec.eigenvalues.first().copied().unwrap_or(f64::NAN);
        let hi = spec.eigenvalues.last().copied().unwrap_or(f64::NAN);
        println!(
            "{n_blocks:>4} blocks: {} eigenvalues in [{lo:.5}, {hi:.5}], Kolmogorov distance {:.4e}",
            spec.eigenvalues.len(),
            spec.kolmogorov
        );
    }
    Ok(())
}
