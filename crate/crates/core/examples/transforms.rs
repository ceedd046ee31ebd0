// Fourier transforms on Z/pZ: the direct and fast paths agree, Parseval
// holds, and convolution becomes pointwise multiplication.
//
//     cargo run --release --example transforms

use littlewood_zp::rng::random_unit_function;
use littlewood_zp::zp::{
    convolve, forward_direct, forward_fast, forward_transform, norms, spectral_energy,
};
use littlewood_zp::Result;

pub fn run() -> Result<()> {
    for p in [101u64, 1009, 10_007] {
        let f = random_unit_function(p, 1, 0)?;
        let g = random_unit_function(p, 1, 1)?;
        let fast = forward_fast(&f);
        let direct = forward_direct(&f);
        let n = norms(&f);
        let parseval = (spectral_energy(&fast) - n.l2 * n.l2).abs() / (n.l2 * n.l2);
        let conv = forward_transform(&convolve(&f, &g)?);
        let product = fast.mul_pointwise(&forward_transform(&g))?;
        println!(
            "p = {p:>6}: |fast - direct| = {:.2e}, Parseval residual = {parseval:.2e}, convolution residual = {:.2e}",
            fast.max_abs_diff(&direct),
            conv.max_abs_diff(&product)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
