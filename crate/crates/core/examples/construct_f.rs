// Builds the smoothed autocorrelation F with nonnegative spectrum and
// `|F| >> 1/log p`, then its square root f with `f * f° = F`.
//
//     cargo run --release --example construct_f

use littlewood_zp::construct::{build_big_f, sqrt_spectrum, ConstructionConfig};
use littlewood_zp::zp::{autocorrelation, norms};
use littlewood_zp::Result;

pub fn run() -> Result<()> {
    let cfg = ConstructionConfig::default();
    for p in [1009u64, 10_007] {
        let r = build_big_f(p, &cfg)?;
        println!(
            "p = {p}: min|F| = {:.5} at x = {}, min|F|·ln p = {:.4}, ||g4^||_1 = {:.3}",
            r.min_abs_f,
            r.argmin_abs_f,
            r.min_abs_f * (p as f64).ln(),
            r.g4_spec_l1
        );
        for c in &r.checks.checks {
            println!(
                "    {:<20} observed {:>12.5e}  bound {:>12.5e}  {}",
                c.name, c.observed, c.bound, c.pass
            );
        }
        let f = sqrt_spectrum(&r)?;
        let n = norms(&f);
        println!(
            "    f = sqrt(F): E f = {:.1e}, ||f||_2 = {:.6}, max|f * f° - F| = {:.1e}",
            n.mean,
            n.l2,
            autocorrelation(&f).max_abs_diff(&r.big_f)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
