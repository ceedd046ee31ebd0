// From F to a set A of size `⌊p/2⌋`: random signs, clipping, the map to
// [0, 1], and randomized rounding.
//
//     cargo run --release --example gowers_set

use littlewood_zp::construct::{gowers_set_pipeline, ConstructionConfig};
use littlewood_zp::Result;

pub fn run() -> Result<()> {
    let p = 10_007;
    for seed in 0..3 {
        let cfg = ConstructionConfig {
            seed,
            ..ConstructionConfig::default()
        };
        let r = gowers_set_pipeline(p, &cfg)?;
        println!(
            "seed {seed}: moment {:.4} after {} draw(s), |A'| = {}, ||f||_∞ = {:.3}, rounding retries = {}",
            r.signs.moment,
            r.signs.draws,
            r.clip.a_prime.len(),
            r.linf,
            r.rounding.retries
        );
        println!(
            "    min|f~ * f~° - 1/4| = {:.3e} (predicted {:.3e}), p × that = {:.2} counts vs rounding noise {:.0}",
            r.dev_tilde_min, r.dev_tilde_predicted, r.count_level_target, r.rounding_noise
        );
        println!(
            "    |A| = {}, min_x ||A ∩ (A + x)| - p/4| = {}, rounding checks pass: {}",
            r.rounding.a.len(),
            r.rounding.final_min_dev,
            r.rounding.checks.all_pass()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
