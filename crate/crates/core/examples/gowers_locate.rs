// For half-density sets A and B, finds a shift x with `|A ∩ (B + x)|` close
// to `|A||B|/p`.
//
//     cargo run --release --example gowers_locate

use littlewood_zp::decompose::{gowers_locate_sets, EpsChoice};
use littlewood_zp::rng::random_half_set;
use littlewood_zp::search::deviation_profile;
use littlewood_zp::zp::{convolve, reflect, ZpFunction};
use littlewood_zp::Result;

pub fn run() -> Result<()> {
    let p = 10_007;
    for trial in 0..3 {
        let a = random_half_set(p, 9, 2 * trial);
        let b = random_half_set(p, 9, 2 * trial + 1);
        let loc = gowers_locate_sets(p, &a, &b, EpsChoice::default())?;
        let fg = convolve(
            &ZpFunction::indicator(p, &a)?,
            &reflect(&ZpFunction::indicator(p, &b)?),
        )?;
        let target = (a.len() * b.len()) as f64 / (p * p) as f64;
        let best = fg
            .values()
            .iter()
            .map(|v| (v - target).abs())
            .fold(f64::INFINITY, f64::min);
        println!(
            "trial {trial}: x = {}, deviation = {:.3e} (<= 8ε = {}), best over all x = {best:.3e}",
            loc.x,
            loc.deviation,
            8.0 * loc.epsilon
        );
    }
    let prof = deviation_profile(p, &random_half_set(p, 9, 100))?;
    println!(
        "random A: min_x ||A ∩ (A + x)| - p/4| = {} at x = {}, max = {}",
        prof.min_abs, prof.argmin, prof.max_abs
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
