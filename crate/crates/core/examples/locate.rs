// Finds a small value of a mean-zero function with `||f^||_1 <= 1`, and
// turns it into a certified lower bound on `||(2·1_A - 1)^||_1`.
//
//     cargo run --release --example locate

use littlewood_zp::decompose::{
    feasibility_margin, littlewood_lower_report, theorem2_locate, EpsChoice,
};
use littlewood_zp::rng::{random_half_set, random_unit_function};
use littlewood_zp::Result;

pub fn run() -> Result<()> {
    let p = 10_007;
    let f = random_unit_function(p, 5, 0)?;
    let loc = theorem2_locate(&f, EpsChoice::default())?;
    let true_min = f.min_abs().1;
    println!(
        "ε = {}: x = {}, |f(x)| = {:.3e} (<= 8ε = {}), full-scan min = {true_min:.3e}, |B'| = {}, lemma margin = {:.3e}",
        loc.epsilon,
        loc.x_found,
        loc.value.abs(),
        8.0 * loc.epsilon,
        loc.small_bohr_size,
        feasibility_margin(&loc.certificate)
    );

    let interval: Vec<u64> = (1..=p / 2).collect();
    for (name, a) in [("interval", interval), ("random", random_half_set(p, 5, 1))] {
        let r = littlewood_lower_report(p, &a, EpsChoice::default())?;
        println!(
            "{name:>8} set: ||1_A^||_1 = {:.4}, ||(2·1_A - 1)^||_1 = {:.4} >= 1/(8ε) = {}",
            r.spectral_l1, r.signed_l1, r.bound_8eps
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
