// Splits `f = 2·1_A - 1` for an interval A, centred and scaled to
// `||f^||_1 = 1`, into a Bohr-smooth part, a part with small values on a
// Bohr set, and a part with small spectral mass, then checks the
// certificate independently.
//
//     cargo run --release --example decomposition

use littlewood_zp::decompose::{run_decomposition, validate_certificate, DecompositionParams};
use littlewood_zp::zp::{forward_transform, norms, spectral_l1, ZpFunction};
use littlewood_zp::Result;

pub fn run() -> Result<()> {
    let p = 1009;
    let a: Vec<u64> = (1..=p / 2).collect();
    let g = ZpFunction::indicator(p, &a)?.map(|v| 2.0 * v - 1.0)?;
    let mean = norms(&g).mean;
    let g = g.map(|v| v - mean)?;
    let f = g.scale(1.0 / spectral_l1(&forward_transform(&g)));
    for eps in [0.5, 0.25, 0.15] {
        let params = DecompositionParams::new(eps)?;
        let cert = run_decomposition(&f, &params)?;
        let checks = validate_certificate(&f, &cert);
        println!(
            "ε = {eps}: |Γ| = {}, outer steps = {}, ||f3^||_1 = {:.4}, U-window sup = {:.5}, η' = {:.3e}, validator: {}",
            cert.bounds.gamma_size,
            cert.bounds.outer_steps,
            cert.bounds.f3_spectral_l1,
            cert.bounds.u_window_sup,
            cert.eta_prime.to_f64(),
            if checks.all_pass() { "pass" } else { "FAIL" }
        );
        for stage in &cert.ledger {
            println!(
                "    j = {}: |B| = {}, |B'| = {}, |U| = {}, inner steps = {}, exit = {:?}",
                stage.j,
                stage.bohr_size,
                stage.bohr_prime_size,
                stage.u_set.len(),
                stage.steps.len(),
                stage.exit
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
