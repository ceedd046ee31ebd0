// Bohr sets with exact rational radii: size bounds, a regular radius in
// `[δ, 2δ)`, and the two cutoff estimates used by the decomposition.
//
//     cargo run --release --example bohr_regular

use littlewood_zp::bohr::{
    build_bohr, character_flatness, cutoff_shift_deviation, find_regular_value, size_bounds_check,
    verify_regular, CharacterSet, RationalRadius,
};
use littlewood_zp::Result;
use num_rational::BigRational;

pub fn run() -> Result<()> {
    let p = 100_003;
    let chars = CharacterSet::new(p, [1, 3])?;
    let d = chars.d() as i64;
    let delta = RationalRadius::from_ratio(1, 8)?;
    let eta = find_regular_value(&chars, &delta)?;
    let b = build_bohr(&chars, &eta);
    let bounds = size_bounds_check(&b);
    println!(
        "Γ = {:?}, η = {eta} (regular: {}), |B| = {}, lower bound ok: {}, doubling ok: {}",
        chars.gamma(),
        verify_regular(&chars, &eta),
        b.size(),
        bounds.lower_ok,
        bounds.doubling_ok
    );

    // translates by elements of a much smaller Bohr set barely move β
    let eps = 0.25;
    let eta_small = eta.mul(&BigRational::new(1.into(), (800 * d).into()))?;
    let small = build_bohr(&chars, &eta_small);
    let worst = small
        .elements()
        .iter()
        .map(|&y| cutoff_shift_deviation(&b, y))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!(
        "|B(Γ, εη/200d)| = {}, max shift deviation = {worst:.4} <= ε = {eps}",
        small.size()
    );

    let (k1, k2) = (0.5, 0.5);
    let eta2 = eta.mul(&BigRational::new(1.into(), (800 * d).into()))?;
    let flat = character_flatness(&b, &eta2, k1)?;
    println!("character flatness at κ₁ = {k1}: {flat:.4} <= κ₂ = {k2}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
