use num_complex::Complex64;

use super::radius::RationalRadius;
use super::regular::verify_regular_with;
use super::set::{BohrProfile, BohrSet};
use crate::error::{Error, Result};
use crate::numeric::{chord, pairwise_sum_complex_by, Twiddles};
use crate::zp::{forward_transform, Spectrum, ZpFunction};

/// The normalised cutoff `β(x) = 1_B(x) / |B|` of a Bohr set.
#[derive(Debug, Clone)]
pub struct BohrCutoff {
    source: BohrSet,
}

impl BohrCutoff {
    pub fn source(&self) -> &BohrSet {
        &self.source
    }

    /// `β` as a function on Z/pZ.
    pub fn values(&self) -> ZpFunction {
        let p = self.source.p();
        let w = 1.0 / self.source.size() as f64;
        ZpFunction::from_fn(p, |x| if self.source.contains(x) { w } else { 0.0 })
            .expect("cutoff values are finite")
    }

    /// `p β`, whose mean is exactly 1.
    pub fn scaled_values(&self) -> ZpFunction {
        self.values().scale(self.source.p() as f64)
    }
}

pub fn cutoff(b: &BohrSet) -> BohrCutoff {
    BohrCutoff { source: b.clone() }
}

/// `β^(γ) = (1/|B|) Σ_{x∈B} e(γx/p)`, so `β^(0) = 1`.
pub fn cutoff_spectrum(b: &BohrSet) -> Spectrum {
    forward_transform(&cutoff(b).scaled_values())
}

/// Same quantity as [`cutoff_spectrum`], summed directly over the members.
pub fn cutoff_spectrum_direct(b: &BohrSet) -> Vec<Complex64> {
    let p = b.p();
    let tw = Twiddles::new(p);
    let el = b.elements();
    let inv = 1.0 / el.len() as f64;
    (0..p)
        .map(|r| pairwise_sum_complex_by(el.len(), &|i| tw.e(r * el[i])) * inv)
        .collect()
}

fn require_regular(profile: &BohrProfile, eta: &RationalRadius) -> Result<()> {
    if verify_regular_with(profile, eta) {
        Ok(())
    } else {
        Err(Error::NotRegular(eta.to_string()))
    }
}

/// `Σ_x |β(x+y) - β(x)| = |B △ (B - y)| / |B|`, computed by exact counting.
pub fn cutoff_shift_deviation(b: &BohrSet, y: u64) -> Result<f64> {
    let profile = BohrProfile::new(b.chars());
    require_regular(&profile, b.eta())?;
    Ok(shift_deviation_count(b, y) as f64 / b.size() as f64)
}

/// `|B △ (B - y)|`.
pub fn shift_deviation_count(b: &BohrSet, y: u64) -> usize {
    let p = b.p();
    let y = y % p;
    (0..p)
        .filter(|&x| b.contains(x) != b.contains(x + y))
        .count()
}

/// `max |1 - e(γy/p)|` over characters γ with `|β^(γ)| >= κ₁` and
/// `y ∈ B(Γ, η₂)`.
pub fn character_flatness(b: &BohrSet, eta2: &RationalRadius, kappa1: f64) -> Result<f64> {
    let profile = BohrProfile::new(b.chars());
    require_regular(&profile, b.eta())?;
    let small = profile.build(eta2);
    let spec = cutoff_spectrum(b);
    let p = b.p();
    let mut worst = 0.0f64;
    for (g, c) in spec.coeffs().iter().enumerate() {
        if g == 0 || c.norm() < kappa1 {
            continue;
        }
        for &y in small.elements() {
            let k = ((g as u128 * y as u128) % p as u128) as u64;
            worst = worst.max(chord(k, p));
        }
    }
    Ok(worst)
}
