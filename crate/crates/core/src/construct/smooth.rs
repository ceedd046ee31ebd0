use serde::Serialize;

use super::kernel::{f2_eval, g2_l1_majorant};
use crate::error::{Error, Result};
use crate::report::{Check, CheckList};
use crate::zp::{
    forward_transform, inverse_transform, norms, spectral_l1, ResidueRep, Spectrum, ZpFunction,
};

/// Smallest modulus accepted by [`build_big_f`].
pub const P_MIN_CONSTRUCT: u64 = 101;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionConfig {
    /// Smoothing constant C of the box kernel.
    pub c_const: f64,
    /// c in the moment `E_x exp(c f(x)²)`.
    pub c_exp: f64,
    pub moment_threshold: f64,
    pub resample_cap: usize,
    pub round_retry_cap: usize,
    pub seed: u64,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig {
            c_const: 1000.0,
            c_exp: 0.05,
            moment_threshold: 3.0,
            resample_cap: 100,
            round_retry_cap: 50,
            seed: 0,
        }
    }
}

impl ConstructionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_const >= 1000.0) {
            return Err(Error::PreconditionFailed(format!(
                "C must be at least 1000, got {}",
                self.c_const
            )));
        }
        if !(self.c_exp > 0.0 && self.c_exp <= 0.125) {
            return Err(Error::PreconditionFailed(format!(
                "c_exp must lie in (0, 1/8], got {}",
                self.c_exp
            )));
        }
        if !(self.moment_threshold > 1.0) {
            return Err(Error::PreconditionFailed(
                "moment threshold must exceed 1".into(),
            ));
        }
        Ok(())
    }
}

/// `+1` on `|x̄/p| < 1/4`, `-1` elsewhere.
pub fn build_g1(p: u64) -> Result<ZpFunction> {
    if p < 3 {
        return Err(Error::PreconditionFailed(format!(
            "p must be at least 3, got {p}"
        )));
    }
    ZpFunction::from_fn(p, |x| {
        if 4 * ResidueRep::of(x, p).abs() < p {
            1.0
        } else {
            -1.0
        }
    })
}

/// `g2(x) = f2(x̄/p)`, including x = 0.
pub fn build_g2(p: u64, c: f64) -> Result<ZpFunction> {
    ZpFunction::from_fn(p, |x| {
        f2_eval(ResidueRep::of(x, p).get() as f64 / p as f64, c, p)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub p: u64,
    pub c_const: f64,
    #[serde(skip)]
    pub g1: ZpFunction,
    #[serde(skip)]
    pub g2: ZpFunction,
    #[serde(skip)]
    pub g3: ZpFunction,
    #[serde(skip)]
    pub g4: ZpFunction,
    #[serde(skip)]
    pub big_f: ZpFunction,
    #[serde(skip)]
    pub g2_hat: Spectrum,
    #[serde(skip)]
    pub big_f_hat: Spectrum,
    pub g4_spec_l1: f64,
    pub min_abs_f: f64,
    pub argmin_abs_f: u64,
    pub checks: CheckList,
}

fn min_nonzero_by(p: u64, f: impl Fn(u64) -> f64) -> f64 {
    (1..p).map(f).fold(f64::INFINITY, f64::min)
}

fn symmetry_deviation(s: &Spectrum) -> f64 {
    let p = s.p();
    (0..p)
        .map(|r| {
            let a = s.at(r);
            let b = s.at((p - r) % p);
            (a.re - b.re).abs().max(a.im.abs())
        })
        .fold(0.0, f64::max)
}

/// Builds `g1, ..., g4` and `F = g4/||g4^||_1`, checking each stated
/// inequality along the way. Fails with `CheckFailed` naming the first
/// violated check.
pub fn build_big_f(p: u64, cfg: &ConstructionConfig) -> Result<ConstructionReport> {
    let report = build_big_f_unchecked(p, cfg)?;
    report.checks.clone().into_result()?;
    Ok(report)
}

/// As [`build_big_f`], returning the report even when checks fail.
pub fn build_big_f_unchecked(p: u64, cfg: &ConstructionConfig) -> Result<ConstructionReport> {
    cfg.validate()?;
    if p < P_MIN_CONSTRUCT {
        return Err(Error::PreconditionFailed(format!(
            "p must be at least {P_MIN_CONSTRUCT}, got {p}"
        )));
    }
    let c = cfg.c_const;
    let pf = p as f64;
    let mut checks = CheckList::new();
    let rbar = |r: u64| ResidueRep::of(r, p).abs() as f64;

    let g1 = build_g1(p)?;
    let g1_hat = forward_transform(&g1);
    checks.push(Check::at_most(
        "g1_mean",
        norms(&g1).mean.abs(),
        1.0 / pf + 1e-15,
    ));
    // |g1^(r)| <= 2/(p |sin(πr/p)|) <= 1/|r̄|
    let g1_decay = (1..p)
        .map(|r| {
            g1_hat.at(r).norm() * pf * (std::f64::consts::PI * r as f64 / pf).sin().abs() / 2.0
        })
        .fold(0.0, f64::max);
    checks.push(Check::at_most("g1_decay_ok", g1_decay, 1.0 + 1e-9));

    let g2 = build_g2(p, c)?;
    let g2_hat = forward_transform(&g2);
    checks.push(Check::at_most(
        "g2_symmetric",
        symmetry_deviation(&g2_hat),
        1e-12,
    ));
    checks.push(Check::at_least(
        "g2_nonneg",
        (0..p)
            .map(|r| g2_hat.at(r).re)
            .fold(f64::INFINITY, f64::min),
        -1e-9,
    ));
    checks.push(Check::at_least(
        "g2_lower_ok",
        min_nonzero_by(p, |r| g2_hat.at(r).re * rbar(r)),
        1.0 - 4.0 / (c * c),
    ));
    checks.push(Check::at_most(
        "g2_l1",
        spectral_l1(&g2_hat),
        g2_l1_majorant(c, p),
    ));
    checks.push(Check::at_least("g2_zero_ge_one", g2.at(0) - g2.at(1), 0.0));

    let g3 = g1.add(&g2)?;
    let g3_hat = forward_transform(&g3);
    checks.push(Check::at_least(
        "g3_spec_nonneg",
        min_nonzero_by(p, |r| g3_hat.at(r).re),
        -1e-9,
    ));
    checks.push(Check::at_least("g3_floor_ok", g3.min_abs().1, 0.25));

    let m3 = norms(&g3).mean;
    let g4 = g3.map(|v| v - m3)?;
    checks.push(Check::at_least("g4_floor_ok", g4.min_abs().1, 0.2));
    let g4_hat = forward_transform(&g4);
    let g4_spec_l1 = spectral_l1(&g4_hat);

    let big_f = g4.scale(1.0 / g4_spec_l1);
    let big_f_hat = forward_transform(&big_f);
    checks.push(Check::at_least(
        "F_spec_nonneg",
        (0..p)
            .map(|r| big_f_hat.at(r).re)
            .fold(f64::INFINITY, f64::min),
        -1e-9,
    ));
    checks.push(Check::at_most(
        "F_spec_symmetric",
        symmetry_deviation(&big_f_hat),
        1e-12,
    ));
    checks.push(Check::at_most(
        "F_spec_l1",
        spectral_l1(&big_f_hat),
        1.0 + 1e-9,
    ));
    checks.push(Check::at_most("F_mean", norms(&big_f).mean.abs(), 1e-9));
    let (argmin, min_abs_f) = big_f.min_abs();
    checks.push(Check::at_least(
        "F_min_abs",
        min_abs_f,
        0.2 / g4_spec_l1 - 1e-9,
    ));

    Ok(ConstructionReport {
        p,
        c_const: c,
        g1,
        g2,
        g3,
        g4,
        big_f,
        g2_hat,
        big_f_hat,
        g4_spec_l1,
        min_abs_f,
        argmin_abs_f: argmin,
        checks,
    })
}

/// `F^(r)`, with `F^(0)` taken as exactly 0.
fn sqrt_input(report: &ConstructionReport, r: usize) -> f64 {
    if r == 0 {
        0.0
    } else {
        report.big_f_hat.at(r as u64).re
    }
}

/// f with `f^ = sqrt(F^)`: real, mean zero, `f * f° = F`.
pub fn sqrt_spectrum(report: &ConstructionReport) -> Result<ZpFunction> {
    let p = report.p;
    let h = (p as usize).div_ceil(2);
    let mut clipped = 0.0;
    let half: Vec<f64> = (0..h)
        .map(|r| {
            let v = sqrt_input(report, r);
            if v < 0.0 {
                clipped += -v;
            }
            v.max(0.0).sqrt()
        })
        .collect();
    if clipped > 1e-6 {
        return Err(Error::NegativeSpectrum(clipped));
    }
    inverse_transform(&Spectrum::from_half_real(p, &half)?)
}

/// `f_ξ` with `f_ξ^(r) = ξ_r sqrt(F^(r))` for `0 <= r < p/2`, extended evenly.
pub fn signed_sqrt(report: &ConstructionReport, xi: &[i8]) -> Result<ZpFunction> {
    let p = report.p;
    let h = (p as usize).div_ceil(2);
    if xi.len() != h {
        return Err(Error::LengthMismatch {
            expected: h,
            actual: xi.len(),
        });
    }
    let half: Vec<f64> = (0..h)
        .map(|r| xi[r] as f64 * sqrt_input(report, r).max(0.0).sqrt())
        .collect();
    inverse_transform(&Spectrum::from_half_real(p, &half)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zp::autocorrelation;

    #[test]
    fn g1_small_case() {
        let g = build_g1(5).unwrap();
        assert_eq!(g.values(), &[1.0, 1.0, -1.0, -1.0, 1.0]);
        assert!((norms(&g).mean - 0.2).abs() < 1e-15);
    }

    #[test]
    fn stated_g1_decay_fails_at_r_one() {
        // |g1^(1)| ≈ 2/π exceeds 1/(2·1); the bound 1/|r̄| holds
        let p = 101;
        let s = forward_transform(&build_g1(p).unwrap());
        assert!(s.at(1).norm() > 0.5);
        for r in 1..p {
            assert!(s.at(r).norm() <= 1.0 / ResidueRep::of(r, p).abs() as f64 + 1e-12);
        }
    }

    #[test]
    fn construction_passes_at_small_moduli() {
        for p in [103, 1009] {
            let rep = build_big_f(p, &ConstructionConfig::default()).unwrap();
            assert!(rep.checks.all_pass());
            assert!(rep.min_abs_f * rep.g4_spec_l1 >= 0.2 - 1e-6);
        }
    }

    #[test]
    fn mean_shift_breaks_the_g4_floor_at_101() {
        // E g3 ≈ 0.126 at p = 101: the mean of g2 is about (2/p) log(C/2π)
        let rep = build_big_f_unchecked(101, &ConstructionConfig::default()).unwrap();
        let failed: Vec<&str> = rep.checks.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["g4_floor_ok", "F_min_abs"]);
        assert!(rep.g3.min_abs().1 >= 0.25);
        assert!(rep.g4.min_abs().1 > 0.19);
        assert!(matches!(
            build_big_f(101, &ConstructionConfig::default()),
            Err(Error::CheckFailed { .. })
        ));
    }

    #[test]
    fn g2_spectrum_matches_poisson_sum() {
        let (p, c) = (101u64, 1000.0);
        let g2 = build_g2(p, c).unwrap();
        let s = forward_transform(&g2);
        for r in [1u64, 2, 7, 50] {
            let mut terms: Vec<f64> = (-2_000_000i64..=2_000_000)
                .map(|k| super::super::kernel::f2_hat(r as i64 + k * p as i64, c, p))
                .collect();
            terms.sort_by(f64::total_cmp);
            let poisson = crate::numeric::pairwise_sum(&terms);
            assert!((s.at(r).re - poisson).abs() < 1e-8, "r = {r}");
        }
    }

    #[test]
    fn small_c_is_rejected() {
        let cfg = ConstructionConfig {
            c_const: 10.0,
            ..Default::default()
        };
        assert!(build_big_f(101, &cfg).is_err());
        assert!(build_big_f(97, &ConstructionConfig::default()).is_err());
    }

    #[test]
    fn square_root_reproduces_f() {
        let rep = build_big_f(1009, &ConstructionConfig::default()).unwrap();
        let f = sqrt_spectrum(&rep).unwrap();
        let n = norms(&f);
        assert!(n.mean.abs() < 1e-10);
        assert!((n.l2 * n.l2 - spectral_l1(&rep.big_f_hat)).abs() < 1e-9);
        assert!(autocorrelation(&f).max_abs_diff(&rep.big_f) < 1e-8);
        let plus = vec![1i8; 505];
        assert!(signed_sqrt(&rep, &plus).unwrap().max_abs_diff(&f) < 1e-14);
    }
}
