use serde::Serialize;

use super::certificate::DecompositionCertificate;
use super::engine::run_decomposition;
use super::params::{auto_epsilon_start, DecompositionParams, EpsChoice, MAX_EPSILON};
use crate::bohr::{ratio_to_f64, BohrSet};
use crate::error::{Error, Result};
use crate::zp::{convolve, forward_transform, norms, spectral_l1, ZpFunction};

/// Values at most this large count as zero in the intermediate-value walk.
pub const ZERO_TOL: f64 = 1e-12;

/// Walks `0, t, 2t, ...` (t the smallest nonzero member of `b_small`) and
/// returns a point where `f1` vanishes or changes sign, choosing the
/// endpoint of smaller magnitude.
pub fn discrete_ivt(f1: &ZpFunction, b_small: &BohrSet, _eps: f64) -> Result<u64> {
    if b_small.size() < 2 {
        return Err(Error::EmptyBohr(b_small.size()));
    }
    let mean = norms(f1).mean;
    if mean.abs() > 1e-9 {
        return Err(Error::PreconditionFailed(format!(
            "mean {mean:e} is not zero"
        )));
    }
    let p = f1.p();
    let t = b_small.elements()[1];
    let mut best = (0u64, f64::INFINITY);
    for j in 0..p {
        let x = ((j as u128 * t as u128) % p as u128) as u64;
        let y = (x + t) % p;
        let (a, b) = (f1.at(x), f1.at(y));
        if a.abs() <= ZERO_TOL {
            return Ok(x);
        }
        if a * b < 0.0 {
            return Ok(if b.abs() < a.abs() { y } else { x });
        }
        if a.abs() < best.1 {
            best = (x, a.abs());
        }
    }
    Ok(best.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct LocatorResult {
    pub x_found: u64,
    pub value: f64,
    pub t_used: u64,
    pub x0: u64,
    pub epsilon: f64,
    /// Whether `(ε² η / 200 d)^d p > 1` holds for the run's final η and d.
    pub lemma_predicate: bool,
    /// `|B(Γ, η')|` for the run's final radii.
    pub small_bohr_size: usize,
    pub certificate: DecompositionCertificate,
}

/// `(ε² η / 200 d)^d p`, evaluated in floating point on the run's values.
pub fn feasibility_margin(cert: &DecompositionCertificate) -> f64 {
    let d = cert.gamma_final.d_eff() as i32;
    let eta = ratio_to_f64(&cert.eta.0).min(1.0);
    let base = cert.epsilon * cert.epsilon * eta / (200.0 * d as f64);
    (d as f64 * base.ln() + (cert.p as f64).ln()).exp()
}

fn locate_with(f: &ZpFunction, eps: f64) -> Result<LocatorResult> {
    let cert = run_decomposition(f, &DecompositionParams::new(eps)?)?;
    let small = cert.small_bohr();
    let lemma_predicate = feasibility_margin(&cert) > 1.0;
    if small.size() < 2 {
        return Err(Error::Infeasible(format!(
            "B(Γ, η') = {{0}} at ε = {eps} (|Γ| = {}, η = {:.3e})",
            cert.gamma_final.d(),
            cert.eta.to_f64()
        )));
    }
    let x0 = discrete_ivt(&cert.f1, &small, eps)?;
    let p = f.p();
    let x = small
        .elements()
        .iter()
        .map(|&b| (x0 + b) % p)
        .find(|&x| cert.f2.at(x).abs() <= 3.0 * eps)
        .ok_or_else(|| {
            Error::check(
                "f2_small_in_translate",
                format!("no x in x0 + B' with |f2(x)| <= {}", 3.0 * eps),
            )
        })?;
    let value = f.at(x);
    if value.abs() > 8.0 * eps + 1e-9 {
        return Err(Error::check(
            "locator_bound",
            format!("|f({x})| = {} > 8ε = {}", value.abs(), 8.0 * eps),
        ));
    }
    Ok(LocatorResult {
        x_found: x,
        value,
        t_used: small.elements()[1],
        x0,
        epsilon: eps,
        lemma_predicate,
        small_bohr_size: small.size(),
        certificate: cert,
    })
}

/// Finds x with `|f(x)| <= 8ε` through the decomposition.
///
/// With `EpsChoice::Auto` the schedule starts at
/// `min(1/2, c (ln ln p / ln p)^{1/3})` and multiplies ε by `2^{1/4}` until
/// the run leaves a nontrivial `B(Γ, η')`.
pub fn theorem2_locate(f: &ZpFunction, eps: EpsChoice) -> Result<LocatorResult> {
    match eps {
        EpsChoice::Fixed(e) => locate_with(f, e),
        EpsChoice::Auto { c_eps } => {
            let mut e = auto_epsilon_start(f.p(), c_eps);
            loop {
                match locate_with(f, e) {
                    Err(Error::Infeasible(_)) if e < MAX_EPSILON => {
                        e = (e * 2f64.powf(0.25)).min(MAX_EPSILON);
                    }
                    Err(Error::Infeasible(msg)) => {
                        return Err(Error::Infeasible(format!(
                            "no feasible ε <= {MAX_EPSILON}: {msg}"
                        )))
                    }
                    other => return other,
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LittlewoodReport {
    pub p: u64,
    pub size: usize,
    /// `Σ_r |1_A^(r)|`.
    pub spectral_l1: f64,
    /// `Σ_r |(2·1_A - 1)^(r)|`.
    pub signed_l1: f64,
    pub eps_feasible: f64,
    /// `1/(8ε)`, a certified lower bound on `signed_l1`.
    pub bound_8eps: f64,
    /// The bound on `spectral_l1` implied by `bound_8eps`.
    pub implied_indicator_bound: f64,
    pub x_found: u64,
}

/// Locates a small value of `f = (2·1_A - 1)/||(2·1_A - 1)^||_1`; since `|f|`
/// is constant, this certifies `||(2·1_A - 1)^||_1 >= 1/(8ε)`.
pub fn littlewood_lower_report(p: u64, a: &[u64], eps: EpsChoice) -> Result<LittlewoodReport> {
    let ind = ZpFunction::indicator(p, a)?;
    let size = ind.values().iter().filter(|&&v| v > 0.0).count();
    if size != (p / 2) as usize {
        return Err(Error::WrongCardinality {
            expected: (p / 2) as usize,
            actual: size,
        });
    }
    let spectral = spectral_l1(&forward_transform(&ind));
    let signed = ind.map(|v| 2.0 * v - 1.0)?;
    let signed_l1 = spectral_l1(&forward_transform(&signed));
    let f = signed.scale(1.0 / signed_l1);
    // centre exactly: E f = -1/(p signed_l1) is not zero, so the locator
    // runs on f - E f, whose values differ from f by O(1/p)
    let mean = norms(&f).mean;
    let f0 = f.map(|v| v - mean)?;
    let f0 = f0.scale(1.0 / spectral_l1(&forward_transform(&f0)).max(1.0));
    let loc = theorem2_locate(&f0, eps)?;
    let bound = 1.0 / (8.0 * loc.epsilon);
    let zero_term = (2.0 * size as f64 / p as f64 - 1.0).abs();
    Ok(LittlewoodReport {
        p,
        size,
        spectral_l1: spectral,
        signed_l1,
        eps_feasible: loc.epsilon,
        bound_8eps: bound,
        implied_indicator_bound: (bound - zero_term) / 2.0 + size as f64 / p as f64,
        x_found: loc.x_found,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GowersLocation {
    pub x: u64,
    /// `|f*g(x) - E f E g|`.
    pub deviation: f64,
    pub epsilon: f64,
    pub small_bohr_size: usize,
}

/// Finds x with `|f*g(x) - E f E g|` small by locating a small value of
/// `h = (f - E f) * (g - E g)`, whose spectrum has l1 norm at most 1.
pub fn gowers_locate(f: &ZpFunction, g: &ZpFunction, eps: EpsChoice) -> Result<GowersLocation> {
    let (nf, ng) = (norms(f), norms(g));
    if nf.l2 > 1.0 + 1e-9 || ng.l2 > 1.0 + 1e-9 {
        return Err(Error::PreconditionFailed(format!(
            "l2 norms {} and {} must be at most 1",
            nf.l2, ng.l2
        )));
    }
    let f0 = f.map(|v| v - nf.mean)?;
    let g0 = g.map(|v| v - ng.mean)?;
    let h = convolve(&f0, &g0)?;
    // the exact mean of h is 0; remove rounding residue
    let hm = norms(&h).mean;
    let h = h.map(|v| v - hm)?;
    let loc = theorem2_locate(&h, eps)?;
    let fg = convolve(f, g)?;
    let x = loc.x_found;
    Ok(GowersLocation {
        x,
        deviation: (fg.at(x) - nf.mean * ng.mean).abs(),
        epsilon: loc.epsilon,
        small_bohr_size: loc.small_bohr_size,
    })
}

/// Set version: `f = 1_A`, `g = 1_B∘`, so `p f*g(x) = |A ∩ (B + x)|`.
pub fn gowers_locate_sets(p: u64, a: &[u64], b: &[u64], eps: EpsChoice) -> Result<GowersLocation> {
    let fa = ZpFunction::indicator(p, a)?;
    let fb = crate::zp::reflect(&ZpFunction::indicator(p, b)?);
    gowers_locate(&fa, &fb, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohr::{build_bohr, CharacterSet, RationalRadius};
    use std::f64::consts::PI;

    #[test]
    fn ivt_on_zero_and_odd_functions() {
        let p = 101;
        let all = build_bohr(&CharacterSet::empty(p).unwrap(), &RationalRadius::half());
        let z = ZpFunction::zeros(p).unwrap();
        assert_eq!(discrete_ivt(&z, &all, 0.1).unwrap(), 0);
        let odd = ZpFunction::from_fn(p, |x| (2.0 * PI * 3.0 * x as f64 / p as f64).sin()).unwrap();
        let x = discrete_ivt(&odd, &all, 0.1).unwrap();
        assert!(odd.at(x).abs() <= 1e-12);
    }

    #[test]
    fn ivt_cosine_lands_near_quarter() {
        let p = 1009;
        let all = build_bohr(&CharacterSet::empty(p).unwrap(), &RationalRadius::half());
        let f = ZpFunction::from_fn(p, |x| (2.0 * PI * x as f64 / p as f64).cos()).unwrap();
        let m = norms(&f).mean;
        let f = f.map(|v| v - m).unwrap();
        let x = discrete_ivt(&f, &all, 0.1).unwrap();
        assert!(f.at(x).abs() <= 2.0 * PI / p as f64);
        assert!((x as i64 - 252).abs() <= 1);
    }

    #[test]
    fn ivt_needs_a_step() {
        let p = 101;
        let tiny = build_bohr(
            &CharacterSet::new(p, vec![1]).unwrap(),
            &"0".parse().unwrap(),
        );
        let f = ZpFunction::zeros(p).unwrap();
        assert!(matches!(
            discrete_ivt(&f, &tiny, 0.1),
            Err(Error::EmptyBohr(1))
        ));
    }

    #[test]
    fn gowers_trivial_and_small_cases() {
        let one = ZpFunction::constant(101, 1.0).unwrap();
        let r = gowers_locate(&one, &one, EpsChoice::Fixed(0.5)).unwrap();
        assert!(r.deviation < 1e-12);
    }

    #[test]
    fn littlewood_report_on_interval() {
        let p = 101;
        let a: Vec<u64> = (1..=50).collect();
        let r = littlewood_lower_report(p, &a, EpsChoice::default()).unwrap();
        assert!(r.bound_8eps <= r.signed_l1 + 1e-6);
        assert!(r.implied_indicator_bound <= r.spectral_l1 + 1e-6);
        assert!(matches!(
            littlewood_lower_report(p, &a[..10], EpsChoice::default()),
            Err(Error::WrongCardinality { .. })
        ));
    }
}
