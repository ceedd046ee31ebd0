use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use super::certificate::{Bounds, DecompositionCertificate, InnerStep, StageExit, StageRecord};
use super::params::DecompositionParams;
use crate::bohr::{
    cutoff_spectrum, find_regular_value_with, BohrProfile, CharacterSet, Ratio, RationalRadius,
};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum_by;
use crate::zp::{
    convolve, forward_transform, inverse_real_unchecked, norms, reflect, spectral_l1, Spectrum,
    ZpFunction,
};

/// Relative slack on the stop test `sup ≤ ε²`.
pub const STOP_SLACK: f64 = 1e-9;
/// Window sums within this of the maximum count as attaining it.
pub const TIE_TOL: f64 = 1e-12;
const DIRECT_WINDOW_MAX_U: usize = 32;

/// `W(γ) = Σ_{u∈U} a(γ + u)` for every γ.
pub fn window_sums(a: &[f64], u: &[u64]) -> Vec<f64> {
    let p = a.len();
    if u.len() <= DIRECT_WINDOW_MAX_U {
        return window_sums_direct(a, u);
    }
    // W = a ⋆ 1_U, a correlation: W(γ) = Σ_s a(s) 1_{-U}(γ - s)
    let pu = p as u64;
    let af = ZpFunction::new(pu, a.to_vec()).expect("finite window input");
    let ind = ZpFunction::indicator(pu, u).expect("valid modulus");
    let conv = convolve(&af, &reflect(&ind)).expect("same modulus");
    conv.values()
        .iter()
        .map(|v| (v * p as f64).max(0.0))
        .collect()
}

/// Direct double loop, `O(p |U|)`.
pub fn window_sums_direct(a: &[f64], u: &[u64]) -> Vec<f64> {
    let p = a.len();
    (0..p)
        .map(|g| pairwise_sum_by(u.len(), &|i| a[(g + u[i] as usize) % p]))
        .collect()
}

/// `sup_γ Σ_{γ' : γ' - γ ∈ U} |s(γ')|`.
pub fn u_window_sup(s: &Spectrum, u: &[u64]) -> f64 {
    window_sums(&s.abs(), u).into_iter().fold(0.0, f64::max)
}

fn argmax_smallest(w: &[f64]) -> (usize, f64) {
    let max = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let idx = w.iter().position(|&v| v >= max - TIE_TOL).unwrap_or(0);
    (idx, max)
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Runs the double iteration and returns the full certificate.
pub fn run_decomposition(
    f: &ZpFunction,
    params: &DecompositionParams,
) -> Result<DecompositionCertificate> {
    let p = f.p();
    let n = p as usize;
    let eps = params.epsilon;
    let eps2 = eps * eps;
    let e = params.eps_exact();
    let e2 = &e * &e;
    let e3 = &e2 * &e;

    let fhat = forward_transform(f);
    let l1 = spectral_l1(&fhat);
    if l1 > 1.0 + 1e-9 {
        return Err(Error::PreconditionFailed(format!(
            "spectral l1 norm {l1} exceeds 1"
        )));
    }
    let mean = norms(f).mean;
    if mean.abs() > 1e-9 {
        return Err(Error::PreconditionFailed(format!(
            "mean {mean:e} is not zero"
        )));
    }

    let mut gamma = CharacterSet::empty(p)?;
    let mut eta = Ratio(BigRational::one());
    let mut covered = vec![false; n];
    let mut ledger: Vec<StageRecord> = Vec::new();

    for j in 0.. {
        if j > params.j_cap {
            return Err(Error::IterationCapExceeded(format!(
                "more than {} outer steps",
                params.j_cap
            )));
        }
        let profile = BohrProfile::new(&gamma);
        let d = gamma.d_eff() as u64;
        let b = profile.build(&eta.radius()?);
        let beta = cutoff_spectrum(&b);
        let ghat: Vec<Complex64> = fhat
            .coeffs()
            .iter()
            .zip(beta.coeffs())
            .map(|(fv, bv)| fv * (Complex64::new(1.0, 0.0) - bv))
            .collect();
        let gabs: Vec<f64> = ghat.iter().map(|c| c.norm()).collect();

        let delta = RationalRadius::new(&eta.0 * &e2 * ratio(1, 400 * d))?;
        let eta_prime = find_regular_value_with(&profile, &delta)?;
        let bp = profile.build(&eta_prime);
        let beta_p = cutoff_spectrum(&bp);
        let u: Vec<u64> = (0..p).filter(|&r| beta_p.at(r).norm() >= eps2).collect();

        let mut steps: Vec<InnerStep> = Vec::new();
        let mut s_mass = 0.0;
        let exit = loop {
            if s_mass >= eps {
                break StageExit::OuterStep { mass: s_mass };
            }
            if steps.len() > params.i_cap {
                return Err(Error::IterationCapExceeded(format!(
                    "more than {} inner steps at outer step {j}",
                    params.i_cap
                )));
            }
            let masked: Vec<f64> = gabs
                .iter()
                .zip(&covered)
                .map(|(&v, &c)| if c { 0.0 } else { v })
                .collect();
            let w = window_sums(&masked, &u);
            let (g, sup) = argmax_smallest(&w);
            if sup <= eps2 * (1.0 + STOP_SLACK) {
                break StageExit::Stop { window_sup: sup };
            }
            let mut s: Vec<u64> = u
                .iter()
                .map(|&x| (g as u64 + x) % p)
                .filter(|&x| !covered[x as usize])
                .collect();
            s.sort_unstable();
            let mass = pairwise_sum_by(s.len(), &|i| masked[s[i] as usize]);
            for &x in &s {
                covered[x as usize] = true;
            }
            s_mass += mass;
            steps.push(InnerStep {
                i: steps.len() + 1,
                gamma: g as u64,
                s,
                mass,
            });
        };

        let record = StageRecord {
            j,
            gamma: gamma.clone(),
            eta: eta.clone(),
            eta_prime: eta_prime.clone(),
            bohr_size: b.size(),
            bohr_prime_size: bp.size(),
            u_set: u.clone(),
            steps,
            exit: exit.clone(),
        };

        match exit {
            StageExit::Stop { window_sup } => {
                let f1_spec = fhat.mul_pointwise(&beta)?;
                let f2_spec: Vec<Complex64> = ghat
                    .iter()
                    .zip(&covered)
                    .map(|(&v, &c)| if c { Complex64::new(0.0, 0.0) } else { v })
                    .collect();
                let f3_spec: Vec<Complex64> = ghat
                    .iter()
                    .zip(&covered)
                    .map(|(&v, &c)| if c { v } else { Complex64::new(0.0, 0.0) })
                    .collect();
                let f2_spec = Spectrum::new(p, f2_spec)?;
                let f3_spec = Spectrum::new(p, f3_spec)?;
                let bounds = Bounds {
                    f3_spectral_l1: spectral_l1(&f3_spec),
                    u_window_sup: window_sup,
                    gamma_size: gamma.d(),
                    outer_steps: j,
                };
                ledger.push(record);
                return Ok(DecompositionCertificate {
                    p,
                    epsilon: eps,
                    gamma_final: gamma,
                    eta,
                    eta_prime,
                    u_set: u,
                    ledger,
                    f1: inverse_real_unchecked(&f1_spec),
                    f2: inverse_real_unchecked(&f2_spec),
                    f3: inverse_real_unchecked(&f3_spec),
                    bounds,
                });
            }
            StageExit::OuterStep { .. } => {
                let d_old = gamma.d_eff() as u64;
                let next = gamma.union(record.steps.iter().map(|s| s.gamma));
                let next_profile = BohrProfile::new(&next);
                let delta = RationalRadius::new(eta_prime.value() * &e3 * ratio(1, 800 * d_old))?;
                let eta_next = find_regular_value_with(&next_profile, &delta)?;
                ledger.push(record);
                gamma = next;
                eta = Ratio::from(&eta_next);
            }
        }
    }
    unreachable!("the loop only exits by return")
}
