use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::params::{inner_bound, outer_bound};
use crate::bohr::{build_bohr, verify_regular, BohrSet, CharacterSet, Ratio, RationalRadius};
use crate::numeric::{pairwise_sum_by, pairwise_sum_complex_by, Twiddles};
use crate::report::{Check, CheckList};
use crate::zp::{forward_direct, ZpFunction};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerStep {
    pub i: usize,
    pub gamma: u64,
    pub s: Vec<u64>,
    /// `Σ_{γ'∈S} |f^(2)(γ')|` at the moment S was chosen.
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StageExit {
    /// The accumulated mass on this stage's S sets reached ε.
    OuterStep { mass: f64 },
    /// Every U-window of `|f^(2)|` carries at most ε².
    Stop { window_sup: f64 },
}

/// Everything that happened while the outer index was j.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub j: usize,
    pub gamma: CharacterSet,
    pub eta: Ratio,
    pub eta_prime: RationalRadius,
    pub bohr_size: usize,
    pub bohr_prime_size: usize,
    pub u_set: Vec<u64>,
    pub steps: Vec<InnerStep>,
    pub exit: StageExit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bounds {
    pub f3_spectral_l1: f64,
    pub u_window_sup: f64,
    pub gamma_size: usize,
    pub outer_steps: usize,
}

/// Output of the decomposition `f = f1 + f2 + f3`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionCertificate {
    pub p: u64,
    pub epsilon: f64,
    pub gamma_final: CharacterSet,
    pub eta: Ratio,
    pub eta_prime: RationalRadius,
    pub u_set: Vec<u64>,
    pub ledger: Vec<StageRecord>,
    #[serde(skip)]
    pub f1: ZpFunction,
    #[serde(skip)]
    pub f2: ZpFunction,
    #[serde(skip)]
    pub f3: ZpFunction,
    pub bounds: Bounds,
}

impl DecompositionCertificate {
    pub fn final_bohr(&self) -> BohrSet {
        build_bohr(&self.gamma_final, &self.eta.radius().expect("valid"))
    }

    pub fn small_bohr(&self) -> BohrSet {
        build_bohr(&self.gamma_final, &self.eta_prime)
    }

    /// All S sets in ledger order.
    pub fn s_sets(&self) -> impl Iterator<Item = &InnerStep> {
        self.ledger.iter().flat_map(|st| st.steps.iter())
    }
}

const TOL: f64 = 1e-9;

/// `β^(r) = (1/|B|) Σ_{x∈B} e(rx/p)` summed directly, over the complement
/// when that is smaller.
fn cutoff_direct(b: &BohrSet, tw: &Twiddles) -> Vec<Complex64> {
    let p = b.p();
    let size = b.size();
    let inv = 1.0 / size as f64;
    if 2 * size <= p as usize {
        let el = b.elements();
        (0..p)
            .map(|r| pairwise_sum_complex_by(el.len(), &|i| tw.e(r * el[i])) * inv)
            .collect()
    } else {
        let out: Vec<u64> = (0..p).filter(|&x| !b.contains(x)).collect();
        (0..p)
            .map(|r| {
                let full = if r == 0 { p as f64 } else { 0.0 };
                (Complex64::new(full, 0.0)
                    - pairwise_sum_complex_by(out.len(), &|i| tw.e(r * out[i])))
                    * inv
            })
            .collect()
    }
}

/// `avg_{b∈B} f(x - b)` for every x.
fn average_over(f: &ZpFunction, b: &BohrSet) -> Vec<f64> {
    let p = f.p() as usize;
    let v = f.values();
    let size = b.size();
    if 2 * size <= p {
        let el = b.elements();
        (0..p)
            .map(|x| pairwise_sum_by(el.len(), &|i| v[(x + p - el[i] as usize) % p]) / size as f64)
            .collect()
    } else {
        let total = pairwise_sum_by(p, &|i| v[i]);
        let out: Vec<usize> = (0..p).filter(|&x| !b.contains(x as u64)).collect();
        (0..p)
            .map(|x| {
                (total - pairwise_sum_by(out.len(), &|i| v[(x + p - out[i]) % p])) / size as f64
            })
            .collect()
    }
}

/// Window sums of `a` over translates of U, directly, over the complement
/// of U when that is smaller.
fn window_direct(a: &[f64], u: &[u64]) -> Vec<f64> {
    let p = a.len();
    if 2 * u.len() <= p {
        (0..p)
            .map(|g| pairwise_sum_by(u.len(), &|i| a[(g + u[i] as usize) % p]))
            .collect()
    } else {
        let mut in_u = vec![false; p];
        for &x in u {
            in_u[x as usize] = true;
        }
        let out: Vec<usize> = (0..p).filter(|&x| !in_u[x]).collect();
        let total = pairwise_sum_by(p, &|i| a[i]);
        (0..p)
            .map(|g| total - pairwise_sum_by(out.len(), &|i| a[(g + out[i]) % p]))
            .collect()
    }
}

fn u_set_checks(list: &mut CheckList, name: &str, beta_p: &[Complex64], u: &[u64], eps2: f64) {
    let mut in_u = vec![false; beta_p.len()];
    for &x in u {
        in_u[x as usize] = true;
    }
    let mut ok = true;
    for (r, c) in beta_p.iter().enumerate() {
        let m = c.norm();
        if (in_u[r] && m < eps2 - TOL) || (!in_u[r] && m >= eps2 + TOL) {
            ok = false;
        }
    }
    list.push(Check::holds(name, ok));
}

fn exact_eps(eps: f64) -> BigRational {
    BigRational::from_float(eps).expect("finite epsilon")
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Recomputes every claim of a certificate from `f` alone, using direct
/// (transform-free) sums and exact rational arithmetic for the radii.
pub fn validate_certificate(f: &ZpFunction, cert: &DecompositionCertificate) -> CheckList {
    let mut list = CheckList::new();
    let p = f.p();
    let n = p as usize;
    let eps = cert.epsilon;
    let eps2 = eps * eps;
    let e = exact_eps(eps);
    let e2 = &e * &e;
    let e3 = &e2 * &e;
    let tw = Twiddles::new(p);

    let fhat = forward_direct(f);
    let f_l1 = pairwise_sum_by(n, &|r| fhat.coeffs()[r].norm());

    // the pointwise split
    let sum_dev = (0..n)
        .map(|x| {
            (cert.f1.values()[x] + cert.f2.values()[x] + cert.f3.values()[x] - f.values()[x]).abs()
        })
        .fold(0.0, f64::max);
    list.push(Check::at_most("sum_identity", sum_dev, TOL));

    let b = cert.final_bohr();
    let f1_direct = average_over(f, &b);
    let f1_dev = (0..n)
        .map(|x| (f1_direct[x] - cert.f1.values()[x]).abs())
        .fold(0.0, f64::max);
    list.push(Check::at_most("f1_is_f_conv_beta", f1_dev, TOL));

    // spectra of the parts
    let mut covered = vec![false; n];
    for st in cert.s_sets() {
        for &x in &st.s {
            covered[x as usize] = true;
        }
    }
    let f2hat = forward_direct(&cert.f2);
    let f3hat = forward_direct(&cert.f3);
    let f3_l1 = pairwise_sum_by(n, &|r| f3hat.coeffs()[r].norm());
    list.push(Check::at_most("f3_spectral_l1", f3_l1, eps + TOL));
    let f3_off = (0..n)
        .filter(|&r| !covered[r])
        .map(|r| f3hat.coeffs()[r].norm())
        .fold(0.0, f64::max);
    list.push(Check::at_most("f3_support", f3_off, TOL));
    let f2_on = (0..n)
        .filter(|&r| covered[r])
        .map(|r| f2hat.coeffs()[r].norm())
        .fold(0.0, f64::max);
    list.push(Check::at_most("f2_support", f2_on, TOL));

    // the final U and window sup
    let bp = cert.small_bohr();
    let beta_p = cutoff_direct(&bp, &tw);
    u_set_checks(&mut list, "u_set", &beta_p, &cert.u_set, eps2);
    let a2: Vec<f64> = f2hat.coeffs().iter().map(|c| c.norm()).collect();
    let sup = window_direct(&a2, &cert.u_set)
        .into_iter()
        .fold(0.0, f64::max);
    list.push(Check::at_most("u_window_sup", sup, eps2 + TOL));
    list.push(Check::at_most(
        "recorded_window_sup",
        (sup - cert.bounds.u_window_sup).abs(),
        TOL,
    ));

    // S sets: disjoint, inside translates of U
    let mut seen = vec![false; n];
    let mut disjoint = true;
    for st in cert.s_sets() {
        for &x in &st.s {
            if seen[x as usize] {
                disjoint = false;
            }
            seen[x as usize] = true;
        }
    }
    list.push(Check::holds("s_disjoint", disjoint));

    // per-stage radii, U sets and masses
    let mut covered_now = vec![false; n];
    let mut total_s_mass_f = 0.0;
    for (idx, st) in cert.ledger.iter().enumerate() {
        let j = st.j;
        let d = st.gamma.d_eff() as u64;
        let eta = &st.eta.0;
        let lo = eta * &e2 * ratio(1, 400 * d);
        let hi = eta * &e2 * ratio(1, 200 * d);
        let ep = st.eta_prime.value();
        list.push(Check::holds(
            format!("eta_prime_range_{j}"),
            &lo <= ep && ep <= &hi,
        ));
        let eta_r = st.eta.radius().expect("valid radius");
        list.push(Check::holds(
            format!("regular_eta_{j}"),
            verify_regular(&st.gamma, &eta_r),
        ));
        list.push(Check::holds(
            format!("regular_eta_prime_{j}"),
            verify_regular(&st.gamma, &st.eta_prime),
        ));
        if let Some(next) = cert.ledger.get(idx + 1) {
            let lo = ep * &e3 * ratio(1, 800 * d);
            let hi = ep * &e3 * ratio(1, 400 * d);
            let en = &next.eta.0;
            list.push(Check::holds(
                format!("eta_next_range_{j}"),
                &lo <= en && en <= &hi,
            ));
            let expected = st.gamma.union(st.steps.iter().map(|s| s.gamma));
            list.push(Check::holds(
                format!("gamma_growth_{j}"),
                expected == next.gamma,
            ));
        }

        let bj = build_bohr(&st.gamma, &eta_r);
        let beta_j = cutoff_direct(&bj, &tw);
        let bpj = build_bohr(&st.gamma, &st.eta_prime);
        let beta_pj = cutoff_direct(&bpj, &tw);
        u_set_checks(&mut list, &format!("u_set_{j}"), &beta_pj, &st.u_set, eps2);
        let gabs: Vec<f64> = (0..n)
            .map(|r| (fhat.coeffs()[r] * (Complex64::new(1.0, 0.0) - beta_j[r])).norm())
            .collect();
        let mut in_u = vec![false; n];
        for &x in &st.u_set {
            in_u[x as usize] = true;
        }
        let mut stage_mass = 0.0;
        for step in &st.steps {
            let inside = step
                .s
                .iter()
                .all(|&x| in_u[((x + p - step.gamma) % p) as usize] && !covered_now[x as usize]);
            list.push(Check::holds(
                format!("s_in_translate_{j}_{}", step.i),
                inside,
            ));
            let mass = pairwise_sum_by(step.s.len(), &|i| gabs[step.s[i] as usize]);
            list.push(Check::at_least(
                format!("inner_mass_{j}_{}", step.i),
                mass,
                eps2 * (1.0 - TOL),
            ));
            let fmass =
                pairwise_sum_by(step.s.len(), &|i| fhat.coeffs()[step.s[i] as usize].norm());
            list.push(Check::at_least(
                format!("claim2_mass_{j}_{}", step.i),
                2.0 * fmass,
                eps2 * (1.0 - TOL),
            ));
            total_s_mass_f += fmass;
            stage_mass += mass;
            for &x in &step.s {
                covered_now[x as usize] = true;
            }
        }
        match st.exit {
            StageExit::OuterStep { .. } => {
                list.push(Check::at_least(
                    format!("outer_mass_{j}"),
                    stage_mass,
                    eps * (1.0 - TOL),
                ));
            }
            StageExit::Stop { .. } => {
                list.push(Check::at_most(format!("stop_mass_{j}"), stage_mass, eps));
            }
        }
    }

    list.push(Check::at_most(
        "gamma_size",
        cert.gamma_final.d() as f64,
        inner_bound(eps),
    ));
    list.push(Check::at_most(
        "outer_steps",
        cert.bounds.outer_steps as f64,
        outer_bound(eps),
    ));
    list.push(Check::at_most(
        "disjoint_mass",
        total_s_mass_f,
        f_l1 * (1.0 + TOL),
    ));
    list
}
