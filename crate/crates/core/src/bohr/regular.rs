//! Regular values: radii at which `|B(Γ, t)|` varies at most linearly.
//!
//! `|B(Γ, t)|` is a right-continuous step function of t that jumps only at
//! `k/p` for integers k, so the defining two-sided inequality over the
//! continuum of κ reduces to finitely many exact integer checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::radius::RationalRadius;
use super::set::{BohrProfile, CharacterSet};
use crate::error::{Error, Result};

const GRID_START: usize = 64;
const CANDIDATE_CAP: usize = 4096;

/// Exact regularity test: for all `|κ| <= 1/(100d)`,
/// `1 - 100d|κ| <= |B(Γ,(1+κ)ε)| / |B(Γ,ε)| <= 1 + 100d|κ|`.
pub fn verify_regular(chars: &CharacterSet, eps: &RationalRadius) -> bool {
    if chars.d() == 0 {
        return true;
    }
    verify_regular_with(&BohrProfile::new(chars), eps)
}

pub fn verify_regular_with(profile: &BohrProfile, eps: &RationalRadius) -> bool {
    let d = profile.chars().d();
    if d == 0 || eps.is_zero() {
        return true;
    }
    let p = profile.p();
    let pb = BigInt::from(p);
    let a = eps.numer().clone();
    let q = eps.denom().clone();
    let c = BigInt::from(100 * d as u64);
    let ap = &a * &pb;
    let n_e = BigInt::from(profile.count(eps));

    // κ ranges over [-1/(100d), 1/(100d)], i.e. t = (1+κ)ε in [ε - ε/c, ε + ε/c]
    let eps_v = eps.value();
    let width = eps_v / BigRational::from_integer(c.clone());
    let scale = BigRational::from_integer(pb.clone());
    let floor_at = |t: &BigRational| -> u64 {
        let v = (t * &scale).floor().to_integer();
        v.to_u64().unwrap_or(u64::MAX)
    };
    let k_eps = floor_at(eps_v);
    let k_hi = floor_at(&(eps_v + &width)).min(profile.max_phase());
    let k_lo = floor_at(&(eps_v - &width));

    // right side: at each breakpoint b = k/p in (ε, ε(1+1/c)] the count is N(b)
    for k in (k_eps + 1)..=k_hi {
        if !profile.is_jump(k) {
            continue;
        }
        let n_b = BigInt::from(profile.count_at(k));
        let kq = BigInt::from(k) * &q;
        // N(b) ε <= N(ε) (ε + c (b - ε)), scaled by p q
        if n_b * &ap > &n_e * (&ap + &c * (&kq - &ap)) {
            return false;
        }
    }
    // left side: just below each breakpoint b in (ε(1-1/c), ε] the count is N(b-)
    let k_top = k_eps.min(profile.max_phase());
    for k in (k_lo + 1)..=k_top {
        if !profile.is_jump(k) {
            continue;
        }
        let below = if k == 0 { 0 } else { profile.count_at(k - 1) };
        let n_b = BigInt::from(below);
        let kq = BigInt::from(k) * &q;
        // N(b-) ε >= N(ε) (ε - c (ε - b))
        if n_b * &ap < &n_e * (&ap - &c * (&ap - &kq)) {
            return false;
        }
    }
    true
}

/// Finds a regular value in `[δ, 2δ)`.
///
/// Candidates are tried in a fixed order: first the midpoints of the gaps
/// between consecutive breakpoints inside `[δ, 2δ)` (widest relative gap
/// first), then a geometric grid `δ 2^{k/n}` with n = 64, 128, ..., 4096.
pub fn find_regular_value(chars: &CharacterSet, delta: &RationalRadius) -> Result<RationalRadius> {
    if chars.d() == 0 {
        return Ok(delta.clone());
    }
    find_regular_value_with(&BohrProfile::new(chars), delta)
}

pub fn find_regular_value_with(
    profile: &BohrProfile,
    delta: &RationalRadius,
) -> Result<RationalRadius> {
    if profile.chars().d() == 0 {
        return Ok(delta.clone());
    }
    if delta.is_zero() {
        return Err(Error::InvalidRadius("δ must be positive".into()));
    }
    let mut tried = 0usize;
    for cand in gap_candidates(profile, delta.value()) {
        if tried >= CANDIDATE_CAP {
            break;
        }
        tried += 1;
        if verify_regular_with(profile, &cand) {
            return Ok(cand);
        }
    }
    let mut n = GRID_START;
    while n <= CANDIDATE_CAP {
        for k in 0..n {
            // even k were already tried at the previous resolution
            if n > GRID_START && k % 2 == 0 {
                continue;
            }
            let factor = BigRational::from_float((k as f64 / n as f64).exp2()).expect("finite");
            let cand = RationalRadius::new(delta.value() * factor)?;
            tried += 1;
            if verify_regular_with(profile, &cand) {
                return Ok(cand);
            }
        }
        n *= 2;
    }
    Err(Error::NoRegularValueFound {
        delta: delta.to_string(),
        tried,
    })
}

fn gap_candidates(profile: &BohrProfile, delta: &BigRational) -> Vec<RationalRadius> {
    let p = profile.p();
    let scale = BigRational::from_integer(BigInt::from(p));
    let two_delta = delta * BigRational::from_integer(BigInt::from(2));
    let k_of = |t: &BigRational| {
        (t * &scale)
            .floor()
            .to_integer()
            .to_u64()
            .unwrap_or(u64::MAX)
    };
    let k_start = k_of(delta).min(profile.max_phase());
    let k_end = k_of(&two_delta);

    // breakpoints bracketing [δ, 2δ): the last one <= δ, every one inside,
    // and the first one >= 2δ (or none)
    let mut lo_k = k_start;
    while lo_k > 0 && !profile.is_jump(lo_k) {
        lo_k -= 1;
    }
    let mut points: Vec<Option<u64>> = vec![Some(lo_k)];
    let mut k = k_start + 1;
    loop {
        if k > profile.max_phase() {
            points.push(None);
            break;
        }
        if profile.is_jump(k) {
            points.push(Some(k));
            if k > k_end {
                break;
            }
        }
        k += 1;
    }

    let mut cands: Vec<(f64, RationalRadius)> = Vec::new();
    for w in points.windows(2) {
        let left = BigRational::new(BigInt::from(w[0].unwrap_or(0)), BigInt::from(p));
        let lo = if left > *delta { left } else { delta.clone() };
        let hi = match w[1] {
            Some(k) => {
                let r = BigRational::new(BigInt::from(k), BigInt::from(p));
                if r < two_delta {
                    r
                } else {
                    two_delta.clone()
                }
            }
            None => two_delta.clone(),
        };
        if hi <= lo {
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        if mid.is_zero() {
            continue;
        }
        let rel = super::radius::ratio_to_f64(&((&hi - &lo) / &mid));
        if let Ok(r) = RationalRadius::new(mid) {
            cands.push((rel, r));
        }
    }
    cands.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    cands.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohr::set::build_bohr;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> RationalRadius {
        RationalRadius::from_ratio(n, d).unwrap()
    }

    /// Brute-force regularity oracle: sample κ densely plus every breakpoint
    /// crossing, using direct set construction.
    fn oracle_regular(chars: &CharacterSet, eps: &RationalRadius) -> bool {
        let d = chars.d();
        if d == 0 {
            return true;
        }
        let p = chars.p();
        let n_e = build_bohr(chars, eps).size() as f64;
        let c = 100.0 * d as f64;
        let e = eps.to_f64();
        let mut kappas: Vec<f64> = (-200..=200).map(|i| i as f64 / (200.0 * c)).collect();
        for k in 0..=p / 2 {
            let b = k as f64 / p as f64;
            let kap = b / e - 1.0;
            if kap.abs() <= 1.0 / c {
                kappas.push(kap);
                kappas.push(kap - 1e-12);
            }
        }
        kappas.iter().all(|&kap| {
            let t = RationalRadius::new(eps.value() * BigRational::from_float(1.0 + kap).unwrap())
                .unwrap();
            let ratio = build_bohr(chars, &t).size() as f64 / n_e;
            let slack = 1e-9;
            1.0 - c * kap.abs() <= ratio + slack && ratio <= 1.0 + c * kap.abs() + slack
        })
    }

    #[test]
    fn empty_character_set_is_always_regular() {
        let e = CharacterSet::empty(101).unwrap();
        assert!(verify_regular(&e, &r(1, 7)));
        assert_eq!(find_regular_value(&e, &r(1, 9)).unwrap(), r(1, 9));
    }

    #[test]
    fn finds_regular_value_for_single_character() {
        let chars = CharacterSet::new(101, [1]).unwrap();
        let delta = r(1, 10);
        let eps = find_regular_value(&chars, &delta).unwrap();
        assert!(
            eps >= delta && eps.value() < &(delta.value() * BigRational::from_integer(2.into()))
        );
        assert!(verify_regular(&chars, &eps));
        assert!(oracle_regular(&chars, &eps));
    }

    #[test]
    fn radius_just_below_a_breakpoint_is_not_regular() {
        // p=5, Γ={1}: the count jumps from 3 to 5 at t = 2/5
        let chars = CharacterSet::new(5, [1]).unwrap();
        let eps = RationalRadius::new(BigRational::new(399_999.into(), 1_000_000.into())).unwrap();
        assert!(!verify_regular(&chars, &eps));
        assert!(!oracle_regular(&chars, &eps));
        // exactly at the breakpoint the left limit drops
        assert!(!verify_regular(&chars, &r(2, 5)));
        // well inside a gap it is regular
        assert!(verify_regular(&chars, &r(3, 10)));
    }

    #[test]
    fn tiny_radius_below_first_breakpoint() {
        let chars = CharacterSet::new(10_007, [17, 333, 4000]).unwrap();
        let delta = RationalRadius::from_f64(1e-40).unwrap();
        let eps = find_regular_value(&chars, &delta).unwrap();
        assert!(verify_regular(&chars, &eps));
        assert_eq!(build_bohr(&chars, &eps).size(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn exact_check_agrees_with_sampling_oracle(
            p in prop::sample::select(vec![11u64, 31, 101]),
            g in prop::collection::vec(1u64..1000, 1..3),
            num in 1i64..500, den in 501i64..1000,
        ) {
            let chars = CharacterSet::new(p, g).unwrap();
            let eps = r(num, den);
            // the sampling oracle can miss violations, never invent them
            if verify_regular(&chars, &eps) {
                prop_assert!(oracle_regular(&chars, &eps));
            }
        }

        #[test]
        fn found_values_verify(
            p in prop::sample::select(vec![101u64, 1009, 4001]),
            g in prop::collection::vec(1u64..100_000, 1..5),
            num in 1i64..100, den in 200i64..100_000,
        ) {
            let chars = CharacterSet::new(p, g).unwrap();
            let delta = r(num, den);
            let eps = find_regular_value(&chars, &delta).unwrap();
            prop_assert!(eps >= delta);
            prop_assert!(eps.value() < &(delta.value() * BigRational::from_integer(2.into())));
            prop_assert!(verify_regular(&chars, &eps));
        }
    }
}
