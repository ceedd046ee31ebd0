use rand::Rng;
use serde::Serialize;

use super::smooth::ConstructionConfig;
use crate::error::{Error, Result};
use crate::report::{Check, CheckList};
use crate::rng::{stream_rng, Stream};
use crate::zp::{autocorrelation, intersection_counts, norms, ZpFunction};

/// `2 exp(-m t²/2)`.
pub fn hoeffding_bound(m: u64, t: f64) -> f64 {
    2.0 * (-(m as f64) * t * t / 2.0).exp()
}

/// Splits Z/pZ, walked as the cycle `y -> y + x`, into three classes with no
/// two cycle-neighbours in the same class.
pub fn cycle_partition(p: u64, x: u64) -> Result<[Vec<u64>; 3]> {
    crate::zp::check_modulus(p)?;
    let x = x % p;
    if x == 0 {
        return Err(Error::PreconditionFailed(
            "the step x must be nonzero".into(),
        ));
    }
    let mut classes: [Vec<u64>; 3] = Default::default();
    for k in 0..p {
        let mut c = (k % 3) as usize;
        // the cycle closes: position p-1 neighbours position 0
        if k == p - 1 && c == 0 {
            c = 1;
        }
        classes[c].push(((k as u128 * x as u128) % p as u128) as u64);
    }
    Ok(classes)
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundingReport {
    pub p: u64,
    /// The accepted random set.
    pub b: Vec<u64>,
    /// B adjusted to exactly `⌊p/2⌋` elements.
    pub a: Vec<u64>,
    /// `||B| - p/2|`.
    pub size_dev: f64,
    /// `max_{x≠0} |1_B * 1_B°(x) - f~ * f~°(x)|`.
    pub corr_dev_max: f64,
    /// `min_x ||A ∩ (A + x)| - p/4|`.
    pub final_min_dev: f64,
    pub final_argmin: u64,
    /// Trials rejected before the accepted one.
    pub retries: usize,
    pub size_rejections: usize,
    pub corr_rejections: usize,
    /// `||1_A - 1_B||_2`.
    pub adjust_l2: f64,
    /// `||1_A * 1_A° - 1_B * 1_B°||_∞`.
    pub adjust_autocorrelation_change: f64,
    pub seed: u64,
    pub checks: CheckList,
}

fn corr_dev(b_corr: &ZpFunction, target: &ZpFunction) -> f64 {
    (1..b_corr.p())
        .map(|x| (b_corr.at(x) - target.at(x)).abs())
        .fold(0.0, f64::max)
}

/// Samples `B ∋ x` with probability `f~(x)` until `||B| - p/2| <= p^{2/3}`
/// and the autocorrelation stays within `p^{-1/3}` of `f~ * f~°` off 0,
/// then adds or removes the smallest eligible residues to reach `⌊p/2⌋`.
pub fn round_to_set(
    f_tilde: &ZpFunction,
    cfg: &ConstructionConfig,
    seed: u64,
) -> Result<RoundingReport> {
    let p = f_tilde.p();
    let pf = p as f64;
    let size_window = pf.powf(2.0 / 3.0);
    let corr_window = pf.powf(-1.0 / 3.0);
    let target = autocorrelation(f_tilde);
    let (mut size_rej, mut corr_rej) = (0, 0);

    for trial in 0..cfg.round_retry_cap as u64 {
        let mut rng = stream_rng(seed, Stream::Rounding, trial);
        let b: Vec<u64> = (0..p)
            .filter(|&x| rng.gen::<f64>() < f_tilde.at(x))
            .collect();
        let size_dev = (b.len() as f64 - pf / 2.0).abs();
        if size_dev > size_window {
            size_rej += 1;
            continue;
        }
        let ind_b = ZpFunction::indicator(p, &b)?;
        let b_corr = autocorrelation(&ind_b);
        let cd = corr_dev(&b_corr, &target);
        if cd > corr_window {
            corr_rej += 1;
            continue;
        }

        let want = (p / 2) as usize;
        let mut in_a = vec![false; p as usize];
        for &x in &b {
            in_a[x as usize] = true;
        }
        let mut count = b.len();
        let mut x = 0usize;
        while count != want {
            if count > want && in_a[x] {
                in_a[x] = false;
                count -= 1;
            } else if count < want && !in_a[x] {
                in_a[x] = true;
                count += 1;
            }
            x += 1;
        }
        let a: Vec<u64> = (0..p).filter(|&x| in_a[x as usize]).collect();
        let ind_a = ZpFunction::indicator(p, &a)?;
        let adjust_l2 = norms(&ind_a.sub(&ind_b)?).l2;
        let a_corr = autocorrelation(&ind_a);
        let change = a_corr.max_abs_diff(&b_corr);
        let counts = intersection_counts(p, &a)?;
        let (final_argmin, final_min_dev) = counts
            .iter()
            .enumerate()
            .map(|(x, &c)| (x as u64, (c as f64 - pf / 4.0).abs()))
            .fold(
                (0, f64::INFINITY),
                |acc, v| if v.1 < acc.1 { v } else { acc },
            );

        let mut checks = CheckList::new();
        checks.push(Check::at_most("size_window", size_dev, size_window));
        checks.push(Check::at_most("autocorrelation_window", cd, corr_window));
        checks.push(Check::holds("exact_size", a.len() == want));
        checks.push(Check::at_most(
            "adjust_l2",
            adjust_l2,
            2.0 * pf.powf(-1.0 / 6.0),
        ));
        checks.push(Check::at_most(
            "adjust_autocorrelation",
            change,
            4.0 * pf.powf(-1.0 / 6.0),
        ));
        checks.push(Check::at_most(
            "adjust_stability",
            change,
            adjust_l2 * (norms(&ind_a).l2 + norms(&ind_b).l2) + 1e-12,
        ));
        checks.push(Check::at_least(
            "zero_shift_dev",
            (counts[0] as f64 - pf / 4.0).abs(),
            pf / 5.0,
        ));

        return Ok(RoundingReport {
            p,
            b,
            a,
            size_dev,
            corr_dev_max: cd,
            final_min_dev,
            final_argmin,
            retries: trial as usize,
            size_rejections: size_rej,
            corr_rejections: corr_rej,
            adjust_l2,
            adjust_autocorrelation_change: change,
            seed,
            checks,
        });
    }
    Err(Error::RetryCapExceeded(cfg.round_retry_cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoeffding_values() {
        assert_eq!(hoeffding_bound(10, 0.0), 2.0);
        let p = 10_007u64;
        let t = (p as f64).powf(-1.0 / 3.0);
        assert!(
            (hoeffding_bound(p, t) - 2.0 * (-(p as f64).powf(1.0 / 3.0) / 2.0).exp()).abs() < 1e-15
        );
        assert!(hoeffding_bound(100, 0.2) < hoeffding_bound(50, 0.2));
        assert!(hoeffding_bound(100, 0.3) < hoeffding_bound(100, 0.2));
    }

    #[test]
    fn cycle_partition_small_case() {
        let c = cycle_partition(5, 1).unwrap();
        let mut sizes: Vec<usize> = c.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn cycle_partition_independence_exhaustive() {
        for p in (3..=101).filter(|&n| crate::numeric::is_prime(n)) {
            for x in 1..p {
                let c = cycle_partition(p, x).unwrap();
                assert_eq!(c.iter().map(Vec::len).sum::<usize>(), p as usize);
                for class in &c {
                    assert!(class.len() as f64 >= p as f64 / 5.0);
                    let mut mark = vec![false; p as usize];
                    for &y in class {
                        mark[y as usize] = true;
                    }
                    for &y in class {
                        assert!(!mark[((y + x) % p) as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn rounding_constant_half() {
        let p = 1009;
        let f = ZpFunction::constant(p, 0.5).unwrap();
        let r = round_to_set(&f, &ConstructionConfig::default(), 9).unwrap();
        assert_eq!(r.a.len(), 504);
        assert!(
            r.checks.all_pass(),
            "{:?}",
            r.checks.failures().collect::<Vec<_>>()
        );
        let again = round_to_set(&f, &ConstructionConfig::default(), 9).unwrap();
        assert_eq!(r.a, again.a);
    }
}
