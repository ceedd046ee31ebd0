use serde::Serialize;

use crate::error::{Error, Result};
use crate::zp::intersection_counts;

/// `D(x) = |A ∩ (A + x)| - p/4` over all shifts.
#[derive(Debug, Clone, Serialize)]
pub struct DeviationProfile {
    pub p: u64,
    pub a: Vec<u64>,
    pub counts: Vec<u64>,
    pub d: Vec<f64>,
    pub min_abs: f64,
    pub max_abs: f64,
    pub argmin: u64,
}

pub fn deviation_profile(p: u64, a: &[u64]) -> Result<DeviationProfile> {
    if a.is_empty() {
        return Err(Error::PreconditionFailed("A must be nonempty".into()));
    }
    let counts = intersection_counts(p, a)?;
    let quarter = p as f64 / 4.0;
    let d: Vec<f64> = counts.iter().map(|&c| c as f64 - quarter).collect();
    let (mut argmin, mut min_abs, mut max_abs) = (0, f64::INFINITY, 0.0f64);
    for (x, v) in d.iter().enumerate() {
        if v.abs() < min_abs {
            min_abs = v.abs();
            argmin = x as u64;
        }
        max_abs = max_abs.max(v.abs());
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    Ok(DeviationProfile {
        p,
        a,
        counts,
        d,
        min_abs,
        max_abs,
        argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Stream};
    use rand::seq::SliceRandom;

    fn direct_counts(p: u64, a: &[u64]) -> Vec<u64> {
        let mut inside = vec![false; p as usize];
        for &y in a {
            inside[y as usize] = true;
        }
        (0..p)
            .map(|x| {
                a.iter()
                    .filter(|&&y| inside[((y + p - x) % p) as usize])
                    .count() as u64
            })
            .collect()
    }

    #[test]
    fn whole_group() {
        let a: Vec<u64> = (0..101).collect();
        let prof = deviation_profile(101, &a).unwrap();
        assert!(prof.d.iter().all(|&v| v == 101.0 * 0.75));
    }

    #[test]
    fn small_case() {
        let prof = deviation_profile(5, &[0, 1]).unwrap();
        assert_eq!(prof.counts, vec![2, 1, 0, 0, 1]);
        assert_eq!(prof.d[0], 2.0 - 1.25);
        assert_eq!(prof.min_abs, 0.25);
    }

    #[test]
    fn matches_direct_counting() {
        for (i, p) in [7u64, 101, 1009].into_iter().enumerate() {
            let mut all: Vec<u64> = (0..p).collect();
            all.shuffle(&mut stream_rng(17, Stream::Sampling, i as u64));
            let a = &all[..(p / 2) as usize];
            let prof = deviation_profile(p, a).unwrap();
            assert_eq!(prof.counts, direct_counts(p, a));
            assert_eq!(prof.d[0], a.len() as f64 - p as f64 / 4.0);
        }
    }
}
