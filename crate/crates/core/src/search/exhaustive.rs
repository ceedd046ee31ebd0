use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{inv_mod, Twiddles};
use crate::rng::{stream_rng, Stream};
use crate::zp::check_modulus;

/// Largest modulus accepted by [`exhaustive_littlewood`].
pub const P_MAX_EXHAUSTIVE: u64 = 31;

/// `Σ_r |1_A^(r)|` for a set given as a bitmask, using `|1_A^(-r)| = |1_A^(r)|`.
pub fn mask_l1(mask: u64, tw: &Twiddles) -> f64 {
    let p = tw.p();
    let elems: Vec<u64> = (0..p).filter(|&x| mask >> x & 1 == 1).collect();
    set_l1(&elems, tw)
}

/// `Σ_r |1_A^(r)|` by direct summation over A.
pub fn set_l1(set: &[u64], tw: &Twiddles) -> f64 {
    let p = tw.p();
    let mut acc = set.len() as f64;
    for r in 1..=(p - 1) / 2 {
        let s: Complex64 = set.iter().map(|&x| tw.e(r * x)).sum();
        acc += 2.0 * s.norm();
    }
    acc / p as f64
}

/// Orbit representatives under `x -> a x + b`, `a != 0`.
///
/// The representative is the image whose sorted element list is
/// lexicographically least. For `|A| >= 2` that list starts with 0, 1, so it
/// is reached by one of the maps sending an ordered pair `(u, v)` of A to
/// `(0, 1)` and only those `|A|(|A| - 1)` maps are tried.
#[derive(Debug, Clone)]
pub struct SubsetCanonicalizer {
    p: u64,
    inv: Vec<u64>,
}

impl SubsetCanonicalizer {
    pub fn new(p: u64) -> Result<Self> {
        check_modulus(p)?;
        if p > 63 {
            return Err(Error::TooLarge(p, 63));
        }
        let inv = (0..p)
            .map(|x| if x == 0 { 0 } else { inv_mod(x, p) })
            .collect();
        Ok(SubsetCanonicalizer { p, inv })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Image of `mask` under `x -> (x - u)/(v - u)`.
    fn pair_image(&self, elems: &[u64], u: u64, v: u64) -> u64 {
        let p = self.p;
        let d = self.inv[((v + p - u) % p) as usize];
        elems
            .iter()
            .fold(0u64, |m, &x| m | 1 << ((x + p - u) % p * d % p))
    }

    /// Larger key means lexicographically smaller element list.
    fn key(mask: u64) -> u64 {
        mask.reverse_bits()
    }

    fn elements(&self, mask: u64) -> Vec<u64> {
        (0..self.p).filter(|&x| mask >> x & 1 == 1).collect()
    }

    /// The orbit representative of `mask`.
    pub fn canonical(&self, mask: u64) -> u64 {
        let elems = self.elements(mask);
        if elems.len() < 2 {
            return if elems.is_empty() { 0 } else { 1 };
        }
        let mut best = 0;
        for &u in &elems {
            for &v in &elems {
                if u != v {
                    let m = self.pair_image(&elems, u, v);
                    if Self::key(m) > Self::key(best) {
                        best = m;
                    }
                }
            }
        }
        best
    }

    /// Whether `mask` (which must contain 0 and 1) is its own representative;
    /// stops at the first smaller image.
    pub fn is_canonical(&self, mask: u64) -> bool {
        let elems = self.elements(mask);
        for &u in &elems {
            for &v in &elems {
                if u != v && Self::key(self.pair_image(&elems, u, v)) > Self::key(mask) {
                    return false;
                }
            }
        }
        true
    }

    /// `x -> a x + b` applied to a mask.
    pub fn apply(&self, mask: u64, a: u64, b: u64) -> u64 {
        let p = self.p;
        self.elements(mask)
            .iter()
            .fold(0u64, |m, &x| m | 1 << ((a * x + b) % p))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustiveResult {
    pub p: u64,
    pub s_p: f64,
    pub witness: Vec<u64>,
    /// Orbit representatives visited.
    pub orbits: u64,
    /// Largest deviation of `||1_A^||_1` over 10 random affine images of the
    /// witness.
    pub orbit_check_max_dev: f64,
}

/// Next mask with the same popcount (Gosper's hack).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// `S(p) = min ||1_A^||_1` over `|A| = ⌊p/2⌋`, enumerating affine orbit
/// representatives only.
pub fn exhaustive_littlewood(p: u64) -> Result<ExhaustiveResult> {
    check_modulus(p)?;
    if p > P_MAX_EXHAUSTIVE {
        return Err(Error::TooLarge(p, P_MAX_EXHAUSTIVE));
    }
    let k = (p / 2) as u32;
    let tw = Twiddles::new(p);
    if k < 2 {
        // every set of size at most 1 is a translate of {0} or empty
        let mask = if k == 1 { 1 } else { 0 };
        return Ok(ExhaustiveResult {
            p,
            s_p: mask_l1(mask, &tw),
            witness: (0..k as u64).collect(),
            orbits: 1,
            orbit_check_max_dev: 0.0,
        });
    }
    let canon = SubsetCanonicalizer::new(p)?;
    let rest = k - 2;
    // stratify by the smallest element c >= 2 outside {0, 1}
    let strata: Vec<u64> = if rest == 0 { vec![0] } else { (2..p).collect() };
    let best = strata
        .par_iter()
        .map(|&c| {
            let mut best = (f64::INFINITY, u64::MAX);
            let mut orbits = 0u64;
            let mut visit = |mask: u64| {
                if canon.is_canonical(mask) {
                    orbits += 1;
                    let v = mask_l1(mask, &tw);
                    if v < best.0 || (v == best.0 && mask < best.1) {
                        best = (v, mask);
                    }
                }
            };
            if rest == 0 {
                visit(0b11);
            } else {
                let free = rest - 1;
                let avail = p - c - 1;
                if (free as u64) <= avail {
                    let base = 0b11u64 | 1 << c;
                    if free == 0 {
                        visit(base);
                    } else {
                        let mut sub = (1u64 << free) - 1;
                        while sub < 1u64 << avail {
                            visit(base | sub << (c + 1));
                            sub = next_combination(sub);
                        }
                    }
                }
            }
            (best, orbits)
        })
        .reduce(
            || ((f64::INFINITY, u64::MAX), 0),
            |a, b| {
                let best = if b.0 .0 < a.0 .0 || (b.0 .0 == a.0 .0 && b.0 .1 < a.0 .1) {
                    b.0
                } else {
                    a.0
                };
                (best, a.1 + b.1)
            },
        );
    let ((s_p, mask), orbits) = best;

    let mut rng = stream_rng(p, Stream::Search, 0);
    let mut dev: f64 = 0.0;
    for _ in 0..10 {
        let a = rng.gen_range(1..p);
        let b = rng.gen_range(0..p);
        dev = dev.max((mask_l1(canon.apply(mask, a, b), &tw) - s_p).abs());
    }
    Ok(ExhaustiveResult {
        p,
        s_p,
        witness: canon.elements(mask),
        orbits,
        orbit_check_max_dev: dev,
    })
}
