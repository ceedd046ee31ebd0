//! Reproducible floating-point helpers shared by every module.

use num_complex::Complex64;
use std::f64::consts::PI;

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise (tree) summation of `f(0) + ... + f(n-1)`.
///
/// The tree shape depends only on `n`, so results are bit-identical across
/// runs and across any parallel split that respects the same tree.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(n: usize, f: &F) -> f64 {
    fn rec<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= PAIRWISE_BLOCK {
            let mut s = 0.0;
            for i in lo..hi {
                s += f(i);
            }
            s
        } else {
            let mid = lo + (hi - lo) / 2;
            rec(lo, mid, f) + rec(mid, hi, f)
        }
    }
    rec(0, n, f)
}

pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_sum_by(values.len(), &|i| values[i])
}

/// Complex pairwise sum.
pub fn pairwise_sum_complex_by<F: Fn(usize) -> Complex64>(n: usize, f: &F) -> Complex64 {
    fn rec<F: Fn(usize) -> Complex64>(lo: usize, hi: usize, f: &F) -> Complex64 {
        if hi - lo <= PAIRWISE_BLOCK {
            let mut s = Complex64::new(0.0, 0.0);
            for i in lo..hi {
                s += f(i);
            }
            s
        } else {
            let mid = lo + (hi - lo) / 2;
            rec(lo, mid, f) + rec(mid, hi, f)
        }
    }
    rec(0, n, f)
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Table of `e(k/p) = exp(2 pi i k / p)` for `k = 0..p`.
///
/// Each entry is computed from the exact integer `k`, so looking up
/// `table[(r * x) % p]` never accumulates phase error.
#[derive(Debug, Clone)]
pub struct Twiddles {
    p: u64,
    table: Vec<Complex64>,
}

impl Twiddles {
    pub fn new(p: u64) -> Self {
        let n = p as usize;
        let mut table = vec![Complex64::new(1.0, 0.0); n];
        for (k, slot) in table.iter_mut().enumerate().skip(1) {
            // fold into [0, p/2] so cos/sin are evaluated on the smaller angle
            let (kk, sign) = if 2 * k as u64 > p {
                (p - k as u64, -1.0)
            } else {
                (k as u64, 1.0)
            };
            let theta = 2.0 * PI * (kk as f64) / (p as f64);
            let (s, c) = theta.sin_cos();
            *slot = Complex64::new(c, sign * s);
        }
        Twiddles { p, table }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `e(k/p)` for any integer k (reduced mod p).
    #[inline]
    pub fn e(&self, k: u64) -> Complex64 {
        self.table[(k % self.p) as usize]
    }

    #[inline]
    pub fn at(&self, k: usize) -> Complex64 {
        self.table[k]
    }
}

/// `|1 - e(k/p)| = 2 |sin(pi k / p)|`, with `k` reduced exactly first.
pub fn chord(k: u64, p: u64) -> f64 {
    let k = k % p;
    let k = k.min(p - k);
    2.0 * (PI * k as f64 / p as f64).sin()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut i = 5u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 || n % (i + 2) == 0 {
            return false;
        }
        i += 6;
    }
    true
}

/// Modular inverse for prime modulus (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_integer_sum() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
        assert_eq!(mean(&[]), 0.0);
    }

    #[test]
    fn twiddles_are_unit_and_conjugate_symmetric() {
        let t = Twiddles::new(101);
        for k in 1..101u64 {
            let z = t.e(k);
            assert!((z.norm() - 1.0).abs() < 1e-15);
            let w = t.e(101 - k);
            assert!((z - w.conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn primality_and_inverses() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(100_003));
        assert!(!is_prime(100_001));
        for a in 1..13 {
            assert_eq!(a * inv_mod(a, 13) % 13, 1);
        }
    }

    #[test]
    fn chord_values() {
        assert!(chord(0, 7).abs() < 1e-15);
        assert!((chord(5, 10_007) - chord(10_002, 10_007)).abs() < 1e-15);
    }
}
