//! Forward/inverse transforms under the averaging convention
//! `f^(r) = E_x f(x) e(rx/p)`, plus convolution and norms.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::function::{same_modulus, Spectrum, ZpFunction};
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum_by, pairwise_sum_complex_by, Twiddles};

/// Crossover between the direct O(p^2) evaluation and the fast path.
pub const P_DIRECT: u64 = 4096;

const BLOCK: usize = 32;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(p: usize, plus_sign: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|pl| {
        let mut pl = pl.borrow_mut();
        if plus_sign {
            pl.plan_fft_inverse(p)
        } else {
            pl.plan_fft_forward(p)
        }
    })
}

/// Unnormalized `out(k) = sum_j data(j) e(sign * jk/p)` via the fast path.
fn fft_raw(data: &mut [Complex64], plus_sign: bool) {
    if data.len() <= 1 {
        return;
    }
    plan(data.len(), plus_sign).process(data);
}

pub fn forward_transform(f: &ZpFunction) -> Spectrum {
    if f.p() <= P_DIRECT {
        forward_direct(f)
    } else {
        forward_fast(f)
    }
}

/// Direct evaluation; coefficients for `r > p/2` are filled by conjugation
/// since the input is real.
pub fn forward_direct(f: &ZpFunction) -> Spectrum {
    let p = f.p();
    let tw = Twiddles::new(p);
    let values = f.values();
    let half = (p as usize) / 2 + 1;
    let first: Vec<Complex64> = (0..half)
        .into_par_iter()
        .map(|r| direct_sum(values, &tw, r as u64) / p as f64)
        .collect();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); p as usize];
    for r in 0..p as usize {
        coeffs[r] = if r < half {
            first[r]
        } else {
            first[p as usize - r].conj()
        };
    }
    coeffs[0].im = 0.0;
    Spectrum::from_parts_unchecked(p, coeffs)
}

/// `sum_x v(x) e(r x / p)` with pairwise accumulation over blocks.
fn direct_sum(values: &[f64], tw: &Twiddles, r: u64) -> Complex64 {
    let p = tw.p();
    let n = values.len();
    let blocks = n.div_ceil(BLOCK);
    pairwise_sum_complex_by(blocks, &|b| {
        let lo = b * BLOCK;
        let hi = (lo + BLOCK).min(n);
        let mut idx = ((r * lo as u64) % p) as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for &v in &values[lo..hi] {
            acc += tw.at(idx) * v;
            idx += r as usize;
            if idx >= p as usize {
                idx -= p as usize;
            }
        }
        acc
    })
}

pub fn forward_fast(f: &ZpFunction) -> Spectrum {
    let p = f.p();
    let mut data: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_raw(&mut data, true);
    let scale = 1.0 / p as f64;
    for c in &mut data {
        *c *= scale;
    }
    data[0].im = 0.0;
    Spectrum::from_parts_unchecked(p, data)
}

/// Direct forward transform of complex data (used by oracles and the
/// certificate validator).
pub fn forward_direct_complex(p: u64, data: &[Complex64]) -> Vec<Complex64> {
    let tw = Twiddles::new(p);
    (0..p as usize)
        .into_par_iter()
        .map(|r| {
            let n = data.len();
            let blocks = n.div_ceil(BLOCK);
            pairwise_sum_complex_by(blocks, &|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(n);
                let mut idx = ((r as u64 * lo as u64) % p) as usize;
                let mut acc = Complex64::new(0.0, 0.0);
                for &v in &data[lo..hi] {
                    acc += tw.at(idx) * v;
                    idx += r;
                    if idx >= p as usize {
                        idx -= p as usize;
                    }
                }
                acc
            }) / p as f64
        })
        .collect()
}

/// `values(x) = sum_r s(r) e(-rx/p)`, complex result.
pub fn inverse_complex(s: &Spectrum) -> Vec<Complex64> {
    let mut data = s.coeffs().to_vec();
    fft_raw(&mut data, false);
    data
}

/// Inverse transform to a real function. Fails with `NonHermitian` if the
/// spectrum is not conjugate-symmetric within `TOL_HERM`.
pub fn inverse_transform(s: &Spectrum) -> Result<ZpFunction> {
    let dev = s.hermitian_deviation();
    let tol = s.hermitian_tolerance();
    if dev > tol {
        return Err(Error::NonHermitian {
            deviation: dev,
            tolerance: tol,
        });
    }
    Ok(inverse_real_unchecked(s))
}

/// Inverse transform keeping only the real part, without the symmetry check.
pub(crate) fn inverse_real_unchecked(s: &Spectrum) -> ZpFunction {
    let p = s.p();
    let values = if p <= P_DIRECT {
        inverse_direct_real(s)
    } else {
        inverse_complex(s).into_iter().map(|c| c.re).collect()
    };
    ZpFunction::from_parts_unchecked(p, values)
}

fn inverse_direct_real(s: &Spectrum) -> Vec<f64> {
    let p = s.p();
    let tw = Twiddles::new(p);
    let coeffs = s.coeffs();
    (0..p)
        .into_par_iter()
        .map(|x| {
            // e(-rx/p) = e((p - x) r / p)
            let step = ((p - x) % p) as usize;
            let n = coeffs.len();
            let blocks = n.div_ceil(BLOCK);
            pairwise_sum_by(blocks, &|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(n);
                let mut idx = ((step as u64 * lo as u64) % p) as usize;
                let mut acc = 0.0;
                for c in &coeffs[lo..hi] {
                    let w = tw.at(idx);
                    acc += c.re * w.re - c.im * w.im;
                    idx += step;
                    if idx >= p as usize {
                        idx -= p as usize;
                    }
                }
                acc
            })
        })
        .collect()
}

/// `(f * g)(x) = E_y f(y) g(x - y)`, computed through the spectra.
pub fn convolve(f: &ZpFunction, g: &ZpFunction) -> Result<ZpFunction> {
    same_modulus(f.p(), g.p())?;
    let prod = forward_transform(f).mul_pointwise(&forward_transform(g))?;
    Ok(inverse_real_unchecked(&prod))
}

/// Direct O(p^2) convolution, independent of any transform.
pub fn convolve_direct(f: &ZpFunction, g: &ZpFunction) -> Result<ZpFunction> {
    same_modulus(f.p(), g.p())?;
    let p = f.p() as usize;
    let (fv, gv) = (f.values(), g.values());
    let values: Vec<f64> = (0..p)
        .into_par_iter()
        .map(|x| pairwise_sum_by(p, &|y| fv[y] * gv[(x + p - y) % p]) / p as f64)
        .collect();
    Ok(ZpFunction::from_parts_unchecked(f.p(), values))
}

/// `f°(x) = f(-x)`.
pub fn reflect(f: &ZpFunction) -> ZpFunction {
    let p = f.p() as usize;
    let v = f.values();
    ZpFunction::from_parts_unchecked(f.p(), (0..p).map(|x| v[(p - x) % p]).collect())
}

/// `f * f°`, the autocorrelation; its spectrum is `|f^|^2`.
pub fn autocorrelation(f: &ZpFunction) -> ZpFunction {
    let s = forward_transform(f);
    let p = f.p();
    let sq = Spectrum::from_parts_unchecked(
        p,
        s.coeffs()
            .iter()
            .map(|c| Complex64::new(c.norm_sqr(), 0.0))
            .collect(),
    );
    inverse_real_unchecked(&sq)
}

/// `|A ∩ (A + x)|` for every x, read off `p (1_A * 1_A°)`.
pub fn intersection_counts(p: u64, set: &[u64]) -> Result<Vec<u64>> {
    let ac = autocorrelation(&ZpFunction::indicator(p, set)?);
    let mut out = Vec::with_capacity(p as usize);
    for &v in ac.values() {
        let c = v * p as f64;
        let r = c.round();
        if (c - r).abs() > 1e-6 {
            return Err(Error::check(
                "integer_counts",
                format!("residual {:e}", (c - r).abs()),
            ));
        }
        out.push(r.max(0.0) as u64);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub mean: f64,
    pub l2: f64,
    pub linf: f64,
}

pub fn norms(f: &ZpFunction) -> Norms {
    let v = f.values();
    let n = v.len() as f64;
    Norms {
        mean: pairwise_sum_by(v.len(), &|i| v[i]) / n,
        l2: (pairwise_sum_by(v.len(), &|i| v[i] * v[i]) / n).sqrt(),
        linf: v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
    }
}

/// `sum_r |s(r)|`.
pub fn spectral_l1(s: &Spectrum) -> f64 {
    let c = s.coeffs();
    pairwise_sum_by(c.len(), &|i| c[i].norm())
}

/// `sum_r |s(r)|^2`.
pub fn spectral_energy(s: &Spectrum) -> f64 {
    let c = s.coeffs();
    pairwise_sum_by(c.len(), &|i| c[i].norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn constant_and_point_mass() {
        let one = ZpFunction::constant(5, 1.0).unwrap();
        let s = forward_transform(&one);
        assert!((s.at(0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for r in 1..5 {
            assert!(s.at(r).norm() < 1e-15);
        }
        let delta = ZpFunction::new(5, vec![5.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let s = forward_transform(&delta);
        for r in 0..5 {
            assert!((s.at(r) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let back = inverse_transform(&s).unwrap();
        assert!(back.max_abs_diff(&delta) < 1e-14);
    }

    #[test]
    fn indicator_of_one_two_has_known_l1() {
        // oracle: (1/5) sum_r |e(r/5) + e(2r/5)| = (1/5) sum_r 2|cos(pi r/5)|
        let oracle: f64 = (0..5)
            .map(|r| 2.0 * (std::f64::consts::PI * r as f64 / 5.0).cos().abs() / 5.0)
            .sum();
        assert!(close(oracle, 1.294427, 1e-6));
        let f = ZpFunction::indicator(5, &[1, 2]).unwrap();
        let s = forward_transform(&f);
        assert!(close(spectral_l1(&s), oracle, 1e-12));
        let n = norms(&f);
        assert!(close(n.mean, 0.4, 1e-15));
    }

    #[test]
    fn norms_of_constant() {
        let f = ZpFunction::constant(7, -2.5).unwrap();
        let n = norms(&f);
        assert!(close(n.mean, -2.5, 1e-15) && close(n.l2, 2.5, 1e-15) && close(n.linf, 2.5, 0.0));
        assert!(close(spectral_l1(&forward_transform(&f)), 2.5, 1e-14));
    }

    #[test]
    fn convolution_identity_and_set_intersections() {
        let f = ZpFunction::new(5, vec![0.3, -1.0, 2.0, 0.5, 4.0]).unwrap();
        let e = ZpFunction::new(5, vec![5.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(convolve(&f, &e).unwrap().max_abs_diff(&f) < 1e-14);
        let a = ZpFunction::indicator(5, &[0, 1]).unwrap();
        let b = ZpFunction::indicator(5, &[0, 2]).unwrap();
        let c = convolve(&a, &reflect(&b)).unwrap();
        assert!(close(5.0 * c.at(0), 1.0, 1e-14));
        let bad = ZpFunction::zeros(7).unwrap();
        assert!(matches!(
            convolve(&a, &bad),
            Err(Error::ModulusMismatch(5, 7))
        ));
    }

    #[test]
    fn reflection_index_arithmetic() {
        let f = ZpFunction::new(5, vec![0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(reflect(&f).values(), &[0.0, 4.0, 3.0, 2.0, 1.0]);
        let even = ZpFunction::new(5, vec![1.0, 2.0, 3.0, 3.0, 2.0]).unwrap();
        assert_eq!(reflect(&even), even);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut c = vec![Complex64::new(0.0, 0.0); 5];
        c[1] = Complex64::new(1.0, 0.0);
        let s = Spectrum::new(5, c).unwrap();
        assert!(matches!(
            inverse_transform(&s),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn fast_and_direct_paths_agree_on_prime_above_crossover() {
        let p = 4099;
        let f =
            ZpFunction::from_fn(p, |x| ((x * x * 7 + 3 * x) % 101) as f64 / 50.0 - 1.0).unwrap();
        let d = forward_direct(&f);
        let q = forward_fast(&f);
        let scale = d.max_abs().max(1.0);
        assert!(d.max_abs_diff(&q) <= 1e-10 * scale);
        let back = inverse_transform(&q).unwrap();
        assert!(back.max_abs_diff(&f) <= 1e-10 * norms(&f).linf.max(1.0));
    }

    fn values_strategy() -> impl Strategy<Value = (u64, Vec<f64>, Vec<f64>)> {
        prop::sample::select(vec![5u64, 7, 31, 101, 257]).prop_flat_map(|p| {
            (
                Just(p),
                prop::collection::vec(-1e3f64..1e3, p as usize),
                prop::collection::vec(-1e3f64..1e3, p as usize),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn parseval_and_round_trip((p, a, _b) in values_strategy()) {
            let f = ZpFunction::new(p, a).unwrap();
            let s = forward_transform(&f);
            let energy = norms(&f).l2.powi(2);
            prop_assert!((spectral_energy(&s) - energy).abs() <= 1e-10 * energy.max(1.0));
            let back = inverse_transform(&s).unwrap();
            prop_assert!(back.max_abs_diff(&f) <= 1e-10 * norms(&f).linf.max(1.0));
        }

        #[test]
        fn convolution_theorem_and_young((p, a, b) in values_strategy()) {
            let f = ZpFunction::new(p, a).unwrap();
            let g = ZpFunction::new(p, b).unwrap();
            let conv = convolve(&f, &g).unwrap();
            let direct = convolve_direct(&f, &g).unwrap();
            let (nf, ng) = (norms(&f).l2, norms(&g).l2);
            prop_assert!(conv.max_abs_diff(&direct) <= 1e-10 * (1.0 + nf * ng));
            let lhs = forward_transform(&conv);
            let rhs = forward_transform(&f).mul_pointwise(&forward_transform(&g)).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * (1.0 + nf * ng));
            prop_assert!(spectral_l1(&lhs) <= nf * ng + 1e-9 * (1.0 + nf * ng));
        }

        #[test]
        fn autocorrelation_spectrum_is_nonnegative((p, a, _b) in values_strategy()) {
            let f = ZpFunction::new(p, a).unwrap();
            let ac = convolve(&f, &reflect(&f)).unwrap();
            let s = forward_transform(&ac);
            let scale = norms(&f).l2.powi(2).max(1.0);
            for c in s.coeffs() {
                prop_assert!(c.re >= -1e-10 * scale);
                prop_assert!(c.im.abs() <= 1e-10 * scale);
            }
            prop_assert!(autocorrelation(&f).max_abs_diff(&ac) <= 1e-10 * scale);
        }
    }
}
