use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::is_prime;

/// Relative tolerance for conjugate symmetry of spectra of real functions.
pub const TOL_HERM: f64 = 1e-10;

/// A real-valued function on Z/pZ stored densely as `values[x]`, `x = 0..p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZpFunction {
    p: u64,
    values: Vec<f64>,
}

impl ZpFunction {
    pub fn new(p: u64, values: Vec<f64>) -> Result<Self> {
        check_modulus(p)?;
        if values.len() as u64 != p {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                actual: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(ZpFunction { p, values })
    }

    pub fn from_fn(p: u64, f: impl Fn(u64) -> f64) -> Result<Self> {
        check_modulus(p)?;
        Self::new(p, (0..p).map(f).collect())
    }

    pub fn zeros(p: u64) -> Result<Self> {
        Self::new(p, vec![0.0; p as usize])
    }

    pub fn constant(p: u64, c: f64) -> Result<Self> {
        Self::new(p, vec![c; p as usize])
    }

    /// Indicator function of a set of residues (reduced mod p).
    pub fn indicator(p: u64, set: &[u64]) -> Result<Self> {
        check_modulus(p)?;
        let mut values = vec![0.0; p as usize];
        for &x in set {
            values[(x % p) as usize] = 1.0;
        }
        Self::new(p, values)
    }

    pub(crate) fn from_parts_unchecked(p: u64, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len() as u64, p);
        ZpFunction { p, values }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at residue `x` (reduced mod p).
    #[inline]
    pub fn at(&self, x: u64) -> f64 {
        self.values[(x % self.p) as usize]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ZpFunction> {
        ZpFunction::new(self.p, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: f64) -> ZpFunction {
        ZpFunction::from_parts_unchecked(self.p, self.values.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &ZpFunction) -> Result<ZpFunction> {
        same_modulus(self.p, other.p)?;
        Ok(ZpFunction::from_parts_unchecked(
            self.p,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &ZpFunction) -> Result<ZpFunction> {
        same_modulus(self.p, other.p)?;
        Ok(ZpFunction::from_parts_unchecked(
            self.p,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn max_abs_diff(&self, other: &ZpFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `min_x |f(x)|` together with a minimizing residue (smallest on ties).
    pub fn min_abs(&self) -> (u64, f64) {
        let mut best = (0u64, f64::INFINITY);
        for (x, v) in self.values.iter().enumerate() {
            if v.abs() < best.1 {
                best = (x as u64, v.abs());
            }
        }
        best
    }
}

/// Complex Fourier coefficients indexed by residues `r = 0..p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    p: u64,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(p: u64, coeffs: Vec<Complex64>) -> Result<Self> {
        check_modulus(p)?;
        if coeffs.len() as u64 != p {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                actual: coeffs.len(),
            });
        }
        if let Some(i) = coeffs
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite(i));
        }
        Ok(Spectrum { p, coeffs })
    }

    /// Real, even spectrum from values given for `0 <= r < p/2`, extended by
    /// `s(p - r) = s(r)`.
    pub fn from_half_real(p: u64, half: &[f64]) -> Result<Self> {
        check_modulus(p)?;
        let h = (p as usize).div_ceil(2);
        if half.len() != h {
            return Err(Error::LengthMismatch {
                expected: h,
                actual: half.len(),
            });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); p as usize];
        for r in 0..p as usize {
            let k = if r < h { r } else { p as usize - r };
            coeffs[r] = Complex64::new(half[k], 0.0);
        }
        Spectrum::new(p, coeffs)
    }

    pub(crate) fn from_parts_unchecked(p: u64, coeffs: Vec<Complex64>) -> Self {
        Spectrum { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn at(&self, r: u64) -> Complex64 {
        self.coeffs[(r % self.p) as usize]
    }

    pub fn abs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max_r |s(p - r) - conj(s(r))|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let p = self.p as usize;
        let mut dev = self.coeffs[0].im.abs();
        for r in 1..p {
            dev = dev.max((self.coeffs[p - r] - self.coeffs[r].conj()).norm());
        }
        dev
    }

    pub fn hermitian_tolerance(&self) -> f64 {
        TOL_HERM * self.max_abs().max(1.0)
    }

    pub fn mul_pointwise(&self, other: &Spectrum) -> Result<Spectrum> {
        same_modulus(self.p, other.p)?;
        Ok(Spectrum::from_parts_unchecked(
            self.p,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .collect(),
        ))
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Signed representative `r̄` of a residue: the unique integer with
/// `r̄ ≡ r (mod p)` and `|r̄| <= (p-1)/2` (p odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueRep(pub i64);

impl ResidueRep {
    pub fn of(r: u64, p: u64) -> Self {
        let r = r % p;
        if 2 * r > p {
            ResidueRep(r as i64 - p as i64)
        } else {
            ResidueRep(r as i64)
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }
}

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub(crate) fn same_modulus(a: u64, b: u64) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ModulusMismatch(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates() {
        assert!(matches!(
            ZpFunction::new(4, vec![0.0; 4]),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            ZpFunction::new(5, vec![0.0; 4]),
            Err(Error::LengthMismatch {
                expected: 5,
                actual: 4
            })
        ));
        assert!(matches!(
            ZpFunction::new(5, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite(2))
        ));
        let f = ZpFunction::indicator(5, &[1, 7]).unwrap();
        assert_eq!(f.values(), &[0.0, 1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn signed_representatives() {
        assert_eq!(ResidueRep::of(0, 7).get(), 0);
        assert_eq!(ResidueRep::of(3, 7).get(), 3);
        assert_eq!(ResidueRep::of(4, 7).get(), -3);
        assert_eq!(ResidueRep::of(6, 7).get(), -1);
        for r in 0..101 {
            let rep = ResidueRep::of(r, 101);
            assert!(rep.abs() <= 50);
            assert_eq!((rep.get() + 101).rem_euclid(101) as u64, r);
        }
    }

    #[test]
    fn half_real_spectrum_is_even() {
        let s = Spectrum::from_half_real(5, &[0.0, 1.0, 2.0]).unwrap();
        let re: Vec<f64> = s.coeffs().iter().map(|c| c.re).collect();
        assert_eq!(re, vec![0.0, 1.0, 2.0, 2.0, 1.0]);
        assert_eq!(s.hermitian_deviation(), 0.0);
    }
}
