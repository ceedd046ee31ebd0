use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A radius on the circle, kept as an exact rational in `[0, 1/2]`.
///
/// Values above 1/2 are clamped to 1/2: on the circle every phase is within
/// 1/2 of zero, so larger radii describe the same set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalRadius(BigRational);

impl RationalRadius {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidRadius(format!("{value} is negative")));
        }
        let half = half();
        Ok(RationalRadius(if value > half { half } else { value }))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidRadius("zero denominator".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    /// Exact conversion of a finite, nonnegative float.
    pub fn from_f64(x: f64) -> Result<Self> {
        let r = BigRational::from_float(x)
            .ok_or_else(|| Error::InvalidRadius(format!("{x} is not finite")))?;
        Self::new(r)
    }

    pub fn half() -> Self {
        RationalRadius(half())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_half(&self) -> bool {
        self.0 == half()
    }

    /// `floor(value * p)`, the largest admissible integer phase distance.
    pub fn scaled_floor(&self, p: u64) -> u64 {
        let t = (&self.0 * BigRational::from_integer(p.into()))
            .floor()
            .to_integer();
        t.to_u64().unwrap_or(u64::MAX)
    }

    /// Multiply by a rational and clamp.
    pub fn mul(&self, factor: &BigRational) -> Result<Self> {
        Self::new(&self.0 * factor)
    }
}

/// An exact nonnegative rational with no clamping, for nominal parameters
/// (the initial radius 1, products of ε powers, and so on).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(pub BigRational);

impl Ratio {
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    /// The clamped radius describing the same Bohr set.
    pub fn radius(&self) -> Result<RationalRadius> {
        RationalRadius::new(self.0.clone())
    }
}

impl From<&RationalRadius> for Ratio {
    fn from(r: &RationalRadius) -> Self {
        Ratio(r.0.clone())
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Float value of a big rational, robust to huge numerators/denominators.
pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits() as i64 - d.bits() as i64;
    // bring to ~2^0 by exact shifting, then rescale
    let (n2, d2) = if shift > 0 {
        (n.clone(), d << (shift as usize))
    } else {
        (n << ((-shift) as usize), d.clone())
    };
    let q = BigRational::new(n2, d2).to_f64().unwrap_or(0.0);
    q * 2f64.powi(shift as i32)
}

impl fmt::Display for RationalRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RationalRadius {
    type Err = Error;

    /// Accepts `num/den`, an integer, or a decimal literal (converted exactly).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad radius `{s}`")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad radius `{s}`")))?;
            if d.is_zero() {
                return Err(Error::InvalidRadius("zero denominator".into()));
            }
            return Self::new(BigRational::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let digits = format!("{int}{frac}");
            let n: BigInt = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad radius `{s}`")))?;
            let d = num_traits::pow(BigInt::from(10), frac.len());
            return Self::new(BigRational::new(n, d));
        }
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad radius `{s}`")))?;
        Self::new(BigRational::from_integer(n))
    }
}

impl Serialize for RationalRadius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalRadius {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_and_parses() {
        let r: RationalRadius = "3/4".parse().unwrap();
        assert!(r.is_half());
        let r: RationalRadius = "2/10".parse().unwrap();
        assert_eq!(r.to_string(), "1/5");
        let r: RationalRadius = "0.125".parse().unwrap();
        assert_eq!(r.to_string(), "1/8");
        assert!("-1/3".parse::<RationalRadius>().is_err());
        assert!("1/0".parse::<RationalRadius>().is_err());
    }

    #[test]
    fn scaled_floor_is_exact() {
        let r = RationalRadius::from_ratio(1, 5).unwrap();
        assert_eq!(r.scaled_floor(5), 1);
        assert_eq!(r.scaled_floor(101), 20);
        let tiny = RationalRadius::from_f64(1e-300).unwrap();
        assert_eq!(tiny.scaled_floor(10_007), 0);
        assert!((tiny.to_f64() / 1e-300 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn float_conversion_of_extreme_ratios() {
        let n = BigInt::one();
        let d = num_traits::pow(BigInt::from(10), 400);
        let r = BigRational::new(n, d);
        assert_eq!(ratio_to_f64(&r), 0.0);
        let r = BigRational::new(BigInt::from(3), num_traits::pow(BigInt::from(2), 1030));
        let v = ratio_to_f64(&r);
        assert!(v > 0.0 && v < 1e-300);
    }
}
