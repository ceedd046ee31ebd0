use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest accepted ε. The iteration itself is meaningful for any ε > 0;
/// the bound keeps `1 - |β^|` style estimates in their useful range.
pub const MAX_EPSILON: f64 = 0.5;

/// Default multiplier for the automatic choice of ε.
pub const C_EPS_DEFAULT: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionParams {
    pub epsilon: f64,
    /// Maximum number of outer steps (the bound is 2/ε).
    pub j_cap: usize,
    /// Maximum number of inner steps within one outer step (the bound is 2/ε²).
    pub i_cap: usize,
}

impl DecompositionParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(DecompositionParams {
            epsilon,
            j_cap: outer_bound(epsilon).ceil() as usize + 1,
            i_cap: inner_bound(epsilon).ceil() as usize + 1,
        })
    }

    pub fn with_caps(epsilon: f64, j_cap: usize, i_cap: usize) -> Result<Self> {
        check_epsilon(epsilon)?;
        if (j_cap as f64) < outer_bound(epsilon) || (i_cap as f64) < inner_bound(epsilon) {
            return Err(Error::PreconditionFailed(format!(
                "caps ({j_cap}, {i_cap}) are below the guaranteed bounds ({}, {})",
                outer_bound(epsilon),
                inner_bound(epsilon)
            )));
        }
        Ok(DecompositionParams {
            epsilon,
            j_cap,
            i_cap,
        })
    }

    /// ε as an exact rational (the binary value of the float).
    pub fn eps_exact(&self) -> BigRational {
        BigRational::from_float(self.epsilon).expect("validated finite")
    }
}

/// `2/ε`, the bound on the number of outer steps.
pub fn outer_bound(eps: f64) -> f64 {
    2.0 / eps
}

/// `2/ε²`, the bound on `|Γ|`.
pub fn inner_bound(eps: f64) -> f64 {
    2.0 / (eps * eps)
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 && eps <= MAX_EPSILON {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(format!(
            "epsilon must lie in (0, {MAX_EPSILON}], got {eps}"
        )))
    }
}

/// How ε is chosen for the locator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsChoice {
    Fixed(f64),
    /// Start at `min(1/2, c_eps (ln ln p / ln p)^{1/3})` and raise until the
    /// run is feasible.
    Auto {
        c_eps: f64,
    },
}

impl Default for EpsChoice {
    fn default() -> Self {
        EpsChoice::Auto {
            c_eps: C_EPS_DEFAULT,
        }
    }
}

impl FromStr for EpsChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(EpsChoice::default());
        }
        s.parse::<f64>()
            .map(EpsChoice::Fixed)
            .map_err(|_| Error::Parse(format!("epsilon must be a number or `auto`, got `{s}`")))
    }
}

/// Starting point of the automatic ε schedule.
pub fn auto_epsilon_start(p: u64, c_eps: f64) -> f64 {
    let lp = (p as f64).ln();
    let rate = (lp.ln().max(0.0) / lp).cbrt();
    (c_eps * rate).clamp(f64::MIN_POSITIVE, MAX_EPSILON)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_cover_the_bounds() {
        let p = DecompositionParams::new(0.25).unwrap();
        assert!(p.j_cap >= 8 && p.i_cap >= 32);
        assert!(DecompositionParams::new(0.0).is_err());
        assert!(DecompositionParams::new(0.6).is_err());
        assert!(DecompositionParams::with_caps(0.5, 3, 100).is_err());
        assert!(DecompositionParams::with_caps(0.5, 4, 8).is_ok());
    }

    #[test]
    fn eps_choice_parsing_and_auto_start() {
        assert_eq!("auto".parse::<EpsChoice>().unwrap(), EpsChoice::default());
        assert_eq!("0.3".parse::<EpsChoice>().unwrap(), EpsChoice::Fixed(0.3));
        assert!("x".parse::<EpsChoice>().is_err());
        let e = auto_epsilon_start(10_007, 0.5);
        let lp = 10_007f64.ln();
        assert!((e - 0.5 * (lp.ln() / lp).cbrt()).abs() < 1e-15);
        assert_eq!(auto_epsilon_start(10_007, 1.0), 0.5);
    }
}
