use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::radius::RationalRadius;
use crate::error::Result;
use crate::zp::check_modulus;

/// A set of nontrivial characters `x -> e(rx/p)`, stored as sorted residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterSet {
    p: u64,
    gamma: Vec<u64>,
}

impl CharacterSet {
    /// Reduces mod p, drops the trivial character 0, sorts and deduplicates.
    pub fn new(p: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_modulus(p)?;
        let mut gamma: Vec<u64> = residues
            .into_iter()
            .map(|r| r % p)
            .filter(|&r| r != 0)
            .collect();
        gamma.sort_unstable();
        gamma.dedup();
        Ok(CharacterSet { p, gamma })
    }

    pub fn empty(p: u64) -> Result<Self> {
        Self::new(p, [])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    pub fn d(&self) -> usize {
        self.gamma.len()
    }

    /// `max(d, 1)`, used wherever a bound divides by d.
    pub fn d_eff(&self) -> usize {
        self.gamma.len().max(1)
    }

    pub fn union(&self, extra: impl IntoIterator<Item = u64>) -> CharacterSet {
        let mut gamma = self.gamma.clone();
        gamma.extend(extra.into_iter().map(|r| r % self.p).filter(|&r| r != 0));
        gamma.sort_unstable();
        gamma.dedup();
        CharacterSet { p: self.p, gamma }
    }
}

/// `min(k, p - k)` for `k` already reduced mod p.
#[inline]
fn circ(k: u64, p: u64) -> u64 {
    k.min(p - k)
}

/// Phase profile of a character set: for every x the integer
/// `m(x) = max_{r in Γ} min(rx mod p, p - rx mod p)`, so that
/// `x ∈ B(Γ, t)` exactly when `m(x) <= floor(t p)`.
#[derive(Debug, Clone)]
pub struct BohrProfile {
    chars: CharacterSet,
    m: Vec<u32>,
    /// `cum[k] = #{x : m(x) <= k}` for `k = 0..=(p-1)/2`.
    cum: Vec<u64>,
}

impl BohrProfile {
    pub fn new(chars: &CharacterSet) -> Self {
        let p = chars.p;
        let gamma = &chars.gamma;
        let m: Vec<u32> = (0..p)
            .into_par_iter()
            .map(|x| {
                gamma
                    .iter()
                    .map(|&r| circ(((r as u128 * x as u128) % p as u128) as u64, p))
                    .max()
                    .unwrap_or(0) as u32
            })
            .collect();
        let h = (p / 2) as usize;
        let mut cum = vec![0u64; h + 1];
        for &v in &m {
            cum[v as usize] += 1;
        }
        for k in 1..=h {
            cum[k] += cum[k - 1];
        }
        BohrProfile {
            chars: chars.clone(),
            m,
            cum,
        }
    }

    pub fn chars(&self) -> &CharacterSet {
        &self.chars
    }

    pub fn p(&self) -> u64 {
        self.chars.p
    }

    pub fn phase(&self, x: u64) -> u64 {
        self.m[(x % self.p()) as usize] as u64
    }

    /// `|B(Γ, k/p)|` for an integer threshold k (saturating above p/2).
    pub fn count_at(&self, k: u64) -> u64 {
        let h = self.cum.len() - 1;
        self.cum[(k as usize).min(h)]
    }

    /// Size of the Bohr set at radius `eta`.
    pub fn count(&self, eta: &RationalRadius) -> u64 {
        self.count_at(eta.scaled_floor(self.p()))
    }

    /// Whether `k/p` is a breakpoint, i.e. some x has `m(x) = k`.
    pub fn is_jump(&self, k: u64) -> bool {
        let k = k as usize;
        if k >= self.cum.len() {
            return false;
        }
        if k == 0 {
            self.cum[0] > 0
        } else {
            self.cum[k] > self.cum[k - 1]
        }
    }

    /// Largest admissible threshold index `(p-1)/2`.
    pub fn max_phase(&self) -> u64 {
        (self.cum.len() - 1) as u64
    }

    pub fn build(&self, eta: &RationalRadius) -> BohrSet {
        let k = eta.scaled_floor(self.p()).min(u32::MAX as u64) as u32;
        let members: Vec<bool> = self.m.iter().map(|&v| v <= k).collect();
        BohrSet::from_members(self.chars.clone(), eta.clone(), members)
    }
}

/// `B(Γ, η) = {x : ||r x / p|| <= η for all r ∈ Γ}` with exact membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BohrSet {
    chars: CharacterSet,
    eta: RationalRadius,
    #[serde(skip)]
    members: Vec<bool>,
    elements: Vec<u64>,
}

impl BohrSet {
    fn from_members(chars: CharacterSet, eta: RationalRadius, members: Vec<bool>) -> Self {
        let elements = members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(x, _)| x as u64)
            .collect();
        BohrSet {
            chars,
            eta,
            members,
            elements,
        }
    }

    pub fn chars(&self) -> &CharacterSet {
        &self.chars
    }

    pub fn eta(&self) -> &RationalRadius {
        &self.eta
    }

    pub fn p(&self) -> u64 {
        self.chars.p
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members[(x % self.p()) as usize]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    /// Members in increasing residue order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn is_subset_of(&self, other: &BohrSet) -> bool {
        self.p() == other.p() && self.elements.iter().all(|&x| other.contains(x))
    }
}

/// Builds `B(Γ, η)` by the exact integer test
/// `min(rx mod p, p - rx mod p) * den <= num * p` for every `r ∈ Γ`.
pub fn build_bohr(chars: &CharacterSet, eta: &RationalRadius) -> BohrSet {
    BohrProfile::new(chars).build(eta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBounds {
    pub lower_ok: bool,
    pub doubling_ok: bool,
}

/// `|B(Γ,η)| >= η^d p` and `|B(Γ, min(2η, 1/2))| <= 5^d |B(Γ,η)|`, both exact.
pub fn size_bounds_check(b: &BohrSet) -> SizeBounds {
    let profile = BohrProfile::new(b.chars());
    size_bounds_with(&profile, b.eta())
}

pub(crate) fn size_bounds_with(profile: &BohrProfile, eta: &RationalRadius) -> SizeBounds {
    let d = profile.chars().d();
    let p = profile.p();
    let size = profile.count(eta);
    let size_big = BigInt::from(size);
    let lhs = &size_big * num_traits::pow(eta.denom().clone(), d);
    let rhs = num_traits::pow(eta.numer().clone(), d) * BigInt::from(p);
    let lower_ok = lhs >= rhs;
    let twice = eta
        .mul(&BigRational::from_integer(BigInt::from(2)))
        .expect("doubling a valid radius stays valid");
    let big = BigInt::from(profile.count(&twice));
    let doubling_ok = big <= num_traits::pow(BigInt::from(5), d) * size_big;
    SizeBounds {
        lower_ok,
        doubling_ok,
    }
}

/// Sorted distinct values `m(x)/p`, the radii at which `|B(Γ, t)|` jumps.
pub fn breakpoints(chars: &CharacterSet) -> Vec<RationalRadius> {
    if chars.d() == 0 {
        return Vec::new();
    }
    let profile = BohrProfile::new(chars);
    let p = chars.p() as i64;
    (0..=profile.max_phase())
        .filter(|&k| profile.is_jump(k))
        .map(|k| RationalRadius::from_ratio(k as i64, p).expect("k/p <= 1/2"))
        .collect()
}
