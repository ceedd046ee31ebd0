use rand::Rng;
use serde::Serialize;

use super::smooth::{signed_sqrt, ConstructionConfig, ConstructionReport};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum_by;
use crate::rng::{stream_rng, Stream};
use crate::zp::{autocorrelation, norms, ZpFunction};

/// Signs `ξ_r`, `0 <= r < p/2`, and where they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignVector {
    pub xi: Vec<i8>,
    pub seed: u64,
    /// Index of the draw within the sign stream.
    pub draw: u64,
}

impl SignVector {
    pub fn draw(p: u64, seed: u64, draw: u64) -> Self {
        let mut rng = stream_rng(seed, Stream::Signs, draw);
        let xi = (0..(p as usize).div_ceil(2))
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        SignVector { xi, seed, draw }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SignedDraw {
    #[serde(skip)]
    pub f_xi: ZpFunction,
    pub signs: SignVector,
    /// `E_x exp(c f_ξ(x)²)` for the accepted draw.
    pub moment: f64,
    /// Number of sign vectors drawn, the accepted one included.
    pub draws: usize,
}

/// `E_x exp(c f(x)²)`.
pub fn exp_moment(f: &ZpFunction, c: f64) -> f64 {
    let v = f.values();
    pairwise_sum_by(v.len(), &|x| (c * v[x] * v[x]).exp()) / v.len() as f64
}

/// Draws sign vectors until the exponential moment is at most the
/// configured threshold.
pub fn random_sign_f(
    report: &ConstructionReport,
    cfg: &ConstructionConfig,
    seed: u64,
) -> Result<SignedDraw> {
    for draw in 0..cfg.resample_cap as u64 {
        let signs = SignVector::draw(report.p, seed, draw);
        let f_xi = signed_sqrt(report, &signs.xi)?;
        let moment = exp_moment(&f_xi, cfg.c_exp);
        if moment <= cfg.moment_threshold {
            return Ok(SignedDraw {
                f_xi,
                signs,
                moment,
                draws: draw as usize + 1,
            });
        }
    }
    Err(Error::ResampleCapExceeded(cfg.resample_cap))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClipResult {
    #[serde(skip)]
    pub f: ZpFunction,
    pub threshold: f64,
    /// `threshold / sqrt(log log p)`.
    pub c_clip: f64,
    pub kappa: f64,
    pub a_prime: Vec<u64>,
    /// `||f - f_ξ||_2`.
    pub l2_change: f64,
    /// `||f * f° - f_ξ * f_ξ°||_∞`.
    pub autocorrelation_change: f64,
    /// `||f - f_ξ||_2 (||f||_2 + ||f_ξ||_2)`.
    pub stability_bound: f64,
}

/// Smallest T with `moment · exp(-c T²) <= min((log p)^{-10}, 1/p)`, the
/// Markov bound on the density of `{|f| >= T}`.
pub fn clip_threshold(p: u64, moment: f64, c_exp: f64) -> f64 {
    let lp = (p as f64).ln();
    let target = lp.powi(-10).min(1.0 / p as f64);
    ((moment / target).ln().max(0.0) / c_exp).sqrt()
}

/// Replaces `f_ξ` by κ on `{|f_ξ| >= T}` with κ chosen so that `E f = 0`,
/// where T is [`clip_threshold`] at the moment threshold.
pub fn clip_to_bounded(f_xi: &ZpFunction, cfg: &ConstructionConfig) -> Result<ClipResult> {
    let t = clip_threshold(f_xi.p(), cfg.moment_threshold, cfg.c_exp);
    clip_at(f_xi, t)
}

pub fn clip_at(f_xi: &ZpFunction, threshold: f64) -> Result<ClipResult> {
    let p = f_xi.p();
    let v = f_xi.values();
    let a_prime: Vec<u64> = (0..p)
        .filter(|&x| v[x as usize].abs() >= threshold)
        .collect();
    let (f, kappa) = if a_prime.is_empty() {
        (f_xi.clone(), 0.0)
    } else {
        let mut inside = vec![false; p as usize];
        for &x in &a_prime {
            inside[x as usize] = true;
        }
        let outside_sum = pairwise_sum_by(p as usize, &|x| if inside[x] { 0.0 } else { v[x] });
        let kappa = -outside_sum / a_prime.len() as f64;
        let vals = (0..p as usize)
            .map(|x| if inside[x] { kappa } else { v[x] })
            .collect();
        (ZpFunction::new(p, vals)?, kappa)
    };
    let l2_change = norms(&f.sub(f_xi)?).l2;
    let autocorrelation_change = autocorrelation(&f).max_abs_diff(&autocorrelation(f_xi));
    let stability_bound = l2_change * (norms(&f).l2 + norms(f_xi).l2);
    let lp = (p as f64).ln();
    Ok(ClipResult {
        f,
        threshold,
        c_clip: threshold / lp.ln().sqrt(),
        kappa,
        a_prime,
        l2_change,
        autocorrelation_change,
        stability_bound,
    })
}

/// `f~ = 1/2 + f/(2||f||_∞)`, with values in [0, 1] and mean 1/2.
pub fn unit_range_map(f: &ZpFunction) -> Result<ZpFunction> {
    let linf = norms(f).linf;
    if linf == 0.0 {
        return Err(Error::ZeroFunction);
    }
    f.map(|v| (0.5 + v / (2.0 * linf)).clamp(0.0, 1.0))
}
