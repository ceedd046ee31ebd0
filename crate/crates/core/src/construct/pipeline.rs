use serde::Serialize;

use super::rounding::{round_to_set, RoundingReport};
use super::sign::{clip_to_bounded, random_sign_f, unit_range_map, ClipResult, SignedDraw};
use super::smooth::{build_big_f, ConstructionConfig, ConstructionReport};
use crate::error::Result;
use crate::zp::{autocorrelation, norms, ZpFunction};

/// Everything produced on the way from F to a set A of size `⌊p/2⌋`.
#[derive(Debug, Clone, Serialize)]
pub struct GowersSetReport {
    pub p: u64,
    pub config: ConstructionConfig,
    pub construction: ConstructionReport,
    pub signs: SignedDraw,
    pub clip: ClipResult,
    /// `||f||_∞` of the clipped function.
    pub linf: f64,
    #[serde(skip)]
    pub f_tilde: ZpFunction,
    /// `min_x |f~ * f~°(x) - 1/4|`.
    pub dev_tilde_min: f64,
    /// `min_x |f * f°(x)| / (4 ||f||_∞²)`, equal to `dev_tilde_min` by the
    /// affine identity.
    pub dev_tilde_predicted: f64,
    /// `p · dev_tilde_min`, the deviation in counts the rounding has to
    /// preserve.
    pub count_level_target: f64,
    /// `p^{2/3}`, the size of the rounding noise in counts.
    pub rounding_noise: f64,
    pub rounding: RoundingReport,
}

/// F, random signs, clipping, the map to [0, 1], and randomized rounding.
pub fn gowers_set_pipeline(p: u64, cfg: &ConstructionConfig) -> Result<GowersSetReport> {
    let construction = build_big_f(p, cfg)?;
    gowers_set_from(construction, cfg)
}

/// As [`gowers_set_pipeline`], reusing an existing construction report.
pub fn gowers_set_from(
    construction: ConstructionReport,
    cfg: &ConstructionConfig,
) -> Result<GowersSetReport> {
    let p = construction.p;
    let signs = random_sign_f(&construction, cfg, cfg.seed)?;
    let clip = clip_to_bounded(&signs.f_xi, cfg)?;
    let linf = norms(&clip.f).linf;
    let f_tilde = unit_range_map(&clip.f)?;
    let dev_tilde_min = autocorrelation(&f_tilde)
        .values()
        .iter()
        .map(|v| (v - 0.25).abs())
        .fold(f64::INFINITY, f64::min);
    let dev_tilde_predicted = autocorrelation(&clip.f).min_abs().1 / (4.0 * linf * linf);
    let rounding = round_to_set(&f_tilde, cfg, cfg.seed)?;
    Ok(GowersSetReport {
        p,
        config: cfg.clone(),
        construction,
        signs,
        clip,
        linf,
        f_tilde,
        dev_tilde_min,
        dev_tilde_predicted,
        count_level_target: p as f64 * dev_tilde_min,
        rounding_noise: (p as f64).powf(2.0 / 3.0),
        rounding,
    })
}
