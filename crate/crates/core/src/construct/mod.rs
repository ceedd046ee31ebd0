//! Explicit constructions: the function F with nonnegative spectrum and
//! `min |F| ≫ 1/log p`, its spectral square root, and the randomized
//! pipeline that turns it into a set with controlled autocorrelation.

mod kernel;
mod pipeline;
mod rounding;
mod sign;
mod smooth;

pub use kernel::{
    clausen3, f1_eval, f2_eval, f2_eval_clausen, f2_hat, g2_l1_majorant, reduce_angle,
    smoothing_width,
};
pub use pipeline::{gowers_set_from, gowers_set_pipeline, GowersSetReport};
pub use rounding::{cycle_partition, hoeffding_bound, round_to_set, RoundingReport};
pub use sign::{
    clip_at, clip_threshold, clip_to_bounded, exp_moment, random_sign_f, unit_range_map,
    ClipResult, SignVector, SignedDraw,
};
pub use smooth::{
    build_big_f, build_big_f_unchecked, build_g1, build_g2, signed_sqrt, sqrt_spectrum,
    ConstructionConfig, ConstructionReport, P_MIN_CONSTRUCT,
};
