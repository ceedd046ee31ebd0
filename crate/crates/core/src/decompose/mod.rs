//! The iterative decomposition, the intermediate-value locator built on it,
//! and the derived small-value procedures.

mod certificate;
mod engine;
mod locate;
mod params;

pub use certificate::{
    validate_certificate, Bounds, DecompositionCertificate, InnerStep, StageExit, StageRecord,
};
pub use engine::{
    run_decomposition, u_window_sup, window_sums, window_sums_direct, STOP_SLACK, TIE_TOL,
};
pub use locate::{
    discrete_ivt, feasibility_margin, gowers_locate, gowers_locate_sets, littlewood_lower_report,
    theorem2_locate, GowersLocation, LittlewoodReport, LocatorResult, ZERO_TOL,
};
pub use params::{
    auto_epsilon_start, inner_bound, outer_bound, DecompositionParams, EpsChoice, C_EPS_DEFAULT,
    MAX_EPSILON,
};
