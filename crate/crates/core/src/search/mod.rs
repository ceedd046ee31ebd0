//! Exhaustive and heuristic values of S(p), interval bounds, intersection
//! profiles and scaling studies.

mod exhaustive;
mod local;
mod profile;
mod study;

pub use exhaustive::{
    exhaustive_littlewood, mask_l1, set_l1, ExhaustiveResult, SubsetCanonicalizer, P_MAX_EXHAUSTIVE,
};
pub use local::{interval_l1, local_search_littlewood, LocalSearchResult, SearchStart};
pub use profile::{deviation_profile, DeviationProfile};
pub use study::{scaling_row, scaling_study, write_scaling_csv, ScalingRow, StudyConfig};
