//! Bohr sets on Z/pZ with exact rational radii.

mod cutoff;
mod intervals;
mod radius;
mod regular;
mod set;

pub use cutoff::{
    character_flatness, cutoff, cutoff_shift_deviation, cutoff_spectrum, cutoff_spectrum_direct,
    shift_deviation_count, BohrCutoff,
};
pub use intervals::{select_disjoint_intervals, total_measure, Interval};
pub use radius::{Ratio, RationalRadius};
pub use regular::{
    find_regular_value, find_regular_value_with, verify_regular, verify_regular_with,
};
pub use set::{
    breakpoints, build_bohr, size_bounds_check, BohrProfile, BohrSet, CharacterSet, SizeBounds,
};

pub(crate) use radius::ratio_to_f64;
