//! Fourier analysis on Z/pZ: functions, spectra, transforms, convolution.

mod function;
pub mod io;
mod transform;

pub use function::{ResidueRep, Spectrum, ZpFunction, TOL_HERM};
pub use transform::{
    autocorrelation, convolve, convolve_direct, forward_direct, forward_direct_complex,
    forward_fast, forward_transform, intersection_counts, inverse_complex, inverse_transform,
    norms, reflect, spectral_energy, spectral_l1, Norms, P_DIRECT,
};

pub(crate) use function::check_modulus;
pub(crate) use transform::inverse_real_unchecked;
