//! Fourier analysis on Z/pZ with Bohr sets, an iterative spectral
//! decomposition, and explicit autocorrelation constructions.
//!
//! Every algorithm that claims an inequality also produces enough data to
//! check it independently: decomposition certificates, construction reports
//! with named checks, and exact rational arithmetic for Bohr-set predicates.

pub mod bohr;
pub mod cli;
pub mod construct;
pub mod decompose;
pub mod error;
pub mod numeric;
pub mod report;
pub mod rng;
pub mod search;
pub mod zp;

pub use error::{Error, Result};
