//! Counter-based random streams: every draw is addressed by
//! `(seed, stream, index)`, so trials can run in any order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::zp::{forward_transform, spectral_l1, ZpFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Signs = 1,
    Rounding = 2,
    Search = 3,
    Sampling = 4,
}

/// The generator for trial `index` of `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: Stream, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 48) | (index & ((1 << 48) - 1)));
    rng
}

/// Uniform values in [-1, 1), centred, then scaled so that `||f^||_1 = 1`.
pub fn random_unit_function(p: u64, seed: u64, index: u64) -> Result<ZpFunction> {
    let mut rng = stream_rng(seed, Stream::Sampling, index);
    let v: Vec<f64> = (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let f = ZpFunction::new(p, v)?;
    let mean = crate::zp::norms(&f).mean;
    let f = f.map(|x| x - mean)?;
    let l1 = spectral_l1(&forward_transform(&f));
    Ok(f.scale(1.0 / l1))
}

/// A uniformly random subset of size `⌊p/2⌋`, sorted.
pub fn random_half_set(p: u64, seed: u64, index: u64) -> Vec<u64> {
    let mut all: Vec<u64> = (0..p).collect();
    all.shuffle(&mut stream_rng(seed, Stream::Sampling, index));
    all.truncate((p / 2) as usize);
    all.sort_unstable();
    all
}
