//! Rayleigh fading and reproducible random streams.
//!
//! Every random quantity in a simulation is drawn from a [`RandomStream`]
//! identified by `(master_seed, stream_id)`. The Monte Carlo engine hands one
//! stream to each fixed-size chunk of frames, so the draws a frame sees do not
//! depend on how many worker threads process the chunks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// An independent pseudo-random sequence.
///
/// Backed by ChaCha8: the master seed keys the cipher and the stream id
/// selects one of its 2^64 disjoint streams.
#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn derive(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        Self { rng }
    }

    /// Standard normal draw.
    #[inline]
    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Circularly-symmetric complex Gaussian with total variance `variance`.
    #[inline]
    pub fn complex_gaussian(&mut self, variance: f64) -> Complex64 {
        let sigma = (0.5 * variance).sqrt();
        let re = self.gaussian();
        let im = self.gaussian();
        Complex64::new(sigma * re, sigma * im)
    }

    /// Uniform index in `0..n`.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }
}

/// Fading coefficients between one relay and the two sources. The same pair
/// is used in both directions for the whole frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPair {
    pub h1: Complex64,
    pub h2: Complex64,
}

impl ChannelPair {
    pub fn new(h1: Complex64, h2: Complex64) -> Self {
        Self { h1, h2 }
    }

    /// Both coefficients drawn as unit-variance Rayleigh fading.
    pub fn draw(stream: &mut RandomStream) -> Self {
        let h1 = stream.complex_gaussian(1.0);
        let h2 = stream.complex_gaussian(1.0);
        Self { h1, h2 }
    }

    /// `(|h1|², |h2|²)`
    #[inline]
    pub fn gains(&self) -> (f64, f64) {
        (self.h1.norm_sqr(), self.h2.norm_sqr())
    }
}

/// One channel pair per relay, constant over a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameChannels {
    pairs: Vec<ChannelPair>,
}

impl FrameChannels {
    pub fn new(pairs: Vec<ChannelPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::domain("a frame needs at least one relay"));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[ChannelPair] {
        &self.pairs
    }

    pub fn n_relays(&self) -> usize {
        self.pairs.len()
    }

    /// Redraw every pair in place, keeping the relay count.
    pub fn redraw(&mut self, stream: &mut RandomStream) {
        for pair in &mut self.pairs {
            *pair = ChannelPair::draw(stream);
        }
    }
}

/// `N` independent Rayleigh channel pairs for one frame.
pub fn draw_frame_channels(n_relays: usize, stream: &mut RandomStream) -> Result<FrameChannels> {
    if n_relays == 0 {
        return Err(Error::domain("n_relays must be >= 1"));
    }
    let pairs = (0..n_relays).map(|_| ChannelPair::draw(stream)).collect();
    Ok(FrameChannels { pairs })
}
