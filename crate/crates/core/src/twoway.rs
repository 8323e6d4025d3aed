//! The two-phase analog network coding exchange through one AF relay.
//!
//! Phase 1: both sources transmit at once and the relay receives
//! `y_r = √p_s h1 s1 + √p_s h2 s2 + n_r`. Phase 2: the relay scales by
//! `β = (p_s|h1|² + p_s|h2|² + N0)^{-1/2}` and broadcasts with power `p_r`
//! over the same (reciprocal) channels. Each source subtracts its own
//! contribution, leaving `α s_other + w_i` with `α = √(p_s p_r) β h1 h2`.

use num_complex::Complex64;

use crate::analysis::PowerProfile;
use crate::channel::{ChannelPair, RandomStream};
use crate::phy::awgn;

/// One of the two message sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    S1,
    S2,
}

impl Source {
    pub fn other(self) -> Self {
        match self {
            Source::S1 => Source::S2,
            Source::S2 => Source::S1,
        }
    }
}

/// What the relay hears in phase 1 and the gain it will apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayObservation {
    pub y_r: Complex64,
    pub beta: f64,
}

impl RelayObservation {
    /// The signal the relay transmits, `β y_r`, before the `√p_r` power scaling.
    pub fn forwarded(&self) -> Complex64 {
        self.y_r * self.beta
    }
}

/// Amplification factor normalizing the relay's average output power to one.
#[inline]
pub fn amplification(ch: &ChannelPair, pp: &PowerProfile) -> f64 {
    let (g1, g2) = ch.gains();
    (pp.p_s() * (g1 + g2) + pp.n0()).sqrt().recip()
}

/// Gains and noise levels of the end-to-end link after self-interference
/// cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndToEndLink {
    pub alpha: Complex64,
    /// Variance of the residual noise at S1.
    pub noise_var_1: f64,
    /// Variance of the residual noise at S2.
    pub noise_var_2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl EndToEndLink {
    pub fn new(ch: &ChannelPair, pp: &PowerProfile) -> Self {
        let beta = amplification(ch, pp);
        Self::with_beta(ch, pp, beta)
    }

    #[inline]
    fn with_beta(ch: &ChannelPair, pp: &PowerProfile, beta: f64) -> Self {
        let (g1, g2) = ch.gains();
        let n0 = pp.n0();
        let alpha = (pp.p_s() * pp.p_r()).sqrt() * beta * ch.h1 * ch.h2;
        let relay_noise = pp.p_r() * beta * beta * n0;
        let noise_var_1 = relay_noise * g1 + n0;
        let noise_var_2 = relay_noise * g2 + n0;
        let a2 = alpha.norm_sqr();
        Self {
            alpha,
            noise_var_1,
            noise_var_2,
            gamma1: a2 / noise_var_1,
            gamma2: a2 / noise_var_2,
        }
    }

    pub fn noise_var(&self, at: Source) -> f64 {
        match at {
            Source::S1 => self.noise_var_1,
            Source::S2 => self.noise_var_2,
        }
    }

    pub fn gamma(&self, at: Source) -> f64 {
        match at {
            Source::S1 => self.gamma1,
            Source::S2 => self.gamma2,
        }
    }
}

/// Phase 1 at one relay.
pub fn relay_observe(
    s1: Complex64,
    s2: Complex64,
    ch: &ChannelPair,
    pp: &PowerProfile,
    stream: &mut RandomStream,
) -> RelayObservation {
    let amp = pp.p_s().sqrt();
    let y_r = amp * (ch.h1 * s1 + ch.h2 * s2) + awgn(pp.n0(), stream);
    RelayObservation {
        y_r,
        beta: amplification(ch, pp),
    }
}

/// Phase 2 as seen by `source`: receive the relay broadcast, remove the
/// known own-symbol term, and return the residual `α s_other + w` together
/// with the link statistics.
pub fn forward_and_cancel(
    obs: &RelayObservation,
    own_symbol: Complex64,
    source: Source,
    ch: &ChannelPair,
    pp: &PowerProfile,
    stream: &mut RandomStream,
) -> (Complex64, EndToEndLink) {
    let link = EndToEndLink::with_beta(ch, pp, obs.beta);
    let y = downlink_residual(obs, own_symbol, source, ch, pp, stream);
    (y, link)
}

/// Both sources' residuals from one broadcast; noise for S1 is drawn first.
pub fn forward_both(
    obs: &RelayObservation,
    s1: Complex64,
    s2: Complex64,
    ch: &ChannelPair,
    pp: &PowerProfile,
    stream: &mut RandomStream,
) -> (Complex64, Complex64, EndToEndLink) {
    let link = EndToEndLink::with_beta(ch, pp, obs.beta);
    let y1 = downlink_residual(obs, s1, Source::S1, ch, pp, stream);
    let y2 = downlink_residual(obs, s2, Source::S2, ch, pp, stream);
    (y1, y2, link)
}

#[inline]
fn downlink_residual(
    obs: &RelayObservation,
    own_symbol: Complex64,
    source: Source,
    ch: &ChannelPair,
    pp: &PowerProfile,
    stream: &mut RandomStream,
) -> Complex64 {
    let h = match source {
        Source::S1 => ch.h1,
        Source::S2 => ch.h2,
    };
    let sqrt_pr = pp.p_r().sqrt();
    let received = sqrt_pr * h * obs.beta * obs.y_r + awgn(pp.n0(), stream);
    let own = sqrt_pr * pp.p_s().sqrt() * obs.beta * h * h * own_symbol;
    received - own
}

/// Instantaneous post-cancellation SNRs `(γ1, γ2) = |α|² / Var(w_i)`.
pub fn effective_snr_exact(ch: &ChannelPair, pp: &PowerProfile) -> (f64, f64) {
    let link = EndToEndLink::new(ch, pp);
    (link.gamma1, link.gamma2)
}

/// High-SNR form `ψ_r ψ_s |h1|²|h2|² / (ψ_r |h_i|² + ψ_s |h_other|²)`.
pub fn effective_snr_approx(ch: &ChannelPair, pp: &PowerProfile) -> (f64, f64) {
    let (g1, g2) = ch.gains();
    let (pr, ps) = (pp.psi_r(), pp.psi_s());
    let num = pr * ps * g1 * g2;
    let ratio = |d: f64| if num == 0.0 { 0.0 } else { num / d };
    (ratio(pr * g1 + ps * g2), ratio(pr * g2 + ps * g1))
}
