//! All-participate AF baseline.
//!
//! Every relay forwards its phase-1 observation on its own orthogonal channel
//! with an equal share `p_r / N` of the relay power. Each source cancels its
//! own symbol branch by branch and combines the residuals with maximal-ratio
//! weights `α_k* / Var(w_k)`, whose output SNR is the sum of branch SNRs.

use num_complex::Complex64;

use crate::analysis::PowerProfile;
use crate::channel::{FrameChannels, RandomStream};
use crate::phy::{ml_detect, modulate, Constellation};
use crate::twoway::{forward_both, relay_observe, EndToEndLink, Source};
use crate::{Error, Result};

/// Equal division of the relay power budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApConfig {
    pub n_relays: usize,
    pub per_relay_power: f64,
}

impl ApConfig {
    pub fn new(n_relays: usize, total_relay_power: f64) -> Result<Self> {
        if n_relays == 0 {
            return Err(Error::domain("AP-AF needs at least one relay"));
        }
        if !(total_relay_power > 0.0) {
            return Err(Error::domain("relay power must be > 0"));
        }
        Ok(Self {
            n_relays,
            per_relay_power: total_relay_power / n_relays as f64,
        })
    }

    /// The profile each individual relay forwards with.
    pub fn relay_profile(&self, pp: &PowerProfile) -> Result<PowerProfile> {
        pp.with_relay_power(self.per_relay_power)
    }
}

/// Combined SNR across orthogonal branches, `Σ_k γ_k`.
pub fn ap_effective_snr(gammas: &[f64]) -> Result<f64> {
    if gammas.is_empty() {
        return Err(Error::domain("need at least one branch"));
    }
    if let Some(g) = gammas.iter().find(|g| !(**g >= 0.0)) {
        return Err(Error::domain(format!("branch SNR must be >= 0, got {g}")));
    }
    Ok(gammas.iter().sum())
}

/// Maximal-ratio combination of residuals `y_k = α_k s + w_k`.
///
/// Returns the combined statistic `z = Σ (α_k*/σ_k²) y_k`, its effective gain
/// `Σ |α_k|²/σ_k²` (real), and the output SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Combined {
    pub statistic: Complex64,
    pub gain: f64,
    pub snr: f64,
}

pub fn mrc_combine(branches: &[(Complex64, Complex64, f64)]) -> Combined {
    let mut statistic = Complex64::new(0.0, 0.0);
    let mut gain = 0.0;
    let mut noise = 0.0;
    for &(y, alpha, var) in branches {
        let w = alpha.conj() / var;
        statistic += w * y;
        gain += alpha.norm_sqr() / var;
        noise += w.norm_sqr() * var;
    }
    let snr = if noise > 0.0 { gain * gain / noise } else { 0.0 };
    Combined { statistic, gain, snr }
}

/// Scratch buffers so the hot loop does not allocate.
#[derive(Debug, Default)]
pub(crate) struct ApScratch {
    at_s1: Vec<(Complex64, Complex64, f64)>,
    at_s2: Vec<(Complex64, Complex64, f64)>,
}

/// One AP-AF frame. `pp.p_r()` is the total relay budget; each relay forwards
/// with `p_r / N`. Returns `(ŝ1 detected at S2, ŝ2 detected at S1)`.
pub fn simulate_ap_frame(
    s1: usize,
    s2: usize,
    frame: &FrameChannels,
    pp: &PowerProfile,
    cons: &Constellation,
    stream: &mut RandomStream,
) -> Result<(usize, usize)> {
    let relay_pp = ApConfig::new(frame.n_relays(), pp.p_r())?.relay_profile(pp)?;
    let x1 = modulate(s1, cons)?;
    let x2 = modulate(s2, cons)?;
    let mut scratch = ApScratch::default();
    Ok(ap_frame_inner(x1, x2, frame, &relay_pp, cons, stream, &mut scratch))
}

#[inline]
pub(crate) fn ap_frame_inner(
    x1: Complex64,
    x2: Complex64,
    frame: &FrameChannels,
    relay_pp: &PowerProfile,
    cons: &Constellation,
    stream: &mut RandomStream,
    scratch: &mut ApScratch,
) -> (usize, usize) {
    scratch.at_s1.clear();
    scratch.at_s2.clear();
    for ch in frame.pairs() {
        let obs = relay_observe(x1, x2, ch, relay_pp, stream);
        let (y1, y2, link) = forward_both(&obs, x1, x2, ch, relay_pp, stream);
        scratch.at_s1.push((y1, link.alpha, link.noise_var(Source::S1)));
        scratch.at_s2.push((y2, link.alpha, link.noise_var(Source::S2)));
    }
    let detect = |branches: &[(Complex64, Complex64, f64)]| {
        let c = mrc_combine(branches);
        // dividing by the real gain keeps distances finite at tiny N0
        let z = if c.gain > 0.0 { c.statistic / c.gain } else { c.statistic };
        ml_detect(z, Complex64::new(1.0, 0.0), cons)
    };
    let s2_hat = detect(&scratch.at_s1);
    let s1_hat = detect(&scratch.at_s2);
    (s1_hat, s2_hat)
}

/// Per-branch links for a frame under equal power division.
pub fn branch_links(frame: &FrameChannels, pp: &PowerProfile) -> Result<Vec<EndToEndLink>> {
    let relay_pp = ApConfig::new(frame.n_relays(), pp.p_r())?.relay_profile(pp)?;
    Ok(frame.pairs().iter().map(|ch| EndToEndLink::new(ch, &relay_pp)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::draw_frame_channels;

    #[test]
    fn effective_snr_examples() {
        assert_eq!(ap_effective_snr(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(ap_effective_snr(&[3.25]).unwrap(), 3.25);
        assert_eq!(ap_effective_snr(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(ap_effective_snr(&[]).is_err());
        assert!(ap_effective_snr(&[1.0, -0.1]).is_err());
    }

    #[test]
    fn power_is_split_evenly() {
        let cfg = ApConfig::new(4, 1.0).unwrap();
        assert_eq!(cfg.per_relay_power * 4.0, 1.0);
        assert!(ApConfig::new(0, 1.0).is_err());
    }

    #[test]
    fn noiseless_frame_recovers_both_symbols() {
        let cons = Constellation::bpsk();
        let pp = PowerProfile::new(1.0, 1.0, 1e-300).unwrap();
        let mut s = RandomStream::derive(8, 8);
        for _ in 0..200 {
            let frame = draw_frame_channels(3, &mut s).unwrap();
            let (a, b) = (s.index(2), s.index(2));
            assert_eq!(simulate_ap_frame(a, b, &frame, &pp, &cons, &mut s).unwrap(), (a, b));
        }
    }

    #[test]
    fn mrc_snr_is_sum_of_branch_snrs() {
        let pp = PowerProfile::new(1.0, 1.0, 0.03).unwrap();
        let mut s = RandomStream::derive(12, 0);
        for n in 1..=6 {
            for _ in 0..200 {
                let frame = draw_frame_channels(n, &mut s).unwrap();
                let links = branch_links(&frame, &pp).unwrap();
                for source in [Source::S1, Source::S2] {
                    let branches: Vec<_> = links
                        .iter()
                        .map(|l| (Complex64::new(0.0, 0.0), l.alpha, l.noise_var(source)))
                        .collect();
                    let combined = mrc_combine(&branches).snr;
                    let gammas: Vec<f64> = links.iter().map(|l| l.gamma(source)).collect();
                    let sum = ap_effective_snr(&gammas).unwrap();
                    assert!((combined - sum).abs() <= 1e-9 * sum.max(1.0));
                }
            }
        }
    }

    #[test]
    fn relay_energy_independent_of_count() {
        let pp = PowerProfile::new(1.0, 1.0, 0.1).unwrap();
        let mut s = RandomStream::derive(21, 0);
        let frames = 20_000;
        for n in 1..=5 {
            let relay_pp = ApConfig::new(n, pp.p_r()).unwrap().relay_profile(&pp).unwrap();
            let mut energy = 0.0;
            for _ in 0..frames {
                let frame = draw_frame_channels(n, &mut s).unwrap();
                let x1 = modulate(s.index(2), &Constellation::bpsk()).unwrap();
                let x2 = modulate(s.index(2), &Constellation::bpsk()).unwrap();
                for ch in frame.pairs() {
                    let obs = relay_observe(x1, x2, ch, &relay_pp, &mut s);
                    energy += relay_pp.p_r() * obs.forwarded().norm_sqr();
                }
            }
            let mean = energy / frames as f64;
            assert!((mean - pp.p_r()).abs() < 0.02, "N={n}: {mean}");
        }
    }
}
