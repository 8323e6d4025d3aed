//! Constellations, AWGN and maximum-likelihood detection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analysis::ModulationConstant;
use crate::channel::RandomStream;
use crate::{Error, Result};

/// Unit-average-power symbol alphabet with its SER constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    name: String,
    points: Vec<Complex64>,
    c: ModulationConstant,
    bits_per_symbol: u32,
}

impl Constellation {
    /// `{+1, −1}` with index 0 ↦ +1.
    pub fn bpsk() -> Self {
        Self {
            name: "bpsk".into(),
            points: vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            c: ModulationConstant::BPSK,
            bits_per_symbol: 1,
        }
    }

    pub fn qpsk() -> Self {
        Self::psk(4).expect("4 is a power of two")
    }

    /// Gray-agnostic M-PSK with points `e^{j(2πk/M + π/M)}` for `M > 2`.
    ///
    /// The SER constant `2 sin²(π/M)` is the usual nearest-neighbour
    /// approximation; only BPSK is covered by the closed-form analysis.
    pub fn psk(m: usize) -> Result<Self> {
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::domain(format!("PSK order must be a power of two >= 2, got {m}")));
        }
        if m == 2 {
            return Ok(Self::bpsk());
        }
        let offset = PI / m as f64;
        let points = (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64 + offset))
            .collect();
        let c = ModulationConstant::new(2.0 * (PI / m as f64).sin().powi(2))?;
        Ok(Self {
            name: if m == 4 { "qpsk".into() } else { format!("{m}psk") },
            points,
            c,
            bits_per_symbol: m.trailing_zeros(),
        })
    }

    /// Lookup by config name: `bpsk`, `qpsk`, or `<M>psk`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "bpsk" => Ok(Self::bpsk()),
            "qpsk" => Ok(Self::qpsk()),
            other => other
                .strip_suffix("psk")
                .and_then(|m| m.parse::<usize>().ok())
                .ok_or_else(|| Error::domain(format!("unknown constellation `{name}`")))
                .and_then(Self::psk),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn modulation_constant(&self) -> ModulationConstant {
        self.c
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.bits_per_symbol
    }

    pub fn average_power(&self) -> f64 {
        self.points.iter().map(|p| p.norm_sqr()).sum::<f64>() / self.points.len() as f64
    }
}

pub fn modulate(index: usize, cons: &Constellation) -> Result<Complex64> {
    cons.points
        .get(index)
        .copied()
        .ok_or_else(|| Error::domain(format!("symbol index {index} out of range for {}", cons.name)))
}

/// Complex noise sample with variance `n0` (`n0/2` per real dimension).
#[inline]
pub fn awgn(n0: f64, stream: &mut RandomStream) -> Complex64 {
    stream.complex_gaussian(n0)
}

/// ML detection over AWGN: `argmin_s |y − α s|²`, ties to the lowest index.
#[inline]
pub fn ml_detect(y: Complex64, alpha: Complex64, cons: &Constellation) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, &s) in cons.points.iter().enumerate() {
        let d = (y - alpha * s).norm_sqr();
        if d < best_dist {
            best = i;
            best_dist = d;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bpsk_mapping() {
        let b = Constellation::bpsk();
        assert_eq!(modulate(0, &b).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(modulate(1, &b).unwrap(), Complex64::new(-1.0, 0.0));
        assert!(modulate(2, &b).is_err());
        assert_eq!(b.modulation_constant().value(), 2.0);
    }

    #[test]
    fn unit_average_power() {
        for m in [2, 4, 8, 16] {
            let c = Constellation::psk(m).unwrap();
            assert!((c.average_power() - 1.0).abs() < 1e-12);
            for i in 0..m {
                assert!((modulate(i, &c).unwrap().norm() - 1.0).abs() < 1e-12);
            }
        }
        assert!(Constellation::psk(3).is_err());
        assert_eq!(Constellation::by_name("QPSK").unwrap().len(), 4);
        assert_eq!(Constellation::by_name("8psk").unwrap().bits_per_symbol(), 3);
        assert!(Constellation::by_name("qam").is_err());
    }

    #[test]
    fn detection_examples() {
        let b = Constellation::bpsk();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(ml_detect(Complex64::new(0.3, 0.0), one, &b), 0);
        assert_eq!(ml_detect(Complex64::new(0.0, 0.0), one, &b), 0);
        // α = −0.5 flips the regions: distance² 0.01 to α·(+1), 0.81 to α·(−1)
        let alpha = Complex64::from_polar(0.5, PI);
        assert_eq!(ml_detect(Complex64::new(-0.4, 0.0), alpha, &b), 0);
    }

    #[test]
    fn awgn_moments() {
        let mut s = RandomStream::derive(5, 5);
        let n = 1_000_000;
        let (mut mr, mut mi, mut vr, mut vi, mut cov) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let z = awgn(1.0, &mut s);
            mr += z.re;
            mi += z.im;
            vr += z.re * z.re;
            vi += z.im * z.im;
            cov += z.re * z.im;
        }
        let nf = n as f64;
        assert!((mr / nf).abs() < 0.005 && (mi / nf).abs() < 0.005);
        assert!(((vr + vi) / nf - 1.0).abs() < 0.01);
        assert!((cov / nf).abs() < 0.01);
    }

    proptest! {
        #[test]
        fn noiseless_round_trip(m in prop::sample::select(vec![2usize, 4, 8]), idx in 0usize..8,
                                mag in 1e-3f64..1e3, phase in -PI..PI) {
            let cons = Constellation::psk(m).unwrap();
            let idx = idx % m;
            let alpha = Complex64::from_polar(mag, phase);
            let y = alpha * modulate(idx, &cons).unwrap();
            prop_assert_eq!(ml_detect(y, alpha, &cons), idx);
        }

        #[test]
        fn scale_invariant(re in -3.0f64..3.0, im in -3.0f64..3.0, mag in 0.1f64..10.0,
                           phase in -PI..PI, k in 1e-3f64..1e3) {
            let cons = Constellation::qpsk();
            let y = Complex64::new(re, im);
            let alpha = Complex64::from_polar(mag, phase);
            prop_assert_eq!(ml_detect(y * k, alpha * k, &cons), ml_detect(y, alpha, &cons));
        }
    }
}
