//! Closed-form performance expressions for two-way AF relaying.
//!
//! Everything in here is a pure function of its arguments. The asymptotic SER
//! expressions are first-order high-SNR approximations; they are meant to be
//! compared against [`crate::montecarlo`] on a log scale, not to be exact.

use serde::{Deserialize, Serialize};

use crate::special::bessel_k01;
use crate::{Error, Result};

/// Largest relay count for which the double factorial is evaluated.
pub const MAX_RELAYS_ANALYTIC: usize = 20;

/// Transmit powers and noise level of one operating point.
///
/// Both sources transmit with `p_s`; the forwarding relay with `p_r`. The
/// normalized SNRs follow from `λ = p_s / p_r`:
/// `ψ_s = p_s / (N0 (1 + λ))`, `ψ_r = p_r / N0`, `ψ = 2 (1/ψ_r + 1/ψ_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerProfile {
    p_s: f64,
    p_r: f64,
    n0: f64,
}

impl PowerProfile {
    pub fn new(p_s: f64, p_r: f64, n0: f64) -> Result<Self> {
        for (name, v) in [("p_s", p_s), ("p_r", p_r), ("n0", n0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(Self { p_s, p_r, n0 })
    }

    /// Profile with total budget `p = 2 p_s + p_r` split according to `λ = p_s / p_r`.
    pub fn from_split(p: f64, lambda: f64, n0: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::domain(format!("total power must be > 0, got {p}")));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
        }
        let p_r = p / (1.0 + 2.0 * lambda);
        Self::new(lambda * p_r, p_r, n0)
    }

    /// Same powers, different noise variance.
    pub fn with_n0(&self, n0: f64) -> Result<Self> {
        Self::new(self.p_s, self.p_r, n0)
    }

    /// Same source power and noise, different relay power.
    pub fn with_relay_power(&self, p_r: f64) -> Result<Self> {
        Self::new(self.p_s, p_r, self.n0)
    }

    pub fn p_s(&self) -> f64 {
        self.p_s
    }

    pub fn p_r(&self) -> f64 {
        self.p_r
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Total power `2 p_s + p_r`.
    pub fn total(&self) -> f64 {
        2.0 * self.p_s + self.p_r
    }

    pub fn lambda(&self) -> f64 {
        self.p_s / self.p_r
    }

    pub fn psi_s(&self) -> f64 {
        self.p_s / (self.n0 * (1.0 + self.lambda()))
    }

    pub fn psi_r(&self) -> f64 {
        self.p_r / self.n0
    }

    pub fn psi(&self) -> f64 {
        2.0 * (1.0 / self.psi_r() + 1.0 / self.psi_s())
    }
}

/// Constant `c` in the conditional SER `Q(√(c γ))`; 2 for BPSK.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulationConstant(f64);

impl ModulationConstant {
    pub const BPSK: ModulationConstant = ModulationConstant(2.0);

    pub fn new(c: f64) -> Result<Self> {
        if c.is_finite() && c > 0.0 {
            Ok(Self(c))
        } else {
            Err(Error::domain(format!("modulation constant must be > 0, got {c}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Gaussian tail probability `Q(x) = ½ erfc(x/√2)`.
pub fn q_function(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("Q(x) needs finite x, got {x}")));
    }
    Ok(q_unchecked(x))
}

#[inline]
pub(crate) fn q_unchecked(x: f64) -> f64 {
    0.5 * libm::erfc(x * std::f64::consts::FRAC_1_SQRT_2)
}

/// `(2n−1)!! = 1·3·5···(2n−1)`, exact for `n ≤ 20`. `(−1)!! = 1`.
pub fn odd_double_factorial(n: usize) -> Result<u128> {
    if n > MAX_RELAYS_ANALYTIC {
        return Err(Error::Range(format!(
            "(2n-1)!! only supported for n <= {MAX_RELAYS_ANALYTIC}, got {n}"
        )));
    }
    Ok((1..=n as u128).map(|k| 2 * k - 1).product())
}

fn factorial(n: usize) -> Result<u128> {
    if n > MAX_RELAYS_ANALYTIC {
        return Err(Error::Range(format!("n! only supported for n <= {MAX_RELAYS_ANALYTIC}")));
    }
    Ok((1..=n as u128).product())
}

fn check_relays(n_relays: usize) -> Result<()> {
    if n_relays == 0 {
        return Err(Error::domain("at least one relay is required"));
    }
    Ok(())
}

/// High-SNR average SER of Min-Max relay selection:
/// `((2N−1)!!/2) (ψ/c)^N`.
pub fn asymptotic_ser_rs(n_relays: usize, pp: &PowerProfile, c: ModulationConstant) -> Result<f64> {
    check_relays(n_relays)?;
    let coeff = odd_double_factorial(n_relays)? as f64 / 2.0;
    Ok(coeff * (pp.psi() / c.value()).powi(n_relays as i32))
}

/// High-SNR average SER of all-participate AF:
/// `((2N−1)!! / (2 N! c^N)) (N/ψ_r + 1/ψ_s)^N`.
pub fn asymptotic_ser_ap(n_relays: usize, pp: &PowerProfile, c: ModulationConstant) -> Result<f64> {
    check_relays(n_relays)?;
    let n = n_relays as f64;
    let coeff = odd_double_factorial(n_relays)? as f64 / (2.0 * factorial(n_relays)? as f64);
    let base = (n / pp.psi_r() + 1.0 / pp.psi_s()) / c.value();
    Ok(coeff * base.powi(n_relays as i32))
}

/// Closed-form ratio `SER_RS / SER_AP = N! ((1+2λ)/(1+2Nλ))^N`.
pub fn ser_ratio_rs_over_ap(n_relays: usize, lambda: f64) -> Result<f64> {
    check_relays(n_relays)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
    }
    let n = n_relays as f64;
    let base = (1.0 + 2.0 * lambda) / (1.0 + 2.0 * n * lambda);
    Ok(factorial(n_relays)? as f64 * base.powi(n_relays as i32))
}

/// SER improvement of the optimal power split over equal powers, `(8/9)^N`.
pub fn opa_gain(n_relays: usize) -> f64 {
    (8.0f64 / 9.0).powi(n_relays as i32)
}

/// Density of a single relay's effective SNR under the harmonic-mean bound,
/// expressed with `K₀`/`K₁`.
pub fn exact_snr_pdf(x: f64, pp: &PowerProfile) -> Result<f64> {
    snr_pdf_from_psi(x, pp.psi_r(), pp.psi_s())
}

/// [`exact_snr_pdf`] parameterized directly by `ψ_r` and `ψ_s`.
pub fn snr_pdf_from_psi(x: f64, psi_r: f64, psi_s: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("SNR density needs x >= 0, got {x}")));
    }
    if !(psi_r > 0.0 && psi_s > 0.0) {
        return Err(Error::domain("psi_r and psi_s must be > 0"));
    }
    // x·K1(2x/a) -> a/2 leaves a finite density at the origin
    let at_origin = 1.0 / psi_r + 1.0 / psi_s;
    if x == 0.0 {
        return Ok(at_origin);
    }
    let geo = (psi_r * psi_s).sqrt();
    let (k0, k1) = bessel_k01(2.0 * x / geo);
    let prefactor = 2.0 * x * (-x * (1.0 / psi_r + 1.0 / psi_s)).exp() / (psi_r * psi_s);
    let value = prefactor * ((psi_r + psi_s) / geo * k1 + 2.0 * k0);
    // 0·∞ when x is subnormal and K1 overflows
    Ok(if value.is_finite() { value } else { at_origin })
}

/// Which form of the selected-relay SNR CDF to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CdfForm {
    /// `[1 − e^{−ψx}]^N`, always a valid CDF.
    #[default]
    PreLimit,
    /// `(ψx)^N`, the small-`ψ` limit; exceeds one for large `x`.
    Asymptotic,
}

/// CDF of the Min-Max selected SNR, `F(x) = [1 − e^{−ψx}]^N`.
pub fn selected_snr_cdf_approx(x: f64, psi: f64, n_relays: usize, form: CdfForm) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("CDF needs x >= 0, got {x}")));
    }
    if !(psi > 0.0) {
        return Err(Error::domain(format!("psi must be > 0, got {psi}")));
    }
    let n = n_relays as i32;
    Ok(match form {
        CdfForm::PreLimit => (-(-psi * x).exp_m1()).powi(n),
        CdfForm::Asymptotic => (psi * x).powi(n),
    })
}
