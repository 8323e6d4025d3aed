//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Small arguments use the ascending series, larger ones Steed's continued
//! fraction (the CF2 step of Temme's method). Both are accurate to a few ulp
//! in the range where the result is representable; beyond `z ≈ 700` the
//! values underflow to zero.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this, the ascending series; above, the continued fraction.
const SERIES_LIMIT: f64 = 2.0;

const MAX_ITER: usize = 10_000;

/// `K₀(z)` for `z > 0`. Returns `+∞` at zero and `NaN` for negative input.
pub fn bessel_k0(z: f64) -> f64 {
    bessel_k01(z).0
}

/// `K₁(z)` for `z > 0`. Returns `+∞` at zero and `NaN` for negative input.
pub fn bessel_k1(z: f64) -> f64 {
    bessel_k01(z).1
}

/// `(K₀(z), K₁(z))` evaluated together; the continued fraction yields both at
/// once.
pub fn bessel_k01(z: f64) -> (f64, f64) {
    if z.is_nan() || z < 0.0 {
        return (f64::NAN, f64::NAN);
    }
    if z == 0.0 {
        return (f64::INFINITY, f64::INFINITY);
    }
    if z.is_infinite() {
        return (0.0, 0.0);
    }
    if z <= SERIES_LIMIT {
        series(z)
    } else {
        continued_fraction(z)
    }
}

fn series(z: f64) -> (f64, f64) {
    let half = 0.5 * z;
    let log_half = half.ln();
    let q = half * half;

    // K0 = -(ln(z/2) + γ) I0(z) + Σ_{k≥1} H_k q^k / (k!)²
    // K1 = 1/z + ln(z/2) I1(z) - (z/4) Σ_{k≥0} (ψ(k+1) + ψ(k+2)) q^k / (k!(k+1)!)
    let mut i0 = 1.0;
    let mut i1 = half;
    let mut harmonic_sum0 = 0.0;
    let mut psi_sum1 = 1.0 - 2.0 * EULER_GAMMA;

    let mut term0 = 1.0; // q^k / (k!)^2
    let mut term1 = 1.0; // q^k / (k!(k+1)!)
    let mut harmonic = 0.0; // H_k
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term0 *= q / (kf * kf);
        term1 *= q / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        let psi_k1 = harmonic - EULER_GAMMA;
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0);

        i0 += term0;
        i1 += half * term1;
        harmonic_sum0 += harmonic * term0;
        psi_sum1 += (psi_k1 + psi_k2) * term1;

        if term0 * harmonic.max(1.0) < f64::EPSILON * 1e-2 * i0
            && term1 * (psi_k1 + psi_k2).abs().max(1.0) < f64::EPSILON * 1e-2 * psi_sum1.abs().max(1.0)
        {
            break;
        }
    }

    let k0 = -(log_half + EULER_GAMMA) * i0 + harmonic_sum0;
    let k1 = 1.0 / z + log_half * i1 - 0.5 * half * psi_sum1;
    (k0, k1)
}

fn continued_fraction(z: f64) -> (f64, f64) {
    // Steed's algorithm for the ratio K1/K0 together with the normalisation
    // sum S such that K0 = sqrt(π/2z) e^{-z} / S.
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}
