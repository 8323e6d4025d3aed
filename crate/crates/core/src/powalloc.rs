//! Source/relay power allocation under `2 p_s + p_r = p`.
//!
//! `λ = p_s / p_r` parameterizes the split: `p_r = p / (1 + 2λ)`,
//! `p_s = λ p_r`. The asymptotic RS-AF SER is minimized at `λ = 1/2`.

use std::io::Write;

use serde::Serialize;

use crate::analysis::{asymptotic_ser_rs, ModulationConstant, PowerProfile};
use crate::montecarlo::{simulate_point, thread_pool, PointJob, Scheme, SerPoint, Stopping};
use crate::phy::Constellation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSplit {
    pub p_s: f64,
    pub p_r: f64,
    pub p: f64,
    pub lambda: f64,
}

impl PowerSplit {
    pub fn from_lambda(p: f64, lambda: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::domain(format!("total power must be > 0, got {p}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
        }
        let p_r = p / (1.0 + 2.0 * lambda);
        Ok(Self {
            p_s: lambda * p_r,
            p_r,
            p,
            lambda,
        })
    }

    pub fn profile(&self, n0: f64) -> Result<PowerProfile> {
        PowerProfile::new(self.p_s, self.p_r, n0)
    }
}

/// `p_s = p/4`, `p_r = p/2`.
pub fn opa_split(p: f64) -> Result<PowerSplit> {
    let mut split = PowerSplit::from_lambda(p, 0.5)?;
    // exact quarters rather than λ·p/(1+2λ) rounding
    split.p_s = p / 4.0;
    split.p_r = p / 2.0;
    Ok(split)
}

/// `p_s = p_r = p/3`.
pub fn epa_split(p: f64) -> Result<PowerSplit> {
    PowerSplit::from_lambda(p, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaRow {
    pub lambda: f64,
    pub analytic_ser: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSweep {
    pub rows: Vec<LambdaRow>,
    /// λ with the smallest SER; the first one on ties.
    pub argmin: f64,
}

impl LambdaSweep {
    /// CSV with columns `lambda,analytic_ser`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Asymptotic RS-AF SER over a grid of λ values.
pub fn sweep_lambda(p: f64, n_relays: usize, c: ModulationConstant, n0: f64, grid: &[f64]) -> Result<LambdaSweep> {
    if grid.is_empty() {
        return Err(Error::domain("lambda grid is empty"));
    }
    let rows = grid
        .iter()
        .map(|&lambda| {
            let pp = PowerSplit::from_lambda(p, lambda)?.profile(n0)?;
            Ok(LambdaRow {
                lambda,
                analytic_ser: asymptotic_ser_rs(n_relays, &pp, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = rows[0];
    for row in &rows[1..] {
        if row.analytic_ser < best.analytic_ser {
            best = *row;
        }
    }
    Ok(LambdaSweep {
        argmin: best.lambda,
        rows,
    })
}

/// Golden-section search for the minimizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

/// Numerically optimal λ of the asymptotic SER on `[lo, hi]`.
pub fn optimize_lambda(p: f64, n_relays: usize, c: ModulationConstant, n0: f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(format!("bad lambda bracket [{lo}, {hi}]")));
    }
    // surface errors up front so the objective can unwrap
    sweep_lambda(p, n_relays, c, n0, &[lo, hi])?;
    let objective = |lambda: f64| {
        let pp = PowerSplit::from_lambda(p, lambda)
            .and_then(|s| s.profile(n0))
            .expect("bracket validated");
        asymptotic_ser_rs(n_relays, &pp, c).expect("bracket validated").ln()
    };
    Ok(golden_section_min(objective, lo, hi, 1e-9))
}

/// One simulated point of a Monte Carlo λ sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedLambda {
    pub lambda: f64,
    pub n0: f64,
    pub point: SerPoint,
}

/// RS-AF SER simulated for each λ at fixed total power and noise.
///
/// Every λ reuses the same random streams, so differences between grid
/// points are not masked by independent sampling noise.
#[allow(clippy::too_many_arguments)]
pub fn simulate_lambda_sweep(
    scheme: Scheme,
    p: f64,
    n_relays: usize,
    n0: f64,
    grid: &[f64],
    constellation: &Constellation,
    stopping: Stopping,
    master_seed: u64,
    threads: usize,
) -> Result<Vec<SimulatedLambda>> {
    if grid.is_empty() {
        return Err(Error::domain("lambda grid is empty"));
    }
    let pool = thread_pool(threads)?;
    grid.iter()
        .map(|&lambda| {
            let pp = PowerSplit::from_lambda(p, lambda)?.profile(n0)?;
            let job = PointJob {
                scheme,
                n_relays,
                pp,
                constellation,
                stopping,
                master_seed,
                point_id: 0,
            };
            let snr_db = 10.0 * (pp.p_s() / n0).log10();
            Ok(SimulatedLambda {
                lambda,
                n0,
                point: simulate_point(&job, snr_db, &pool)?,
            })
        })
        .collect()
}
