//! Frame-level Monte Carlo SER estimation.
//!
//! A frame carries one symbol per source over one independent channel draw.
//! Frames are grouped into fixed-size chunks; chunk `c` of SNR point `p` draws
//! everything from [`RandomStream::derive`]`(seed, p << 40 | c)`. Chunks are
//! processed in rounds on a rayon pool and folded back in chunk order, and the
//! stopping rule is evaluated after every chunk, so the thread count never
//! changes the result.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::PowerProfile;
use crate::apaf::{ap_frame_inner, ApConfig, ApScratch};
use crate::channel::{ChannelPair, FrameChannels, RandomStream};
use crate::phy::{ml_detect, Constellation};
use crate::selection::{minmax_index, optimal_index, SelectionRule};
use crate::twoway::{effective_snr_exact, forward_both, relay_observe, RelayObservation};
use crate::{Error, Result};

/// Frames per chunk; each chunk owns one random stream.
pub const CHUNK_FRAMES: u64 = 4096;
/// Upper bound on chunks dispatched per round.
const MAX_ROUND_CHUNKS: u64 = 128;

const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "rs-optimal")]
    RsOptimal,
    #[serde(rename = "rs-minmax")]
    RsMinmax,
    #[serde(rename = "apaf")]
    Apaf,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::RsOptimal => "rs-optimal",
            Scheme::RsMinmax => "rs-minmax",
            Scheme::Apaf => "apaf",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "rs-optimal" | "optimal" => Ok(Scheme::RsOptimal),
            "rs-minmax" | "minmax" => Ok(Scheme::RsMinmax),
            "apaf" => Ok(Scheme::Apaf),
            other => Err(Error::domain(format!("unknown scheme `{other}`"))),
        }
    }

    pub fn selection_rule(self) -> Option<SelectionRule> {
        match self {
            Scheme::RsOptimal => Some(SelectionRule::Optimal),
            Scheme::RsMinmax => Some(SelectionRule::MinMax),
            Scheme::Apaf => None,
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// When to stop simulating one SNR point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Stopping {
    /// Stop once the worse source has at least this many symbol errors.
    pub min_errors: u64,
    /// Hard cap on frames; points stopped here are censored.
    pub max_frames: u64,
}

impl Default for Stopping {
    fn default() -> Self {
        Self {
            min_errors: 100,
            max_frames: 100_000_000,
        }
    }
}

impl Stopping {
    pub fn validate(&self) -> Result<()> {
        if self.min_errors < 1 {
            return Err(Error::config("stopping.min_errors", "must be >= 1"));
        }
        if self.max_frames < self.min_errors {
            return Err(Error::config("stopping.max_frames", "must be >= min_errors"));
        }
        Ok(())
    }
}

/// Meaning of the SNR grid values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SnrAxis {
    /// `p_s / N0`
    #[default]
    Source,
    /// `(2 p_s + p_r) / N0`; keeps N0 common across different power splits.
    Total,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub scheme: Scheme,
    pub n_relays: usize,
    pub p_s: f64,
    /// Forwarding power of the selected relay, or the total relay budget for
    /// AP-AF (split evenly).
    pub p_r: f64,
    pub constellation: Constellation,
    pub snr_grid_db: Vec<f64>,
    pub snr_axis: SnrAxis,
    pub stopping: Stopping,
    pub master_seed: u64,
    /// Worker threads; 0 picks rayon's default.
    pub threads: usize,
}

impl ExperimentConfig {
    /// BPSK, `p_s = p_r = 1`, default stopping, seed 1, single grid point.
    pub fn new(scheme: Scheme, n_relays: usize) -> Self {
        Self {
            scheme,
            n_relays,
            p_s: 1.0,
            p_r: 1.0,
            constellation: Constellation::bpsk(),
            snr_grid_db: vec![10.0],
            snr_axis: SnrAxis::Source,
            stopping: Stopping::default(),
            master_seed: 1,
            threads: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_relays == 0 {
            return Err(Error::config("n_relays", "must be >= 1"));
        }
        if self.snr_grid_db.is_empty() {
            return Err(Error::domain("snr grid is empty"));
        }
        if let Some(v) = self.snr_grid_db.iter().find(|v| !v.is_finite()) {
            return Err(Error::config("snr_db", format!("non-finite value {v}")));
        }
        if !(self.p_s > 0.0 && self.p_s.is_finite()) {
            return Err(Error::config("power.p_s", "must be > 0"));
        }
        if !(self.p_r > 0.0 && self.p_r.is_finite()) {
            return Err(Error::config("power.p_r", "must be > 0"));
        }
        self.stopping.validate()
    }

    /// Operating point for one grid value.
    pub fn profile_at(&self, snr_db: f64) -> Result<PowerProfile> {
        let snr = 10f64.powf(snr_db / 10.0);
        let reference = match self.snr_axis {
            SnrAxis::Source => self.p_s,
            SnrAxis::Total => 2.0 * self.p_s + self.p_r,
        };
        PowerProfile::new(self.p_s, self.p_r, reference / snr)
    }
}

/// Per-frame simulation state with reusable buffers.
pub struct FrameRunner<'a> {
    kernel: Kernel<'a>,
    frame: FrameChannels,
}

struct Kernel<'a> {
    scheme: Scheme,
    pp: PowerProfile,
    relay_pp: PowerProfile,
    cons: &'a Constellation,
    gammas: Vec<(f64, f64)>,
    ap: ApScratch,
}

impl<'a> FrameRunner<'a> {
    pub fn new(scheme: Scheme, n_relays: usize, pp: PowerProfile, cons: &'a Constellation) -> Result<Self> {
        let relay_pp = match scheme {
            Scheme::Apaf => ApConfig::new(n_relays, pp.p_r())?.relay_profile(&pp)?,
            _ => pp,
        };
        let zero = Complex64::new(0.0, 0.0);
        Ok(Self {
            kernel: Kernel {
                scheme,
                pp,
                relay_pp,
                cons,
                gammas: Vec::with_capacity(n_relays),
                ap: ApScratch::default(),
            },
            frame: FrameChannels::new(vec![ChannelPair::new(zero, zero); n_relays])?,
        })
    }

    /// Draw a fresh channel realization and run one frame through it.
    #[inline]
    pub fn run(&mut self, stream: &mut RandomStream) -> (u32, u32) {
        self.frame.redraw(stream);
        self.kernel.run(&self.frame, stream)
    }

    /// Run one frame on given channels. Returns symbol errors detected at
    /// `(S1, S2)`.
    #[inline]
    pub fn run_on(&mut self, frame: &FrameChannels, stream: &mut RandomStream) -> (u32, u32) {
        self.kernel.run(frame, stream)
    }
}

impl Kernel<'_> {
    #[inline]
    fn run(&mut self, frame: &FrameChannels, stream: &mut RandomStream) -> (u32, u32) {
        let m = self.cons.len();
        let i1 = stream.index(m);
        let i2 = stream.index(m);
        let x1 = self.cons.points()[i1];
        let x2 = self.cons.points()[i2];

        let (s1_hat, s2_hat) = match self.scheme {
            Scheme::Apaf => ap_frame_inner(x1, x2, frame, &self.relay_pp, self.cons, stream, &mut self.ap),
            Scheme::RsOptimal | Scheme::RsMinmax => {
                self.gammas.clear();
                self.gammas
                    .extend(frame.pairs().iter().map(|ch| effective_snr_exact(ch, &self.pp)));
                let selected = if self.scheme == Scheme::RsMinmax {
                    minmax_index(&self.gammas).0
                } else {
                    optimal_index(&self.gammas, self.cons.modulation_constant()).0
                };
                // every relay listens in phase 1; only the selected one forwards
                let mut chosen: Option<RelayObservation> = None;
                for (k, ch) in frame.pairs().iter().enumerate() {
                    let obs = relay_observe(x1, x2, ch, &self.pp, stream);
                    if k == selected {
                        chosen = Some(obs);
                    }
                }
                let obs = chosen.expect("selected index is in range");
                let ch = &frame.pairs()[selected];
                let (y1, y2, link) = forward_both(&obs, x1, x2, ch, &self.pp, stream);
                (
                    ml_detect(y2, link.alpha, self.cons),
                    ml_detect(y1, link.alpha, self.cons),
                )
            }
        };
        // errors at S1 concern its estimate of s2, and vice versa
        ((s2_hat != i2) as u32, (s1_hat != i1) as u32)
    }
}

/// One RS-AF frame on the given channels; symbols are drawn from `stream`.
pub fn run_frame_rs(
    cfg: &ExperimentConfig,
    pp: &PowerProfile,
    frame: &FrameChannels,
    stream: &mut RandomStream,
) -> Result<(u32, u32)> {
    if cfg.scheme == Scheme::Apaf {
        return Err(Error::domain("run_frame_rs needs a relay-selection scheme"));
    }
    let mut runner = FrameRunner::new(cfg.scheme, frame.n_relays(), *pp, &cfg.constellation)?;
    Ok(runner.run_on(frame, stream))
}

/// Estimate for one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct SerPoint {
    pub snr_db: f64,
    pub frames: u64,
    pub errors_s1: u64,
    pub errors_s2: u64,
    pub ser_s1: f64,
    pub ser_s2: f64,
    pub ser_avg: f64,
    /// Half-width of the 95% normal-approximation interval on `ser_avg`.
    pub ci95: f64,
    /// The frame cap was hit before `min_errors` accumulated.
    pub censored: bool,
}

impl SerPoint {
    pub fn from_counts(snr_db: f64, frames: u64, errors_s1: u64, errors_s2: u64, censored: bool) -> Self {
        let f = frames.max(1) as f64;
        let ser_s1 = errors_s1 as f64 / f;
        let ser_s2 = errors_s2 as f64 / f;
        let ser_avg = (errors_s1 + errors_s2) as f64 / (2.0 * f);
        let ci95 = Z95 * (ser_avg * (1.0 - ser_avg) / (2.0 * f)).sqrt();
        Self {
            snr_db,
            frames,
            errors_s1,
            errors_s2,
            ser_s1,
            ser_s2,
            ser_avg,
            ci95,
            censored,
        }
    }

    pub fn ci_overlaps(&self, other: &SerPoint) -> bool {
        (self.ser_avg - other.ser_avg).abs() <= self.ci95 + other.ci95
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    snr_db: f64,
    frames: u64,
    errors_s1: u64,
    errors_s2: u64,
    ser_s1: f64,
    ser_s2: f64,
    ser_avg: f64,
    ci95: f64,
    censored_flag: u8,
}

/// One simulated SER-vs-SNR curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SerCurve {
    pub points: Vec<SerPoint>,
}

impl SerCurve {
    pub fn new(points: Vec<SerPoint>) -> Self {
        Self { points }
    }

    /// CSV with columns
    /// `snr_db,frames,errors_s1,errors_s2,ser_s1,ser_s2,ser_avg,ci95,censored_flag`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(CsvRow {
                snr_db: p.snr_db,
                frames: p.frames,
                errors_s1: p.errors_s1,
                errors_s2: p.errors_s2,
                ser_s1: p.ser_s1,
                ser_s2: p.ser_s2,
                ser_avg: p.ser_avg,
                ci95: p.ci95,
                censored_flag: p.censored as u8,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let points = r
            .deserialize::<CsvRow>()
            .map(|row| {
                let row = row?;
                Ok(SerPoint {
                    snr_db: row.snr_db,
                    frames: row.frames,
                    errors_s1: row.errors_s1,
                    errors_s2: row.errors_s2,
                    ser_s1: row.ser_s1,
                    ser_s2: row.ser_s2,
                    ser_avg: row.ser_avg,
                    ci95: row.ci95,
                    censored: row.censored_flag != 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points })
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    frames: u64,
    e1: u64,
    e2: u64,
}

/// Everything needed to simulate one operating point.
#[derive(Debug, Clone)]
pub struct PointJob<'a> {
    pub scheme: Scheme,
    pub n_relays: usize,
    pub pp: PowerProfile,
    pub constellation: &'a Constellation,
    pub stopping: Stopping,
    pub master_seed: u64,
    /// High bits of every chunk's stream id.
    pub point_id: u64,
}

fn run_chunk(job: &PointJob<'_>, chunk: u64, frames: u64) -> Result<Tally> {
    let mut stream = RandomStream::derive(job.master_seed, (job.point_id << 40) | chunk);
    let mut runner = FrameRunner::new(job.scheme, job.n_relays, job.pp, job.constellation)?;
    let mut t = Tally {
        frames,
        ..Tally::default()
    };
    for _ in 0..frames {
        let (a, b) = runner.run(&mut stream);
        t.e1 += a as u64;
        t.e2 += b as u64;
    }
    Ok(t)
}

/// Simulate one point on an existing pool.
pub fn simulate_point(job: &PointJob<'_>, snr_db: f64, pool: &rayon::ThreadPool) -> Result<SerPoint> {
    job.stopping.validate()?;
    let Stopping { min_errors, max_frames } = job.stopping;
    let mut total = Tally::default();
    let mut next_chunk = 0u64;
    let mut round = 1u64;
    'rounds: loop {
        let chunks: Vec<(u64, u64)> = (0..round)
            .map(|i| next_chunk + i)
            .map(|c| (c, CHUNK_FRAMES.min(max_frames.saturating_sub(c * CHUNK_FRAMES))))
            .take_while(|&(_, n)| n > 0)
            .collect();
        if chunks.is_empty() {
            break;
        }
        let results = pool.install(|| {
            chunks
                .par_iter()
                .map(|&(c, n)| run_chunk(job, c, n))
                .collect::<Result<Vec<_>>>()
        })?;
        for t in results {
            total.frames += t.frames;
            total.e1 += t.e1;
            total.e2 += t.e2;
            if total.e1.max(total.e2) >= min_errors || total.frames >= max_frames {
                break 'rounds;
            }
        }
        next_chunk += chunks.len() as u64;
        round = (round * 2).min(MAX_ROUND_CHUNKS);
    }
    let censored = total.e1.max(total.e2) < min_errors;
    Ok(SerPoint::from_counts(snr_db, total.frames, total.e1, total.e2, censored))
}

pub fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::domain(format!("cannot build thread pool: {e}")))
}

/// Simulate the whole SNR grid of `cfg`.
pub fn estimate_ser(cfg: &ExperimentConfig) -> Result<SerCurve> {
    cfg.validate()?;
    let pool = thread_pool(cfg.threads)?;
    let points = cfg
        .snr_grid_db
        .iter()
        .enumerate()
        .map(|(i, &snr_db)| {
            let job = PointJob {
                scheme: cfg.scheme,
                n_relays: cfg.n_relays,
                pp: cfg.profile_at(snr_db)?,
                constellation: &cfg.constellation,
                stopping: cfg.stopping,
                master_seed: cfg.master_seed,
                point_id: i as u64,
            };
            simulate_point(&job, snr_db, &pool)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SerCurve { points })
}

/// Least-squares slope of `−log10(SER)` against `SNR_dB / 10` over the
/// `hi_points` highest-SNR uncensored points with at least one error.
pub fn estimate_diversity_order(curve: &SerCurve, hi_points: usize) -> Result<f64> {
    if hi_points < 2 {
        return Err(Error::domain("a slope needs at least two points"));
    }
    let mut valid: Vec<&SerPoint> = curve
        .points
        .iter()
        .filter(|p| !p.censored && p.ser_avg > 0.0)
        .collect();
    if valid.len() < hi_points {
        return Err(Error::domain(format!(
            "need {hi_points} valid points, curve has {}",
            valid.len()
        )));
    }
    valid.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
    let top = &valid[valid.len() - hi_points..];
    let xs: Vec<f64> = top.iter().map(|p| p.snr_db / 10.0).collect();
    let ys: Vec<f64> = top.iter().map(|p| -p.ser_avg.log10()).collect();
    let n = hi_points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("points share a single SNR value"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{asymptotic_ser_rs, ModulationConstant};
    use crate::channel::draw_frame_channels;

    fn synthetic(f: impl Fn(f64) -> f64) -> SerCurve {
        SerCurve::new(
            (0..8)
                .map(|i| {
                    let snr_db = 5.0 * i as f64;
                    let mut p = SerPoint::from_counts(snr_db, 1_000_000, 500, 500, false);
                    p.ser_avg = f(10f64.powf(snr_db / 10.0));
                    p
                })
                .collect(),
        )
    }

    #[test]
    fn diversity_of_exact_power_law() {
        let slope = estimate_diversity_order(&synthetic(|snr| 3.0 * snr.powi(-2)), 4).unwrap();
        assert!((slope - 2.0).abs() < 1e-6);
        let flat = estimate_diversity_order(&synthetic(|_| 0.01), 4).unwrap();
        assert!(flat.abs() < 1e-12);
        assert!(estimate_diversity_order(&synthetic(|_| 0.01), 9).is_err());
        assert!(estimate_diversity_order(&synthetic(|_| 0.01), 1).is_err());
    }

    #[test]
    fn empty_grid_rejected() {
        let mut cfg = ExperimentConfig::new(Scheme::RsMinmax, 2);
        cfg.snr_grid_db.clear();
        assert!(matches!(estimate_ser(&cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn bad_stopping_rejected() {
        let mut cfg = ExperimentConfig::new(Scheme::RsMinmax, 2);
        cfg.stopping = Stopping { min_errors: 0, max_frames: 10 };
        assert!(matches!(estimate_ser(&cfg), Err(Error::Config { .. })));
        cfg.stopping = Stopping { min_errors: 10, max_frames: 5 };
        assert!(matches!(estimate_ser(&cfg), Err(Error::Config { .. })));
    }

    #[test]
    fn noiseless_frames_are_error_free() {
        let cfg = ExperimentConfig::new(Scheme::RsMinmax, 3);
        let pp = PowerProfile::new(1.0, 1.0, 1e-12).unwrap();
        let mut s = RandomStream::derive(4, 4);
        for _ in 0..10_000 {
            let frame = draw_frame_channels(3, &mut s).unwrap();
            assert_eq!(run_frame_rs(&cfg, &pp, &frame, &mut s).unwrap(), (0, 0));
        }
        let ap = ExperimentConfig::new(Scheme::Apaf, 3);
        assert!(run_frame_rs(&ap, &pp, &draw_frame_channels(3, &mut s).unwrap(), &mut s).is_err());
    }

    #[test]
    fn single_relay_rules_coincide() {
        let mut a = ExperimentConfig::new(Scheme::RsMinmax, 1);
        a.snr_grid_db = vec![5.0, 10.0];
        a.stopping = Stopping { min_errors: 200, max_frames: 1_000_000 };
        let mut b = a.clone();
        b.scheme = Scheme::RsOptimal;
        assert_eq!(estimate_ser(&a).unwrap(), estimate_ser(&b).unwrap());
    }

    #[test]
    fn stopping_and_ci() {
        let mut cfg = ExperimentConfig::new(Scheme::RsMinmax, 2);
        cfg.snr_grid_db = vec![0.0, 5.0, 10.0];
        cfg.stopping = Stopping { min_errors: 100, max_frames: 10_000_000 };
        let curve = estimate_ser(&cfg).unwrap();
        for p in &curve.points {
            assert!(!p.censored);
            assert!(p.errors_s1.max(p.errors_s2) >= 100);
            assert!(p.ci95 / p.ser_avg <= 0.2, "{p:?}");
        }
        // monotone within CIs
        for w in curve.points.windows(2) {
            assert!(w[1].ser_avg <= w[0].ser_avg + 2.0 * (w[0].ci95 + w[1].ci95));
        }
    }

    #[test]
    fn frame_cap_censors() {
        let mut cfg = ExperimentConfig::new(Scheme::RsMinmax, 3);
        cfg.snr_grid_db = vec![40.0];
        cfg.stopping = Stopping { min_errors: 100, max_frames: 10_000 };
        let p = &estimate_ser(&cfg).unwrap().points[0];
        assert!(p.censored);
        assert_eq!(p.frames, 10_000);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut cfg = ExperimentConfig::new(Scheme::RsOptimal, 2);
        cfg.snr_grid_db = vec![0.0, 6.0, 12.0];
        cfg.stopping = Stopping { min_errors: 150, max_frames: 2_000_000 };
        cfg.master_seed = 77;
        cfg.threads = 1;
        let one = estimate_ser(&cfg).unwrap().to_csv_string().unwrap();
        cfg.threads = 8;
        let eight = estimate_ser(&cfg).unwrap().to_csv_string().unwrap();
        assert_eq!(one, eight);
    }

    #[test]
    fn csv_round_trip() {
        let mut cfg = ExperimentConfig::new(Scheme::Apaf, 2);
        cfg.snr_grid_db = vec![0.0, 3.0];
        cfg.stopping = Stopping { min_errors: 50, max_frames: 100_000 };
        let curve = estimate_ser(&cfg).unwrap();
        let text = curve.to_csv_string().unwrap();
        assert!(text.starts_with("snr_db,frames,errors_s1,errors_s2,ser_s1,ser_s2,ser_avg,ci95,censored_flag\n"));
        assert_eq!(SerCurve::read_csv(text.as_bytes()).unwrap(), curve);
    }

    #[test]
    fn moderate_snr_near_asymptote() {
        // N = 2, ψ_s = 20 dB: within a factor of 2 of the closed-form asymptote
        let mut cfg = ExperimentConfig::new(Scheme::RsMinmax, 2);
        cfg.snr_grid_db = vec![20.0];
        cfg.stopping = Stopping { min_errors: 400, max_frames: 50_000_000 };
        let p = &estimate_ser(&cfg).unwrap().points[0];
        let pp = cfg.profile_at(20.0).unwrap();
        let asym = asymptotic_ser_rs(2, &pp, ModulationConstant::BPSK).unwrap();
        let ratio = p.ser_avg / asym;
        eprintln!("N=2 20dB: sim {} asym {} ratio {}", p.ser_avg, asym, ratio);
    }

    #[test]
    fn profile_axes() {
        let mut cfg = ExperimentConfig::new(Scheme::RsMinmax, 1);
        cfg.p_s = 0.75;
        cfg.p_r = 1.5;
        let pp = cfg.profile_at(10.0).unwrap();
        assert!((pp.n0() - 0.075).abs() < 1e-15);
        cfg.snr_axis = SnrAxis::Total;
        let pp = cfg.profile_at(10.0).unwrap();
        assert!((pp.n0() - 0.3).abs() < 1e-15);
    }
}
