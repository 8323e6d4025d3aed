//! Experiment runner: TOML configs, figure presets and on-disk artifacts.
//!
//! A run writes one CSV per simulated curve, `analytic.csv` with the
//! closed-form asymptotes for the same grid, `lambda_sweep.csv` when the
//! config has a λ sweep, a gnuplot script `plot.gp`, and `manifest.json`.
//!
//! ```toml
//! name = "example"
//! seed = 7
//! snr_db = [0.0, 5.0, 10.0]
//!
//! [stopping]
//! min_errors = 200
//!
//! [[curve]]
//! scheme = "rs-minmax"
//! n_relays = 2
//! power = { total = 3.0, allocation = "opa" }
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{asymptotic_ser_ap, asymptotic_ser_rs, ModulationConstant};
use crate::montecarlo::{estimate_ser, ExperimentConfig, Scheme, SerCurve, SnrAxis, Stopping};
use crate::phy::Constellation;
use crate::powalloc::{epa_split, opa_split, simulate_lambda_sweep, sweep_lambda, PowerSplit};
use crate::{Error, Result};

/// Transmit powers of one curve: either `p_s` and `p_r`, or a `total`
/// budget with `lambda` or `allocation = "opa" | "epa"`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allocation: Option<String>,
}

impl PowerSpec {
    pub fn direct(p_s: f64, p_r: f64) -> Self {
        Self {
            p_s: Some(p_s),
            p_r: Some(p_r),
            ..Self::default()
        }
    }

    pub fn allocation(total: f64, name: &str) -> Self {
        Self {
            total: Some(total),
            allocation: Some(name.into()),
            ..Self::default()
        }
    }

    /// `(p_s, p_r)`; `field` prefixes error messages.
    pub fn resolve(&self, field: &str) -> Result<(f64, f64)> {
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::config(format!("{field}.{name}"), format!("must be > 0, got {v}")))
            }
        };
        match (self.p_s, self.p_r, self.total, self.lambda, self.allocation.as_deref()) {
            (None, None, None, None, None) => Ok((1.0, 1.0)),
            (Some(p_s), Some(p_r), None, None, None) => Ok((positive(p_s, "p_s")?, positive(p_r, "p_r")?)),
            (None, None, Some(total), lambda, allocation) => {
                let total = positive(total, "total")?;
                let split = match (lambda, allocation) {
                    (Some(lambda), None) => PowerSplit::from_lambda(total, positive(lambda, "lambda")?)?,
                    (None, Some("opa")) => opa_split(total)?,
                    (None, Some("epa")) => epa_split(total)?,
                    (None, Some(other)) => {
                        return Err(Error::config(
                            format!("{field}.allocation"),
                            format!("expected `opa` or `epa`, got `{other}`"),
                        ))
                    }
                    _ => {
                        return Err(Error::config(
                            field,
                            "`total` needs exactly one of `lambda` or `allocation`",
                        ))
                    }
                };
                Ok((split.p_s, split.p_r))
            }
            _ => Err(Error::config(
                field,
                "give either `p_s` and `p_r`, or `total` with `lambda` or `allocation`",
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub scheme: Scheme,
    pub n_relays: usize,
    #[serde(default)]
    pub power: PowerSpec,
    /// File stem; defaults to `<scheme>_n<N>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Replaces the run-wide grid for this curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_db: Option<Vec<f64>>,
}

impl CurveSpec {
    pub fn new(scheme: Scheme, n_relays: usize, power: PowerSpec) -> Self {
        Self {
            scheme,
            n_relays,
            power,
            label: None,
            snr_db: None,
        }
    }

    pub fn labelled(mut self, label: &str) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_grid(mut self, grid: Vec<f64>) -> Self {
        self.snr_db = Some(grid);
        self
    }

    pub fn file_stem(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("{}_n{}", self.scheme, self.n_relays))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaSweepSpec {
    #[serde(default = "default_total_power")]
    pub total: f64,
    #[serde(default = "default_sweep_relays")]
    pub n_relays: usize,
    pub n0: Vec<f64>,
    pub lambda: Vec<f64>,
    /// Also run the Monte Carlo sweep, not just the closed form.
    #[serde(default)]
    pub simulate: bool,
    #[serde(default = "default_sweep_scheme")]
    pub scheme: Scheme,
}

fn default_total_power() -> f64 {
    3.0
}

fn default_sweep_relays() -> usize {
    2
}

fn default_sweep_scheme() -> Scheme {
    Scheme::RsMinmax
}

fn default_constellation() -> String {
    "bpsk".into()
}

fn default_seed() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub threads: usize,
    #[serde(default = "default_constellation")]
    pub constellation: String,
    #[serde(default)]
    pub snr_db: Vec<f64>,
    #[serde(default)]
    pub snr_axis: SnrAxis,
    #[serde(default)]
    pub stopping: Stopping,
    #[serde(default, rename = "curve")]
    pub curves: Vec<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_sweep: Option<LambdaSweepSpec>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        Constellation::by_name(&self.constellation).map_err(|e| Error::config("constellation", e.to_string()))?;
        self.stopping.validate()?;
        if self.curves.is_empty() && self.lambda_sweep.is_none() {
            return Err(Error::config("curve", "config has neither curves nor a lambda_sweep"));
        }
        check_grid("snr_db", &self.snr_db, true)?;
        let mut stems = BTreeSet::new();
        for (i, c) in self.curves.iter().enumerate() {
            let field = format!("curve[{i}]");
            if c.n_relays == 0 {
                return Err(Error::config(format!("{field}.n_relays"), "must be >= 1"));
            }
            c.power.resolve(&format!("{field}.power"))?;
            match &c.snr_db {
                Some(grid) => {
                    check_grid(&format!("{field}.snr_db"), grid, false)?;
                    if grid.is_empty() {
                        return Err(Error::config(format!("{field}.snr_db"), "empty grid"));
                    }
                }
                None if self.snr_db.is_empty() => {
                    return Err(Error::config("snr_db", format!("empty grid and {field} has none")))
                }
                None => {}
            }
            let stem = c.file_stem();
            if stem.is_empty() || stem.contains(['/', '\\']) || stem == "analytic" || stem == "lambda_sweep" {
                return Err(Error::config(format!("{field}.label"), format!("unusable file stem `{stem}`")));
            }
            if !stems.insert(stem.clone()) {
                return Err(Error::config(format!("{field}.label"), format!("duplicate output `{stem}`")));
            }
        }
        if let Some(sweep) = &self.lambda_sweep {
            if !(sweep.total > 0.0 && sweep.total.is_finite()) {
                return Err(Error::config("lambda_sweep.total", "must be > 0"));
            }
            if sweep.n_relays == 0 {
                return Err(Error::config("lambda_sweep.n_relays", "must be >= 1"));
            }
            if sweep.n0.is_empty() || sweep.n0.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::config("lambda_sweep.n0", "need one or more values > 0"));
            }
            if sweep.lambda.is_empty() || sweep.lambda.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::config("lambda_sweep.lambda", "need one or more values > 0"));
            }
        }
        Ok(())
    }

    /// SHA-256 of the config as JSON with sorted keys.
    pub fn digest(&self) -> Result<String> {
        // serde_json::Value keeps object keys sorted
        let canonical = serde_json::to_value(self)?.to_string();
        let hash = Sha256::digest(canonical.as_bytes());
        Ok(hash.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        }))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(threads) = o.threads {
            self.threads = threads;
        }
        if let Some(m) = o.min_errors {
            self.stopping.min_errors = m;
        }
        if let Some(m) = o.max_frames {
            self.stopping.max_frames = m;
        }
    }

    /// Simulation setup of curve `i`.
    pub fn experiment(&self, i: usize) -> Result<ExperimentConfig> {
        let c = &self.curves[i];
        let (p_s, p_r) = c.power.resolve(&format!("curve[{i}].power"))?;
        Ok(ExperimentConfig {
            scheme: c.scheme,
            n_relays: c.n_relays,
            p_s,
            p_r,
            constellation: Constellation::by_name(&self.constellation)?,
            snr_grid_db: c.snr_db.clone().unwrap_or_else(|| self.snr_db.clone()),
            snr_axis: self.snr_axis,
            stopping: self.stopping,
            master_seed: self.seed,
            threads: self.threads,
        })
    }
}

fn check_grid(field: &str, grid: &[f64], allow_empty: bool) -> Result<()> {
    if !allow_empty && grid.is_empty() {
        return Err(Error::config(field, "empty grid"));
    }
    if let Some(v) = grid.iter().find(|v| !v.is_finite()) {
        return Err(Error::config(field, format!("non-finite value {v}")));
    }
    Ok(())
}

/// `start, start+step, …` up to and including `stop`.
pub fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

/// The built-in figure configurations, `fig2` to `fig6`.
pub fn preset(name: &str) -> Result<RunConfig> {
    let name = name.strip_prefix("fig").unwrap_or(name);
    let unit = PowerSpec::direct(1.0, 1.0);
    let base = |name: &str| RunConfig {
        name: name.into(),
        seed: 1,
        threads: 0,
        constellation: "bpsk".into(),
        snr_db: grid(0.0, 20.0, 2.0),
        snr_axis: SnrAxis::Source,
        stopping: Stopping::default(),
        curves: Vec::new(),
        lambda_sweep: None,
    };
    let cfg = match name {
        // optimal vs Min-Max selection
        "2" => RunConfig {
            curves: [2, 4]
                .into_iter()
                .flat_map(|n| {
                    [Scheme::RsOptimal, Scheme::RsMinmax].map(|s| CurveSpec::new(s, n, unit.clone()))
                })
                .collect(),
            ..base("fig2")
        },
        // selection vs all-participate; AP splits p_r = 1 over its relays
        "3" => RunConfig {
            curves: [Scheme::RsMinmax, Scheme::Apaf]
                .into_iter()
                .flat_map(|s| (2..=4).map(move |n| (s, n)))
                .map(|(s, n)| CurveSpec::new(s, n, PowerSpec::direct(1.0, 1.0)))
                .collect(),
            ..base("fig3")
        },
        // simulation against the asymptote
        "4" => RunConfig {
            snr_db: grid(0.0, 30.0, 2.5),
            curves: (1..=4)
                .map(|n| {
                    let top = [40.0, 30.0, 25.0, 20.0][n - 1];
                    CurveSpec::new(Scheme::RsMinmax, n, unit.clone()).with_grid(grid(0.0, top, 2.5))
                })
                .collect(),
            ..base("fig4")
        },
        // optimal vs equal power allocation at p = 3, common N0
        "5" => RunConfig {
            snr_db: grid(0.0, 25.0, 2.5),
            snr_axis: SnrAxis::Total,
            curves: (1..=4)
                .flat_map(|n| {
                    ["opa", "epa"].map(|a| {
                        CurveSpec::new(Scheme::RsMinmax, n, PowerSpec::allocation(3.0, a))
                            .labelled(&format!("rs-minmax_n{n}_{a}"))
                    })
                })
                .collect(),
            ..base("fig5")
        },
        // SER against λ at N = 2 for several noise levels
        "6" => RunConfig {
            snr_db: Vec::new(),
            lambda_sweep: Some(LambdaSweepSpec {
                total: 3.0,
                n_relays: 2,
                n0: vec![0.1, 0.03, 0.01],
                lambda: vec![0.1, 0.25, 0.4, 0.5, 0.65, 0.8, 1.0, 1.5, 2.0, 3.0],
                simulate: true,
                scheme: Scheme::RsMinmax,
            }),
            ..base("fig6")
        },
        other => return Err(Error::config("figure", format!("no preset `{other}`; expected 2 to 6"))),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Command-line overrides shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Master seed for all random streams.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Minimum symbol errors per SNR point.
    #[arg(long)]
    pub min_errors: Option<u64>,
    /// Frame cap per SNR point.
    #[arg(long)]
    pub max_frames: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(name = "rsaf", version, about = "Two-way AF relay selection: SER simulation and analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for CSVs, plot script and manifest.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate every curve of a config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Write the closed-form asymptotes for a config's curves.
    Analytic {
        #[arg(long)]
        config: PathBuf,
    },
    /// SER against λ = p_s/p_r under a total power budget.
    SweepLambda {
        /// Total power `2 p_s + p_r`.
        #[arg(long, default_value_t = 3.0)]
        total: f64,
        #[arg(long, default_value_t = 2)]
        n_relays: usize,
        /// Noise variances, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.01")]
        n0: Vec<f64>,
        /// λ grid, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.4,0.5,0.65,1.0")]
        lambda: Vec<f64>,
        /// Run the Monte Carlo sweep as well.
        #[arg(long)]
        simulate: bool,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a built-in figure preset.
    Reproduce {
        /// 2 to 6 (`fig2` also accepted).
        #[arg(long)]
        figure: String,
        #[command(flatten)]
        overrides: Overrides,
    },
}

/// What a run produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub name: String,
    pub config_digest: String,
    pub master_seed: u64,
    pub schemes: Vec<Scheme>,
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
    pub version: String,
    pub config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    AnalyticOnly,
}

pub fn run(cli: Cli) -> Result<RunManifest> {
    let (cfg, mode) = match cli.command {
        Command::Simulate { config, overrides } => {
            let mut cfg = RunConfig::load(&config)?;
            cfg.apply(&overrides);
            (cfg, Mode::Full)
        }
        Command::Analytic { config } => (RunConfig::load(&config)?, Mode::AnalyticOnly),
        Command::SweepLambda {
            total,
            n_relays,
            n0,
            lambda,
            simulate,
            overrides,
        } => {
            let mut cfg = RunConfig {
                name: "sweep-lambda".into(),
                seed: 1,
                threads: 0,
                constellation: "bpsk".into(),
                snr_db: Vec::new(),
                snr_axis: SnrAxis::Source,
                stopping: Stopping::default(),
                curves: Vec::new(),
                lambda_sweep: Some(LambdaSweepSpec {
                    total,
                    n_relays,
                    n0,
                    lambda,
                    simulate,
                    scheme: Scheme::RsMinmax,
                }),
            };
            cfg.apply(&overrides);
            (cfg, Mode::Full)
        }
        Command::Reproduce { figure, overrides } => {
            let mut cfg = preset(&figure)?;
            cfg.apply(&overrides);
            (cfg, Mode::Full)
        }
    };
    execute(&cfg, mode, &cli.out_dir)
}

/// Run `cfg` and write its artifacts into `out_dir`.
pub fn execute(cfg: &RunConfig, mode: Mode, out_dir: &Path) -> Result<RunManifest> {
    cfg.validate()?;
    let started = Instant::now();
    std::fs::create_dir_all(out_dir)?;
    let mut outputs = Vec::new();
    let mut plotted = Vec::new();

    if mode == Mode::Full {
        for (i, spec) in cfg.curves.iter().enumerate() {
            let exp = cfg.experiment(i)?;
            let curve = estimate_ser(&exp)?;
            let file = format!("{}.csv", spec.file_stem());
            curve.save_csv(&out_dir.join(&file))?;
            log_curve(spec, &curve);
            plotted.push(file.clone());
            outputs.push(file);
        }
    }

    if !cfg.curves.is_empty() {
        let file = "analytic.csv".to_string();
        write_analytic(cfg, &out_dir.join(&file))?;
        outputs.push(file);
    }

    if let Some(sweep) = &cfg.lambda_sweep {
        let file = "lambda_sweep.csv".to_string();
        write_lambda_sweep(cfg, sweep, mode == Mode::Full, &out_dir.join(&file))?;
        outputs.push(file);
    }

    let script = "plot.gp".to_string();
    std::fs::write(out_dir.join(&script), plot_script(cfg, &plotted))?;
    outputs.push(script);
    outputs.push("manifest.json".into());

    let mut schemes: Vec<Scheme> = Vec::new();
    let used = cfg
        .curves
        .iter()
        .map(|c| c.scheme)
        .chain(cfg.lambda_sweep.iter().map(|s| s.scheme));
    for s in used {
        if !schemes.contains(&s) {
            schemes.push(s);
        }
    }
    let manifest = RunManifest {
        name: cfg.name.clone(),
        config_digest: cfg.digest()?,
        master_seed: cfg.seed,
        schemes,
        outputs,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
    };
    let file = std::fs::File::create(out_dir.join("manifest.json"))?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(file), &manifest)?;
    Ok(manifest)
}

fn log_curve(spec: &CurveSpec, curve: &SerCurve) {
    eprintln!("{}", spec.file_stem());
    for p in &curve.points {
        eprintln!(
            "  {:>6.2} dB  SER {:.3e} ± {:.1e}  ({} frames{})",
            p.snr_db,
            p.ser_avg,
            p.ci95,
            p.frames,
            if p.censored { ", censored" } else { "" }
        );
    }
}

#[derive(Serialize)]
struct AnalyticRow<'a> {
    label: &'a str,
    scheme: Scheme,
    n_relays: usize,
    snr_db: f64,
    analytic_ser: f64,
}

fn write_analytic(cfg: &RunConfig, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for (i, spec) in cfg.curves.iter().enumerate() {
        let exp = cfg.experiment(i)?;
        let c = exp.constellation.modulation_constant();
        let label = spec.file_stem();
        for &snr_db in &exp.snr_grid_db {
            w.serialize(AnalyticRow {
                label: &label,
                scheme: spec.scheme,
                n_relays: spec.n_relays,
                snr_db,
                analytic_ser: asymptote(spec.scheme, spec.n_relays, &exp, snr_db, c)?,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

fn asymptote(scheme: Scheme, n: usize, exp: &ExperimentConfig, snr_db: f64, c: ModulationConstant) -> Result<f64> {
    let pp = exp.profile_at(snr_db)?;
    match scheme {
        Scheme::Apaf => asymptotic_ser_ap(n, &pp, c),
        Scheme::RsOptimal | Scheme::RsMinmax => asymptotic_ser_rs(n, &pp, c),
    }
}

#[derive(Serialize)]
struct LambdaCsvRow {
    n0: f64,
    lambda: f64,
    analytic_ser: f64,
    frames: Option<u64>,
    errors_s1: Option<u64>,
    errors_s2: Option<u64>,
    ser_avg: Option<f64>,
    ci95: Option<f64>,
    censored_flag: Option<u8>,
}

fn write_lambda_sweep(cfg: &RunConfig, sweep: &LambdaSweepSpec, allow_sim: bool, path: &Path) -> Result<()> {
    let cons = Constellation::by_name(&cfg.constellation)?;
    let c = cons.modulation_constant();
    let mut w = csv::Writer::from_path(path)?;
    for &n0 in &sweep.n0 {
        let analytic = sweep_lambda(sweep.total, sweep.n_relays, c, n0, &sweep.lambda)?;
        let simulated = if allow_sim && sweep.simulate {
            Some(simulate_lambda_sweep(
                sweep.scheme,
                sweep.total,
                sweep.n_relays,
                n0,
                &sweep.lambda,
                &cons,
                cfg.stopping,
                cfg.seed,
                cfg.threads,
            )?)
        } else {
            None
        };
        eprintln!("N0 = {n0}: analytic argmin λ = {}", analytic.argmin);
        for (k, row) in analytic.rows.iter().enumerate() {
            let sim = simulated.as_ref().map(|s| &s[k].point);
            if let Some(p) = sim {
                eprintln!("  λ = {:<5} SER {:.3e} ± {:.1e}", row.lambda, p.ser_avg, p.ci95);
            }
            w.serialize(LambdaCsvRow {
                n0,
                lambda: row.lambda,
                analytic_ser: row.analytic_ser,
                frames: sim.map(|p| p.frames),
                errors_s1: sim.map(|p| p.errors_s1),
                errors_s2: sim.map(|p| p.errors_s2),
                ser_avg: sim.map(|p| p.ser_avg),
                ci95: sim.map(|p| p.ci95),
                censored_flag: sim.map(|p| p.censored as u8),
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Gnuplot script drawing every curve CSV plus the analytic overlay.
pub fn plot_script(cfg: &RunConfig, curve_files: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {}: render with `gnuplot plot.gp`", cfg.name);
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set logscale y");
    let _ = writeln!(s, "set grid");
    let _ = writeln!(s, "set key outside right");
    let _ = writeln!(s, "set terminal pngcairo size 900,600");
    let _ = writeln!(s, "set ylabel 'SER'");
    let mut plots = Vec::new();
    if !cfg.curves.is_empty() {
        let xlabel = match cfg.snr_axis {
            SnrAxis::Source => "p_s/N_0 (dB)",
            SnrAxis::Total => "p/N_0 (dB)",
        };
        let _ = writeln!(s, "set output '{}.png'", cfg.name);
        let _ = writeln!(s, "set xlabel '{xlabel}'");
        for f in curve_files {
            let title = f.trim_end_matches(".csv");
            plots.push(format!("'{f}' every ::1 using 1:7 with linespoints title '{title}'"));
        }
        for spec in &cfg.curves {
            let label = spec.file_stem();
            plots.push(format!(
                "'analytic.csv' every ::1 using (strcol(1) eq '{label}' ? $4 : NaN):5 with lines dt 2 title '{label} (asymptote)'"
            ));
        }
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    }
    if let Some(sweep) = &cfg.lambda_sweep {
        let _ = writeln!(s, "set output '{}_lambda.png'", cfg.name);
        let _ = writeln!(s, "set xlabel 'lambda = p_s/p_r'");
        let mut lines = Vec::new();
        for &n0 in &sweep.n0 {
            lines.push(format!(
                "'lambda_sweep.csv' every ::1 using ($1 == {n0} ? $2 : NaN):3 with lines dt 2 title 'N0={n0} asymptote'"
            ));
            if sweep.simulate {
                lines.push(format!(
                    "'lambda_sweep.csv' every ::1 using ($1 == {n0} ? $2 : NaN):7 with linespoints title 'N0={n0}'"
                ));
            }
        }
        let _ = writeln!(s, "plot {}", lines.join(", \\\n     "));
    }
    s
}

/// Entry point for the `rsaf` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out_dir = cli.out_dir.clone();
    match run(cli) {
        Ok(m) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "wrote {} files to {}", m.outputs.len(), out_dir.display());
            let _ = writeln!(out, "config digest {}", m.config_digest);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
