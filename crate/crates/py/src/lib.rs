//! Python bindings for `rsaf-core`.

use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use rsaf_core::analysis::{self, ModulationConstant};
use rsaf_core::montecarlo::{self, Scheme, SnrAxis, Stopping};
use rsaf_core::{cli, powalloc, selection, twoway, ChannelPair, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn constant(c: f64) -> PyResult<ModulationConstant> {
    ModulationConstant::new(c).map_err(to_py)
}

#[pyclass(name = "PowerProfile", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyPowerProfile(rsaf_core::PowerProfile);

#[pymethods]
impl PyPowerProfile {
    #[new]
    fn new(p_s: f64, p_r: f64, n0: f64) -> PyResult<Self> {
        rsaf_core::PowerProfile::new(p_s, p_r, n0).map(Self).map_err(to_py)
    }

    /// Split total power `p` with `λ = p_s/p_r`.
    #[staticmethod]
    fn from_split(p: f64, lambda_: f64, n0: f64) -> PyResult<Self> {
        rsaf_core::PowerProfile::from_split(p, lambda_, n0).map(Self).map_err(to_py)
    }

    #[getter]
    fn p_s(&self) -> f64 {
        self.0.p_s()
    }
    #[getter]
    fn p_r(&self) -> f64 {
        self.0.p_r()
    }
    #[getter]
    fn n0(&self) -> f64 {
        self.0.n0()
    }
    #[getter]
    fn total(&self) -> f64 {
        self.0.total()
    }
    #[getter]
    fn lambda_(&self) -> f64 {
        self.0.lambda()
    }
    #[getter]
    fn psi_s(&self) -> f64 {
        self.0.psi_s()
    }
    #[getter]
    fn psi_r(&self) -> f64 {
        self.0.psi_r()
    }
    #[getter]
    fn psi(&self) -> f64 {
        self.0.psi()
    }

    fn __repr__(&self) -> String {
        format!(
            "PowerProfile(p_s={}, p_r={}, n0={})",
            self.0.p_s(),
            self.0.p_r(),
            self.0.n0()
        )
    }
}

#[pyclass(name = "PowerSplit", frozen, get_all)]
struct PyPowerSplit {
    p_s: f64,
    p_r: f64,
    p: f64,
    lambda_: f64,
}

impl From<powalloc::PowerSplit> for PyPowerSplit {
    fn from(s: powalloc::PowerSplit) -> Self {
        Self {
            p_s: s.p_s,
            p_r: s.p_r,
            p: s.p,
            lambda_: s.lambda,
        }
    }
}

#[pymethods]
impl PyPowerSplit {
    fn __repr__(&self) -> String {
        format!("PowerSplit(p_s={}, p_r={}, p={}, lambda_={})", self.p_s, self.p_r, self.p, self.lambda_)
    }
}

#[pyclass(name = "SerPoint", frozen, get_all, from_py_object)]
#[derive(Clone)]
struct PySerPoint {
    snr_db: f64,
    frames: u64,
    errors_s1: u64,
    errors_s2: u64,
    ser_s1: f64,
    ser_s2: f64,
    ser_avg: f64,
    ci95: f64,
    censored: bool,
}

impl From<&rsaf_core::SerPoint> for PySerPoint {
    fn from(p: &rsaf_core::SerPoint) -> Self {
        Self {
            snr_db: p.snr_db,
            frames: p.frames,
            errors_s1: p.errors_s1,
            errors_s2: p.errors_s2,
            ser_s1: p.ser_s1,
            ser_s2: p.ser_s2,
            ser_avg: p.ser_avg,
            ci95: p.ci95,
            censored: p.censored,
        }
    }
}

#[pymethods]
impl PySerPoint {
    fn __repr__(&self) -> String {
        format!(
            "SerPoint(snr_db={}, ser_avg={:.4e}, frames={}, censored={})",
            self.snr_db, self.ser_avg, self.frames, self.censored
        )
    }
}

#[pyclass(name = "SerCurve", frozen)]
struct PySerCurve(rsaf_core::SerCurve);

#[pymethods]
impl PySerCurve {
    #[getter]
    fn points(&self) -> Vec<PySerPoint> {
        self.0.points.iter().map(PySerPoint::from).collect()
    }

    fn to_csv(&self) -> PyResult<String> {
        self.0.to_csv_string().map_err(to_py)
    }

    /// Least-squares slope of `-log10(SER)` per decade of SNR over the
    /// `hi_points` highest valid points.
    fn diversity_order(&self, hi_points: usize) -> PyResult<f64> {
        montecarlo::estimate_diversity_order(&self.0, hi_points).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.points.len()
    }
}

/// One simulated curve: scheme, relay count, powers, grid and stopping rule.
#[pyclass(name = "ExperimentConfig", get_all, set_all)]
struct PyExperimentConfig {
    scheme: String,
    n_relays: usize,
    p_s: f64,
    p_r: f64,
    constellation: String,
    snr_db: Vec<f64>,
    snr_axis: String,
    min_errors: u64,
    max_frames: u64,
    seed: u64,
    threads: usize,
}

impl PyExperimentConfig {
    fn to_core(&self) -> PyResult<montecarlo::ExperimentConfig> {
        let snr_axis = match self.snr_axis.as_str() {
            "source" => SnrAxis::Source,
            "total" => SnrAxis::Total,
            other => return Err(PyValueError::new_err(format!("snr_axis must be 'source' or 'total', got '{other}'"))),
        };
        Ok(montecarlo::ExperimentConfig {
            scheme: Scheme::parse(&self.scheme).map_err(to_py)?,
            n_relays: self.n_relays,
            p_s: self.p_s,
            p_r: self.p_r,
            constellation: rsaf_core::Constellation::by_name(&self.constellation).map_err(to_py)?,
            snr_grid_db: self.snr_db.clone(),
            snr_axis,
            stopping: Stopping {
                min_errors: self.min_errors,
                max_frames: self.max_frames,
            },
            master_seed: self.seed,
            threads: self.threads,
        })
    }
}

#[pymethods]
impl PyExperimentConfig {
    #[new]
    #[pyo3(signature = (scheme, n_relays, snr_db, p_s=1.0, p_r=1.0, constellation="bpsk".to_string(),
                        snr_axis="source".to_string(), min_errors=100, max_frames=100_000_000, seed=1, threads=0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        scheme: String,
        n_relays: usize,
        snr_db: Vec<f64>,
        p_s: f64,
        p_r: f64,
        constellation: String,
        snr_axis: String,
        min_errors: u64,
        max_frames: u64,
        seed: u64,
        threads: usize,
    ) -> PyResult<Self> {
        let cfg = Self {
            scheme,
            n_relays,
            p_s,
            p_r,
            constellation,
            snr_db,
            snr_axis,
            min_errors,
            max_frames,
            seed,
            threads,
        };
        cfg.to_core()?.validate().map_err(to_py)?;
        Ok(cfg)
    }

    /// Run the Monte Carlo simulation; the GIL is released while it runs.
    fn run(&self, py: Python<'_>) -> PyResult<PySerCurve> {
        let cfg = self.to_core()?;
        py.detach(|| montecarlo::estimate_ser(&cfg))
            .map(PySerCurve)
            .map_err(to_py)
    }
}

#[pyfunction]
fn q_function(x: f64) -> PyResult<f64> {
    analysis::q_function(x).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n_relays, pp, c=2.0))]
fn asymptotic_ser_rs(n_relays: usize, pp: PyPowerProfile, c: f64) -> PyResult<f64> {
    analysis::asymptotic_ser_rs(n_relays, &pp.0, constant(c)?).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n_relays, pp, c=2.0))]
fn asymptotic_ser_ap(n_relays: usize, pp: PyPowerProfile, c: f64) -> PyResult<f64> {
    analysis::asymptotic_ser_ap(n_relays, &pp.0, constant(c)?).map_err(to_py)
}

#[pyfunction]
fn ser_ratio_rs_over_ap(n_relays: usize, lambda_: f64) -> PyResult<f64> {
    analysis::ser_ratio_rs_over_ap(n_relays, lambda_).map_err(to_py)
}

#[pyfunction]
fn opa_gain(n_relays: usize) -> f64 {
    analysis::opa_gain(n_relays)
}

#[pyfunction]
fn exact_snr_pdf(x: f64, pp: PyPowerProfile) -> PyResult<f64> {
    analysis::exact_snr_pdf(x, &pp.0).map_err(to_py)
}

/// Exact per-source SNRs `(γ1, γ2)` through one relay.
#[pyfunction]
fn effective_snr_exact(h1: Complex64, h2: Complex64, pp: PyPowerProfile) -> (f64, f64) {
    twoway::effective_snr_exact(&ChannelPair::new(h1, h2), &pp.0)
}

/// `(relay_index, criterion_value)` minimizing the sum of the two SERs.
#[pyfunction]
#[pyo3(signature = (gammas, c=2.0))]
fn select_optimal(gammas: Vec<(f64, f64)>, c: f64) -> PyResult<(usize, f64)> {
    let out = selection::select_optimal(&gammas, constant(c)?).map_err(to_py)?;
    Ok((out.relay_index, out.criterion_value))
}

/// `(relay_index, min SNR)` maximizing the smaller of the two SNRs.
#[pyfunction]
fn select_minmax(gammas: Vec<(f64, f64)>) -> PyResult<(usize, f64)> {
    let out = selection::select_minmax(&gammas).map_err(to_py)?;
    Ok((out.relay_index, out.criterion_value))
}

#[pyfunction]
fn opa_split(p: f64) -> PyResult<PyPowerSplit> {
    powalloc::opa_split(p).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn epa_split(p: f64) -> PyResult<PyPowerSplit> {
    powalloc::epa_split(p).map(Into::into).map_err(to_py)
}

/// Asymptotic SER over a λ grid: `([(lambda, ser), ...], argmin)`.
#[pyfunction]
#[pyo3(signature = (p, n_relays, n0, grid, c=2.0))]
fn sweep_lambda(p: f64, n_relays: usize, n0: f64, grid: Vec<f64>, c: f64) -> PyResult<(Vec<(f64, f64)>, f64)> {
    let s = powalloc::sweep_lambda(p, n_relays, constant(c)?, n0, &grid).map_err(to_py)?;
    Ok((s.rows.iter().map(|r| (r.lambda, r.analytic_ser)).collect(), s.argmin))
}

#[pyfunction]
#[pyo3(signature = (p, n_relays, n0, lo=0.01, hi=10.0, c=2.0))]
fn optimize_lambda(p: f64, n_relays: usize, n0: f64, lo: f64, hi: f64, c: f64) -> PyResult<f64> {
    powalloc::optimize_lambda(p, n_relays, constant(c)?, n0, lo, hi).map_err(to_py)
}

/// Run a TOML config or figure preset and write its artifacts; returns the
/// manifest as JSON.
#[pyfunction]
#[pyo3(signature = (out_dir, config_toml=None, figure=None))]
fn run_experiment(py: Python<'_>, out_dir: String, config_toml: Option<String>, figure: Option<String>) -> PyResult<String> {
    let cfg = match (config_toml, figure) {
        (Some(text), None) => cli::RunConfig::from_toml(&text),
        (None, Some(f)) => cli::preset(&f),
        _ => return Err(PyValueError::new_err("pass exactly one of config_toml or figure")),
    }
    .map_err(to_py)?;
    let manifest = py
        .detach(|| cli::execute(&cfg, cli::Mode::Full, std::path::Path::new(&out_dir)))
        .map_err(to_py)?;
    serde_json::to_string(&manifest).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn rsaf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPowerProfile>()?;
    m.add_class::<PyPowerSplit>()?;
    m.add_class::<PySerPoint>()?;
    m.add_class::<PySerCurve>()?;
    m.add_class::<PyExperimentConfig>()?;
    m.add_function(wrap_pyfunction!(q_function, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_ser_rs, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_ser_ap, m)?)?;
    m.add_function(wrap_pyfunction!(ser_ratio_rs_over_ap, m)?)?;
    m.add_function(wrap_pyfunction!(opa_gain, m)?)?;
    m.add_function(wrap_pyfunction!(exact_snr_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(effective_snr_exact, m)?)?;
    m.add_function(wrap_pyfunction!(select_optimal, m)?)?;
    m.add_function(wrap_pyfunction!(select_minmax, m)?)?;
    m.add_function(wrap_pyfunction!(opa_split, m)?)?;
    m.add_function(wrap_pyfunction!(epa_split, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
