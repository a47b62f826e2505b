//! Python bindings for the spin-correlation engines: the exact formalism,
//! the geometric hidden-angle sampler, and the Bell/CHSH harness.

// The #[pyfunction] expansion of PyResult returns trips this lint.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spincorr_core as core;

fn direction(theta: f64) -> PyResult<core::Direction> {
    if theta.is_finite() {
        Ok(core::Direction::new(theta))
    } else {
        Err(PyValueError::new_err("angle must be finite"))
    }
}

fn parse_mode(mode: &str) -> PyResult<core::Mode> {
    match mode {
        "single" => Ok(core::Mode::Single),
        "bipartite" => Ok(core::Mode::Bipartite),
        other => Err(PyValueError::new_err(format!(
            "unknown mode '{other}'; expected 'single' or 'bipartite'"
        ))),
    }
}

fn mode_name(mode: core::Mode) -> &'static str {
    match mode {
        core::Mode::Single => "single",
        core::Mode::Bipartite => "bipartite",
    }
}

fn check_n(n: u64, floor: u64) -> PyResult<()> {
    if n < floor {
        return Err(PyValueError::new_err(format!("n must be at least {floor}")));
    }
    Ok(())
}

/// Monte Carlo estimate with its seed provenance.
#[pyclass(name = "CorrelationEstimate", frozen, get_all)]
#[derive(Clone)]
struct PyCorrelationEstimate {
    mean: f64,
    std_error: f64,
    n: u64,
    seed: u64,
    stream: u64,
}

#[pymethods]
impl PyCorrelationEstimate {
    fn __repr__(&self) -> String {
        format!(
            "CorrelationEstimate(mean={}, std_error={}, n={}, seed={}, stream={})",
            self.mean, self.std_error, self.n, self.seed, self.stream
        )
    }
}

impl From<core::CorrelationEstimate> for PyCorrelationEstimate {
    fn from(e: core::CorrelationEstimate) -> Self {
        Self {
            mean: e.mean,
            std_error: e.std_error,
            n: e.n,
            seed: e.seed,
            stream: e.stream,
        }
    }
}

/// Result of one CHSH evaluation.
#[pyclass(name = "ChshResult", frozen, get_all)]
#[derive(Clone)]
struct PyChshResult {
    engine: String,
    /// (a, a', b, b')
    angles: (f64, f64, f64, f64),
    /// E(a,b), E(a,b'), E(a',b), E(a',b')
    correlations: [f64; 4],
    std_errors: [f64; 4],
    s_value: f64,
    s_std_error: f64,
    n: u64,
    seed: u64,
}

#[pymethods]
impl PyChshResult {
    fn __repr__(&self) -> String {
        format!(
            "ChshResult(engine='{}', s_value={}, s_std_error={})",
            self.engine, self.s_value, self.s_std_error
        )
    }
}

impl From<core::ChshResult> for PyChshResult {
    fn from(r: core::ChshResult) -> Self {
        Self {
            engine: match r.engine {
                core::Engine::Exact => "exact".into(),
                core::Engine::Sampled => "sampled".into(),
            },
            angles: (r.angles.a, r.angles.a_alt, r.angles.b, r.angles.b_alt),
            correlations: r.correlations,
            std_errors: r.std_errors,
            s_value: r.s_value,
            s_std_error: r.s_std_error,
            n: r.n,
            seed: r.seed,
        }
    }
}

/// Exact-vs-sampled agreement sweep. Rows are tuples
/// (theta, exact, sampled_mean, std_error, z_score-or-None).
#[pyclass(name = "SweepReport", frozen, get_all)]
#[derive(Clone)]
struct PySweepReport {
    mode: String,
    grid_size: u64,
    n: u64,
    seed: u64,
    max_abs_z: f64,
    flagged: bool,
    rows: Vec<(f64, f64, f64, f64, Option<f64>)>,
}

#[pymethods]
impl PySweepReport {
    fn __repr__(&self) -> String {
        format!(
            "SweepReport(mode='{}', grid_size={}, n={}, max_abs_z={})",
            self.mode, self.grid_size, self.n, self.max_abs_z
        )
    }
}

/// Exact single-spin correlation cos(theta_b - theta_a).
#[pyfunction]
fn correlation_exact(theta_a: f64, theta_b: f64) -> PyResult<f64> {
    Ok(core::correlation_exact(direction(theta_a)?, direction(theta_b)?))
}

/// Exact singlet correlation -cos(theta_b - theta_a), spectral route.
#[pyfunction]
fn correlation_singlet(theta_a: f64, theta_b: f64) -> PyResult<f64> {
    Ok(core::correlation_singlet(direction(theta_a)?, direction(theta_b)?))
}

/// Exact singlet correlation via the direct operator-expectation route.
#[pyfunction]
fn correlation_singlet_direct(theta_a: f64, theta_b: f64) -> PyResult<f64> {
    Ok(core::correlation_singlet_direct(
        direction(theta_a)?,
        direction(theta_b)?,
    ))
}

/// Single-spin conditional probability matrix, rows conditioned on the
/// outcome along the first direction.
#[pyfunction]
fn cond_prob_matrix(theta_a: f64, theta_b: f64) -> PyResult<[[f64; 2]; 2]> {
    Ok(core::cond_prob_matrix(direction(theta_a)?, direction(theta_b)?).entries())
}

/// Singlet conditional probability matrix (outcome along b inverted).
#[pyfunction]
fn cond_prob_matrix_singlet(theta_a: f64, theta_b: f64) -> PyResult<[[f64; 2]; 2]> {
    Ok(core::cond_prob_matrix_singlet(direction(theta_a)?, direction(theta_b)?).entries())
}

/// Born weights of the four product-basis outcomes in the singlet state.
#[pyfunction]
fn spectral_weights(theta_a: f64, theta_b: f64) -> PyResult<[f64; 4]> {
    Ok(core::spectral_weights(direction(theta_a)?, direction(theta_b)?).c)
}

/// Basis pair (plus, minus) along a direction, as complex amplitude tuples.
#[pyfunction]
fn basis_states(theta: f64) -> PyResult<((Complex64, Complex64), (Complex64, Complex64))> {
    let (plus, minus) = core::basis_states(direction(theta)?);
    Ok((
        (plus.amp_plus, plus.amp_minus),
        (minus.amp_plus, minus.amp_minus),
    ))
}

/// Singlet amplitudes in the (++, +-, -+, --) order.
#[pyfunction]
fn singlet() -> [Complex64; 4] {
    core::singlet().amps
}

/// Density of the hidden angle: 0.5*sin(phi) on [0, pi], zero outside.
#[pyfunction]
fn pdf(phi: f64) -> f64 {
    core::pdf(phi)
}

/// Cumulative distribution (1 - cos(phi))/2 on [0, pi].
#[pyfunction]
fn cdf(phi: f64) -> f64 {
    core::cdf(phi)
}

/// Draw n hidden angles from ChaCha stream `stream` of `seed`.
#[pyfunction]
#[pyo3(signature = (n, seed=42, stream=0))]
fn sample_phi(n: u64, seed: u64, stream: u64) -> PyResult<Vec<f64>> {
    check_n(n, 1)?;
    Ok(core::sample_phi(&mut core::context_rng(seed, stream), n))
}

/// Classify one hidden angle in a context: returns +1 or -1.
#[pyfunction]
fn classify(phi: f64, mode: &str, theta_ab: f64) -> PyResult<i64> {
    if !phi.is_finite() || !theta_ab.is_finite() {
        return Err(PyValueError::new_err("phi and theta_ab must be finite"));
    }
    let spec = core::PartitionSpec::new(parse_mode(mode)?, theta_ab);
    Ok(core::classify(phi, &spec).signum())
}

/// Monte Carlo correlation estimate for one context.
#[pyfunction]
#[pyo3(signature = (mode, theta_ab, n=100_000, seed=42, stream=0))]
fn estimate_correlation(
    mode: &str,
    theta_ab: f64,
    n: u64,
    seed: u64,
    stream: u64,
) -> PyResult<PyCorrelationEstimate> {
    check_n(n, 1)?;
    if !theta_ab.is_finite() {
        return Err(PyValueError::new_err("theta_ab must be finite"));
    }
    let spec = core::PartitionSpec::new(parse_mode(mode)?, theta_ab);
    Ok(core::estimate_correlation_stream(&spec, n, seed, stream).into())
}

/// Estimates for a list of context angles, one fresh stream per angle.
#[pyfunction]
#[pyo3(signature = (thetas, mode="single", n=100_000, seed=42))]
fn fresh_context_estimates(
    thetas: Vec<f64>,
    mode: &str,
    n: u64,
    seed: u64,
) -> PyResult<Vec<PyCorrelationEstimate>> {
    check_n(n, 1)?;
    if thetas.iter().any(|t| !t.is_finite()) {
        return Err(PyValueError::new_err("angles must be finite"));
    }
    let mode = parse_mode(mode)?;
    Ok(core::fresh_context_estimates(&thetas, mode, n, seed)
        .into_iter()
        .map(Into::into)
        .collect())
}

/// Empirical (plus, minus) outcome frequencies for one context.
#[pyfunction]
#[pyo3(signature = (mode, theta_ab, n=100_000, seed=42))]
fn partition_probabilities(mode: &str, theta_ab: f64, n: u64, seed: u64) -> PyResult<(f64, f64)> {
    check_n(n, 1)?;
    if !theta_ab.is_finite() {
        return Err(PyValueError::new_err("theta_ab must be finite"));
    }
    let spec = core::PartitionSpec::new(parse_mode(mode)?, theta_ab);
    Ok(core::partition_probabilities(&spec, n, seed))
}

/// Quadrature masses of the two partition cells (no sampling involved).
#[pyfunction]
fn numeric_partition_integrals(theta: f64) -> PyResult<(f64, f64)> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(PyValueError::new_err("theta must lie in [0, pi]"));
    }
    Ok(core::numeric_partition_integrals(theta))
}

/// CHSH combination for measurement angles (a, a', b, b'); the standard
/// maximizing set is used when angles is None.
#[pyfunction]
#[pyo3(signature = (engine="exact", angles=None, n=100_000, seed=42))]
fn chsh(
    engine: &str,
    angles: Option<(f64, f64, f64, f64)>,
    n: u64,
    seed: u64,
) -> PyResult<PyChshResult> {
    let engine = match engine {
        "exact" => core::Engine::Exact,
        "sampled" => {
            check_n(n, 1_000)?;
            core::Engine::Sampled
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown engine '{other}'; expected 'exact' or 'sampled'"
            )))
        }
    };
    let angles = match angles {
        None => core::ChshAngles::standard(),
        Some((a, a_alt, b, b_alt)) => {
            for t in [a, a_alt, b, b_alt] {
                if !t.is_finite() {
                    return Err(PyValueError::new_err("angles must be finite"));
                }
            }
            core::ChshAngles::from_array([a, a_alt, b, b_alt])
        }
    };
    Ok(core::chsh(&angles, engine, n, seed).into())
}

/// Exact-vs-sampled agreement sweep over [0, pi].
#[pyfunction]
#[pyo3(signature = (mode="single", grid_size=50, n=100_000, seed=42))]
fn agreement_sweep(mode: &str, grid_size: u64, n: u64, seed: u64) -> PyResult<PySweepReport> {
    if grid_size < 2 {
        return Err(PyValueError::new_err("grid_size must be at least 2"));
    }
    check_n(n, 1_000)?;
    let report = core::agreement_sweep(parse_mode(mode)?, grid_size, n, seed);
    Ok(PySweepReport {
        mode: mode_name(report.mode).into(),
        grid_size: report.grid_size,
        n: report.n,
        seed: report.seed,
        max_abs_z: report.max_abs_z,
        flagged: report.flagged,
        rows: report
            .rows
            .iter()
            .map(|r| (r.theta, r.exact, r.sampled_mean, r.std_error, r.z_score))
            .collect(),
    })
}

/// Kolmogorov-Smirnov fit of the sampler against its target law at
/// alpha = 0.01. Returns (statistic, critical_001, pass).
#[pyfunction]
#[pyo3(signature = (n=100_000, seed=42))]
fn ks_test(n: u64, seed: u64) -> PyResult<(f64, f64, bool)> {
    check_n(n, 1_000)?;
    let result = core::ks_test(n, seed);
    Ok((result.statistic, result.critical_001, result.pass))
}

#[pymodule]
fn spincorr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCorrelationEstimate>()?;
    m.add_class::<PyChshResult>()?;
    m.add_class::<PySweepReport>()?;
    m.add_function(wrap_pyfunction!(correlation_exact, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_singlet, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_singlet_direct, m)?)?;
    m.add_function(wrap_pyfunction!(cond_prob_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(cond_prob_matrix_singlet, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_weights, m)?)?;
    m.add_function(wrap_pyfunction!(basis_states, m)?)?;
    m.add_function(wrap_pyfunction!(singlet, m)?)?;
    m.add_function(wrap_pyfunction!(pdf, m)?)?;
    m.add_function(wrap_pyfunction!(cdf, m)?)?;
    m.add_function(wrap_pyfunction!(sample_phi, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(fresh_context_estimates, m)?)?;
    m.add_function(wrap_pyfunction!(partition_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_partition_integrals, m)?)?;
    m.add_function(wrap_pyfunction!(chsh, m)?)?;
    m.add_function(wrap_pyfunction!(agreement_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(ks_test, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
