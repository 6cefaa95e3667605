//! Configured parameter sweeps and the four standard datasets.
//!
//! A [`SweepConfig`] bundles every knob the command-line front end
//! exposes: interaction strengths, probe momenta, grid resolution, solver
//! controls, and output location. The `run_figure*` builders each solve
//! the configured ground states and assemble one [`Dataset`]:
//!
//! 1. order-parameter profiles against the Thomas-Fermi shape,
//! 2. total cross sections at fixed probe momenta across `gamma`,
//! 3. total cross sections across momentum with the scaled collapse onto
//!    the universal Thomas-Fermi curve,
//! 4. differential cross sections showing the diffraction oscillations.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::born::{
    form_factor_table, tf_form_factor_table, tf_total_cross_section, total_cross_section,
    universal_scaled_cross_section,
};
use crate::dataset::{emit_dataset, Dataset, OutputFormat};
use crate::error::{Error, Result};
use crate::gpe::{
    default_r_max, order_parameter, solve_ground_state, GroundState, SolverConfig,
};
use crate::grid::RadialGrid;
use crate::thomas_fermi::{cutoff_radius_from_mu, TfState};

/// Environment variable naming the worker-thread count for parallel
/// sections; unset or empty means the default pool.
pub const WORKER_ENV: &str = "BECSCATTER_THREADS";

/// Reduced Planck constant in J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Interaction strengths used by the differential-cross-section dataset.
pub const FIGURE4_GAMMAS: [f64; 3] = [0.1, 10.0, 1000.0];

/// Logarithmic probe-momentum grid in `1/a_omega`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KGrid {
    pub k_min: f64,
    pub k_max: f64,
    pub n_k: usize,
}

impl Default for KGrid {
    fn default() -> Self {
        Self {
            k_min: 1e-2,
            k_max: 1e2,
            n_k: 200,
        }
    }
}

/// Full sweep description; everything has a sensible default so a JSON
/// config file only needs the fields it overrides.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Interaction strengths, strictly ascending and positive.
    pub gammas: Vec<f64>,
    /// Fixed probe momenta for the per-`gamma` cross-section table.
    pub ks: Vec<f64>,
    /// Momentum-transfer extent of form-factor tables; `None` picks a
    /// value wide enough for the requested momenta and density tails.
    pub q_max: Option<f64>,
    /// Minimum number of form-factor nodes; raised automatically when
    /// the density's diffraction oscillations need finer sampling.
    pub n_q: usize,
    /// Momentum grid for cross-section curves.
    pub k_grid: KGrid,
    /// Radial grid nodes.
    pub grid_n: usize,
    /// Box radius in `a_omega`; `None` scales with the condensate size.
    pub r_max: Option<f64>,
    pub solver: SolverConfig,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            gammas: vec![0.1, 1.0, 10.0, 100.0, 1000.0],
            ks: vec![0.2, 1.2, 5.0],
            q_max: None,
            n_q: 2001,
            k_grid: KGrid::default(),
            grid_n: 4096,
            r_max: None,
            solver: SolverConfig::default(),
            output_dir: PathBuf::from("datasets"),
            format: OutputFormat::Csv,
        }
    }
}

fn require_ascending_positive(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidConfig(format!("{name} must be nonempty")));
    }
    for &v in values {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "{name} entries must be positive and finite, got {v}"
            )));
        }
    }
    for w in values.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidConfig(format!(
                "{name} must ascend strictly: {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        require_ascending_positive("gammas", &self.gammas)?;
        require_ascending_positive("ks", &self.ks)?;
        if let Some(q_max) = self.q_max {
            if !(q_max > 0.0) || !q_max.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "q_max must be positive and finite, got {q_max}"
                )));
            }
        }
        if self.n_q < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_q must be at least 2, got {}",
                self.n_q
            )));
        }
        let kg = &self.k_grid;
        if !(kg.k_min > 0.0) || !kg.k_min.is_finite() || !(kg.k_max > kg.k_min) || !kg.k_max.is_finite()
        {
            return Err(Error::InvalidConfig(format!(
                "k_grid must satisfy 0 < k_min < k_max, got [{}, {}]",
                kg.k_min, kg.k_max
            )));
        }
        if kg.n_k < 2 {
            return Err(Error::InvalidConfig(format!(
                "k_grid.n_k must be at least 2, got {}",
                kg.n_k
            )));
        }
        if let Some(r_max) = self.r_max {
            if !(r_max > 0.0) || !r_max.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "r_max must be positive and finite, got {r_max}"
                )));
            }
        }
        self.solver.validate()
    }
}

/// Trap parameters of a real condensate, SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhysicalParams {
    /// Atom mass in kg.
    pub atom_mass: f64,
    /// Angular trap frequency in rad/s.
    pub trap_frequency: f64,
    /// s-wave scattering length in m.
    pub scattering_length: f64,
    /// Condensate atom number.
    pub atom_count: f64,
}

/// Dimensionless interaction strength plus the oscillator length that
/// converts lengths back to meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConversion {
    pub gamma: f64,
    /// `sqrt(hbar / (m omega))` in m.
    pub trap_length: f64,
}

/// Converts trap parameters to the dimensionless interaction strength
/// `gamma = N a_s / a_omega`.
pub fn gamma_from_physical(params: &PhysicalParams) -> Result<GammaConversion> {
    let fields = [
        ("atom_mass", params.atom_mass),
        ("trap_frequency", params.trap_frequency),
        ("scattering_length", params.scattering_length),
        ("atom_count", params.atom_count),
    ];
    for (name, v) in fields {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    let trap_length = (HBAR / (params.atom_mass * params.trap_frequency)).sqrt();
    Ok(GammaConversion {
        gamma: params.atom_count * params.scattering_length / trap_length,
        trap_length,
    })
}

/// Runs `f` inside a worker pool sized by the `BECSCATTER_THREADS`
/// environment variable; unset or empty falls through to the ambient
/// pool.
pub fn with_worker_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let requested = match std::env::var(WORKER_ENV) {
        Err(std::env::VarError::NotPresent) => None,
        Err(std::env::VarError::NotUnicode(_)) => {
            return Err(Error::InvalidConfig(format!(
                "{WORKER_ENV} holds non-unicode data"
            )));
        }
        Ok(s) if s.trim().is_empty() => None,
        Ok(s) => {
            let n: usize = s.trim().parse().map_err(|_| {
                Error::InvalidConfig(format!(
                    "{WORKER_ENV} must be a positive integer, got {s:?}"
                ))
            })?;
            if n == 0 {
                return Err(Error::InvalidConfig(format!(
                    "{WORKER_ENV} must be at least 1"
                )));
            }
            Some(n)
        }
    };
    match requested {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Solves one interaction strength with the configured grid and solver
/// controls; the box radius defaults to [`default_r_max`] for `gamma`.
pub fn solve_configured(config: &SweepConfig, gamma: f64) -> Result<GroundState> {
    config.validate()?;
    let r_max = config.r_max.unwrap_or_else(|| default_r_max(gamma));
    let grid = RadialGrid::new(config.grid_n, r_max)?;
    solve_ground_state(gamma, grid, &config.solver)
}

fn solve_many(config: &SweepConfig, gammas: &[f64]) -> Result<Vec<GroundState>> {
    gammas
        .par_iter()
        .map(|&g| solve_configured(config, g))
        .collect()
}

/// Solves every configured interaction strength, in parallel, in order.
pub fn solve_gammas(config: &SweepConfig) -> Result<Vec<GroundState>> {
    config.validate()?;
    solve_many(config, &config.gammas)
}

/// Smallest odd node count that is at least `n_min` and keeps the node
/// spacing below 1/16 of the diffraction period `pi / r_scale` on
/// `[0, q_max]`.
pub fn effective_nq(n_min: usize, q_max: f64, r_scale: f64) -> usize {
    let needed = (16.0 * q_max * r_scale / PI).ceil() as usize;
    n_min.max(needed) | 1
}

/// Default form-factor table extent: twice the largest momentum transfer
/// `2 k` reachable at `k_largest` with headroom, at least 10, and wide
/// enough to cover the density's momentum-space tail at scale
/// `60 / r_scale`.
pub fn auto_q_max(k_largest: f64, r_scale: f64) -> f64 {
    (4.0 * k_largest).max(10.0).max(60.0 / r_scale)
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| lo * (step * i as f64).exp()).collect()
}

fn tag(x: f64) -> String {
    format!("{x}")
}

fn stamp(ds: &mut Dataset, config: &SweepConfig) {
    let cfg = serde_json::to_string(config).expect("config serializes to one line");
    ds.set_provenance("config", cfg);
    ds.set_provenance("version", env!("CARGO_PKG_VERSION"));
}

/// Ground-state order parameters `psi(r)/psi(0)` beside the Thomas-Fermi
/// shape `sqrt(max(0, 1 - (r/R)^2))`, one column group per `gamma`, with
/// the chemical potentials as constant columns.
pub fn run_figure1(config: &SweepConfig) -> Result<Dataset> {
    let states = solve_gammas(config)?;
    let mut ds = Dataset::new("figure1");
    for state in &states {
        let t = tag(state.gamma);
        let grid = state.profile.grid();
        let n = grid.n();
        let r: Vec<f64> = (0..n).map(|j| grid.r(j)).collect();
        let psi = order_parameter(&state.profile);
        let psi0 = psi[0];
        if !(psi0 > 0.0) {
            return Err(Error::DegenerateProfile(format!(
                "central order parameter is {psi0} at gamma = {}",
                state.gamma
            )));
        }
        let psi_num: Vec<f64> = psi.iter().map(|&p| p / psi0).collect();
        let tf = TfState::new(state.gamma)?;
        let psi_tf: Vec<f64> = r
            .iter()
            .map(|&rr| (1.0 - (rr / tf.radius).powi(2)).max(0.0).sqrt())
            .collect();
        ds.push_column(format!("r_{t}"), "a_omega", r)?;
        ds.push_column(format!("psi_num_{t}"), "psi(0)", psi_num)?;
        ds.push_column(format!("psi_tf_{t}"), "psi(0)", psi_tf)?;
        ds.push_column(format!("gamma_{t}"), "", vec![state.gamma; n])?;
        ds.push_column(format!("mu_num_{t}"), "hbar_omega", vec![state.mu; n])?;
        ds.push_column(format!("mu_tf_{t}"), "hbar_omega", vec![tf.mu_tf; n])?;
    }
    stamp(&mut ds, config);
    Ok(ds)
}

/// Total cross sections at the configured fixed momenta, one row per
/// `gamma`, numerical and Thomas-Fermi side by side.
pub fn run_figure2(config: &SweepConfig) -> Result<Dataset> {
    let states = solve_gammas(config)?;
    let k_largest = *config.ks.last().expect("validated nonempty");
    let mut sigma_num = vec![Vec::with_capacity(states.len()); config.ks.len()];
    let mut sigma_tf = vec![Vec::with_capacity(states.len()); config.ks.len()];
    for state in &states {
        let r_mu = cutoff_radius_from_mu(state.mu)?;
        let q_max = config.q_max.unwrap_or_else(|| auto_q_max(k_largest, r_mu));
        let n_q = effective_nq(config.n_q, q_max, r_mu);
        let table = form_factor_table(&state.profile, q_max, n_q)?;
        for (i, &k) in config.ks.iter().enumerate() {
            sigma_num[i].push(total_cross_section(state.gamma, &table, k)?);
            sigma_tf[i].push(tf_total_cross_section(state.gamma, k)?);
        }
    }
    let mut ds = Dataset::new("figure2");
    ds.push_column("gamma", "", config.gammas.clone())?;
    for (i, &k) in config.ks.iter().enumerate() {
        let t = tag(k);
        ds.push_column(
            format!("sigma_num_k{t}"),
            "a_omega^2",
            std::mem::take(&mut sigma_num[i]),
        )?;
        ds.push_column(
            format!("sigma_tf_k{t}"),
            "a_omega^2",
            std::mem::take(&mut sigma_tf[i]),
        )?;
    }
    stamp(&mut ds, config);
    Ok(ds)
}

/// Total cross sections over the momentum grid plus their scaled images
/// `(k * cutoff, sigma / gamma^2)` and the universal Thomas-Fermi curve.
///
/// The numerical branch scales with the cutoff `sqrt(2 mu)` of the solved
/// state, the Thomas-Fermi branch with the hard-edge radius; both choices
/// are recorded in the provenance.
pub fn run_figure3(config: &SweepConfig) -> Result<Dataset> {
    let states = solve_gammas(config)?;
    let kg = config.k_grid;
    let ks = log_grid(kg.k_min, kg.k_max, kg.n_k);
    let mut ds = Dataset::new("figure3");
    ds.push_column("k", "1/a_omega", ks.clone())?;
    let mut cutoff_lo = f64::INFINITY;
    let mut cutoff_hi = 0.0f64;
    for state in &states {
        let t = tag(state.gamma);
        let gamma = state.gamma;
        let r_mu = cutoff_radius_from_mu(state.mu)?;
        let tf = TfState::new(gamma)?;
        cutoff_lo = cutoff_lo.min(r_mu).min(tf.radius);
        cutoff_hi = cutoff_hi.max(r_mu).max(tf.radius);

        let q_max = config.q_max.unwrap_or_else(|| auto_q_max(kg.k_max, r_mu));
        let n_q = effective_nq(config.n_q, q_max, r_mu);
        let table = form_factor_table(&state.profile, q_max, n_q)?;
        let sigma_num: Vec<f64> = ks
            .par_iter()
            .map(|&k| total_cross_section(gamma, &table, k))
            .collect::<Result<_>>()?;
        let sigma_tf: Vec<f64> = ks
            .par_iter()
            .map(|&k| tf_total_cross_section(gamma, k))
            .collect::<Result<_>>()?;
        let g2 = gamma * gamma;
        ds.push_column(format!("sigma_num_{t}"), "a_omega^2", sigma_num.clone())?;
        ds.push_column(format!("sigma_tf_{t}"), "a_omega^2", sigma_tf.clone())?;
        ds.push_column(
            format!("ktilde_num_{t}"),
            "",
            ks.iter().map(|&k| k * r_mu).collect(),
        )?;
        ds.push_column(
            format!("sigmatilde_num_{t}"),
            "",
            sigma_num.iter().map(|&s| s / g2).collect(),
        )?;
        ds.push_column(
            format!("ktilde_tf_{t}"),
            "",
            ks.iter().map(|&k| k * tf.radius).collect(),
        )?;
        ds.push_column(
            format!("sigmatilde_tf_{t}"),
            "",
            sigma_tf.iter().map(|&s| s / g2).collect(),
        )?;
        ds.set_provenance(
            format!("scaled.numerical.cutoff.{t}"),
            format!("{r_mu:.16e}"),
        );
        ds.set_provenance(
            format!("scaled.numerical.cutoff_source.{t}"),
            "sqrt(2*mu_num)",
        );
        ds.set_provenance(format!("scaled.tf.cutoff.{t}"), format!("{:.16e}", tf.radius));
        ds.set_provenance(format!("scaled.tf.cutoff_source.{t}"), "tf_radius");
    }
    let ktilde = log_grid(0.9 * kg.k_min * cutoff_lo, 1.1 * kg.k_max * cutoff_hi, kg.n_k);
    let sigmatilde: Vec<f64> = ktilde
        .par_iter()
        .map(|&kt| universal_scaled_cross_section(kt))
        .collect::<Result<_>>()?;
    ds.push_column("ktilde_univ", "", ktilde)?;
    ds.push_column("sigmatilde_univ", "", sigmatilde)?;
    stamp(&mut ds, config);
    Ok(ds)
}

/// Differential cross sections `4 gamma^2 s(q)^2` over momentum transfer
/// for the three reference interaction strengths, numerical beside
/// Thomas-Fermi, on one shared uniform `q` grid.
pub fn run_figure4(config: &SweepConfig) -> Result<Dataset> {
    config.validate()?;
    let states = solve_many(config, &FIGURE4_GAMMAS)?;
    let q_max = config.q_max.unwrap_or(12.0);
    let r_scale = states
        .iter()
        .map(|s| cutoff_radius_from_mu(s.mu))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    let n_q = effective_nq(config.n_q, q_max, r_scale);
    let mut ds = Dataset::new("figure4");
    let dq = q_max / (n_q - 1) as f64;
    ds.push_column(
        "q",
        "1/a_omega",
        (0..n_q).map(|i| i as f64 * dq).collect(),
    )?;
    for state in &states {
        let t = tag(state.gamma);
        let g2 = state.gamma * state.gamma;
        let table = form_factor_table(&state.profile, q_max, n_q)?;
        let tf_table = tf_form_factor_table(state.gamma, q_max, n_q)?;
        ds.push_column(
            format!("dsigma_num_{t}"),
            "a_omega^2/sr",
            table.s_values().iter().map(|&s| 4.0 * g2 * s * s).collect(),
        )?;
        ds.push_column(
            format!("dsigma_tf_{t}"),
            "a_omega^2/sr",
            tf_table.s_values().iter().map(|&s| 4.0 * g2 * s * s).collect(),
        )?;
    }
    stamp(&mut ds, config);
    Ok(ds)
}

/// Writes a dataset into `dir` as `<name>.<ext>`, creating the directory
/// if needed, and returns the full path.
pub fn write_dataset(ds: &Dataset, dir: &Path, format: OutputFormat) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| Error::FileError {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(format!("{}.{}", ds.name(), format.extension()));
    emit_dataset(ds, format, &path)?;
    Ok(path)
}
