//! Command-line front end: solves configured ground states and writes
//! the standard datasets.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use becscatter::born::{form_factor_table, tf_total_cross_section, total_cross_section};
use becscatter::dataset::Dataset;
use becscatter::error::{Error, Result};
use becscatter::gpe::order_parameter;
use becscatter::sweep::{
    auto_q_max, effective_nq, run_figure1, run_figure2, run_figure3, run_figure4,
    solve_configured, with_worker_pool, write_dataset, SweepConfig,
};
use becscatter::thomas_fermi::cutoff_radius_from_mu;

#[derive(Parser)]
#[command(
    name = "becscatter",
    version,
    about = "Trapped-condensate ground states and first-Born scattering observables"
)]
struct Cli {
    /// JSON config file; missing fields fall back to defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Radial grid nodes.
    #[arg(long, global = true)]
    grid_n: Option<usize>,

    /// Box radius in trap units.
    #[arg(long, global = true)]
    r_max: Option<f64>,

    /// Initial imaginary-time step.
    #[arg(long, global = true)]
    dtau: Option<f64>,

    /// Convergence threshold on the equation residual.
    #[arg(long, global = true)]
    tol_residual: Option<f64>,

    /// Momentum-transfer extent of form-factor tables.
    #[arg(long, global = true)]
    q_max: Option<f64>,

    /// Minimum number of form-factor nodes.
    #[arg(long, global = true)]
    n_q: Option<usize>,

    /// Output directory for datasets.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one ground state and write its radial profile.
    GroundState {
        /// Interaction strength N a_s / a_omega.
        #[arg(long)]
        gamma: f64,
    },
    /// Tabulate the form factor of one solved ground state.
    FormFactor {
        #[arg(long)]
        gamma: f64,
    },
    /// Total cross sections of one solved ground state.
    CrossSection {
        #[arg(long)]
        gamma: f64,
        /// Single probe momentum; omitting it uses the configured list.
        #[arg(long)]
        k: Option<f64>,
    },
    /// Order-parameter profiles against the Thomas-Fermi shape.
    Figure1,
    /// Total cross sections at fixed momenta across gamma.
    Figure2,
    /// Cross-section curves and the scaled universal collapse.
    Figure3,
    /// Differential cross sections with diffraction oscillations.
    Figure4,
    /// All four figure datasets.
    All,
}

fn load_config(cli: &Cli) -> Result<SweepConfig> {
    let mut config = match &cli.config {
        None => SweepConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::FileError {
                path: path.clone(),
                source,
            })?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
    };
    if let Some(n) = cli.grid_n {
        config.grid_n = n;
    }
    if let Some(r) = cli.r_max {
        config.r_max = Some(r);
    }
    if let Some(dtau) = cli.dtau {
        config.solver.dtau_initial = dtau;
        config.solver.dtau_min = config.solver.dtau_min.min(dtau);
    }
    if let Some(tol) = cli.tol_residual {
        config.solver.tol_residual = tol;
    }
    if let Some(q) = cli.q_max {
        config.q_max = Some(q);
    }
    if let Some(n) = cli.n_q {
        config.n_q = n;
    }
    if let Some(dir) = &cli.out {
        config.output_dir = dir.clone();
    }
    if let Some(f) = &cli.format {
        config.format = f.parse()?;
    }
    config.validate()?;
    Ok(config)
}

fn ground_state_dataset(config: &SweepConfig, gamma: f64) -> Result<Dataset> {
    let state = solve_configured(config, gamma)?;
    let grid = state.profile.grid();
    let mut ds = Dataset::new("ground_state");
    ds.push_column(
        "r",
        "a_omega",
        (0..grid.n()).map(|j| grid.r(j)).collect(),
    )?;
    ds.push_column("u", "a_omega^-1/2", state.profile.values().to_vec())?;
    ds.push_column("psi", "a_omega^-3/2", order_parameter(&state.profile))?;
    ds.set_provenance("gamma", format!("{gamma}"));
    ds.set_provenance("mu", format!("{:.16e}", state.mu));
    ds.set_provenance("residual", format!("{:.16e}", state.residual));
    ds.set_provenance("steps", format!("{}", state.steps_taken));
    ds.set_provenance("energy.kinetic", format!("{:.16e}", state.energy.kinetic));
    ds.set_provenance("energy.trap", format!("{:.16e}", state.energy.trap));
    ds.set_provenance(
        "energy.interaction",
        format!("{:.16e}", state.energy.interaction),
    );
    ds.set_provenance("energy.total", format!("{:.16e}", state.energy.total()));
    println!(
        "gamma = {gamma}: mu = {:.10} hbar_omega, residual = {:.3e}, {} steps",
        state.mu, state.residual, state.steps_taken
    );
    Ok(ds)
}

fn form_factor_dataset(config: &SweepConfig, gamma: f64) -> Result<Dataset> {
    let state = solve_configured(config, gamma)?;
    let r_mu = cutoff_radius_from_mu(state.mu)?;
    let k_largest = config.ks.last().copied().unwrap_or(1.0);
    let q_max = config.q_max.unwrap_or_else(|| auto_q_max(k_largest, r_mu));
    let n_q = effective_nq(config.n_q, q_max, r_mu);
    let table = form_factor_table(&state.profile, q_max, n_q)?;
    let mut ds = Dataset::new("form_factor");
    ds.push_column("q", "1/a_omega", table.q_nodes().to_vec())?;
    ds.push_column("s", "", table.s_values().to_vec())?;
    ds.set_provenance("gamma", format!("{gamma}"));
    ds.set_provenance("mu", format!("{:.16e}", state.mu));
    ds.set_provenance("q_max", format!("{q_max:.16e}"));
    ds.set_provenance("n_q", format!("{n_q}"));
    println!(
        "gamma = {gamma}: tabulated s(q) on {n_q} nodes up to q = {q_max:.3}"
    );
    Ok(ds)
}

fn cross_section_dataset(config: &SweepConfig, gamma: f64, k: Option<f64>) -> Result<Dataset> {
    let ks = match k {
        Some(k) => vec![k],
        None => config.ks.clone(),
    };
    let k_largest = ks.iter().cloned().fold(0.0f64, f64::max);
    let state = solve_configured(config, gamma)?;
    let r_mu = cutoff_radius_from_mu(state.mu)?;
    let q_max = config.q_max.unwrap_or_else(|| auto_q_max(k_largest, r_mu));
    let n_q = effective_nq(config.n_q, q_max, r_mu);
    let table = form_factor_table(&state.profile, q_max, n_q)?;
    let mut sigma_num = Vec::with_capacity(ks.len());
    let mut sigma_tf = Vec::with_capacity(ks.len());
    for &k in &ks {
        sigma_num.push(total_cross_section(gamma, &table, k)?);
        sigma_tf.push(tf_total_cross_section(gamma, k)?);
    }
    for ((&k, &sn), &st) in ks.iter().zip(&sigma_num).zip(&sigma_tf) {
        println!(
            "gamma = {gamma}, k = {k}: sigma_num = {sn:.6e} a_omega^2, sigma_tf = {st:.6e} a_omega^2"
        );
    }
    let mut ds = Dataset::new("cross_section");
    ds.push_column("k", "1/a_omega", ks)?;
    ds.push_column("sigma_num", "a_omega^2", sigma_num)?;
    ds.push_column("sigma_tf", "a_omega^2", sigma_tf)?;
    ds.set_provenance("gamma", format!("{gamma}"));
    ds.set_provenance("mu", format!("{:.16e}", state.mu));
    Ok(ds)
}

fn run(cli: Cli) -> Result<()> {
    let config = load_config(&cli)?;
    let datasets: Vec<Dataset> = with_worker_pool(|| -> Result<Vec<Dataset>> {
        match cli.command {
            Command::GroundState { gamma } => Ok(vec![ground_state_dataset(&config, gamma)?]),
            Command::FormFactor { gamma } => Ok(vec![form_factor_dataset(&config, gamma)?]),
            Command::CrossSection { gamma, k } => {
                Ok(vec![cross_section_dataset(&config, gamma, k)?])
            }
            Command::Figure1 => Ok(vec![run_figure1(&config)?]),
            Command::Figure2 => Ok(vec![run_figure2(&config)?]),
            Command::Figure3 => Ok(vec![run_figure3(&config)?]),
            Command::Figure4 => Ok(vec![run_figure4(&config)?]),
            Command::All => Ok(vec![
                run_figure1(&config)?,
                run_figure2(&config)?,
                run_figure3(&config)?,
                run_figure4(&config)?,
            ]),
        }
    })??;
    for ds in &datasets {
        let path = write_dataset(ds, &config.output_dir, config.format)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
