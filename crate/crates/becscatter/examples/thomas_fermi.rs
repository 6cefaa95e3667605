//! Watch the Thomas-Fermi approximation take over as the interaction grows.
//!
//! ```bash
//! cargo run --release --example thomas_fermi
//! ```
//!
//! Solves the full mean-field problem across four decades of interaction
//! strength and tabulates the solved chemical potential against the
//! kinetic-energy-free prediction `mu_TF = (15 gamma)^{2/5} / 2`, whose
//! relative error shrinks monotonically with `gamma`.

use becscatter::gpe::{default_r_max, solve_ground_state, SolverConfig};
use becscatter::grid::RadialGrid;
use becscatter::thomas_fermi::{tf_chemical_potential, tf_radius};
use becscatter::Result;

fn main() -> Result<()> {
    println!(
        "{:>8}  {:>12}  {:>12}  {:>9}  {:>9}",
        "gamma", "mu solved", "mu TF", "gap", "R_TF"
    );
    for gamma in [0.1, 1.0, 10.0, 100.0, 1000.0] {
        let grid = RadialGrid::new(2048, default_r_max(gamma))?;
        let state = solve_ground_state(gamma, grid, &SolverConfig::default())?;
        let mu_tf = tf_chemical_potential(gamma)?;
        let gap = (state.mu - mu_tf).abs() / state.mu;
        println!(
            "{:8.1}  {:12.6}  {:12.6}  {:8.2}%  {:9.4}",
            gamma,
            state.mu,
            mu_tf,
            100.0 * gap,
            tf_radius(gamma)?
        );
    }
    println!();
    println!("the gap closes like gamma^{{-4/5}}: kinetic energy is the only");
    println!("term the Thomas-Fermi limit drops, and it becomes negligible");
    println!("once the cloud is much wider than the oscillator length");
    Ok(())
}
