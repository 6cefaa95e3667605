//! Map laboratory numbers onto the dimensionless interaction strength.
//!
//! ```bash
//! cargo run --release --example physical_units
//! ```
//!
//! Everything in this crate works in trap units: lengths in the oscillator
//! length `a_w = sqrt(hbar / m omega)`, energies in `hbar omega`. The one
//! dimensionless knob is `gamma = N a_s / a_w`. This example starts from a
//! typical rubidium-87 trap, computes `gamma`, solves for the ground
//! state, and converts the headline numbers back to laboratory units.

use becscatter::gpe::{default_r_max, solve_ground_state, SolverConfig};
use becscatter::grid::RadialGrid;
use becscatter::sweep::{gamma_from_physical, PhysicalParams};
use becscatter::thomas_fermi::tf_radius;
use becscatter::Result;

fn main() -> Result<()> {
    let params = PhysicalParams {
        atom_mass: 1.443e-25,
        trap_frequency: 2.0 * std::f64::consts::PI * 100.0,
        scattering_length: 5.3e-9,
        atom_count: 1.0e4,
    };
    let conv = gamma_from_physical(&params)?;

    println!("rubidium-87, 100 Hz trap, 10^4 atoms:");
    println!("  oscillator length a_w = {:.4e} m", conv.trap_length);
    println!("  interaction strength gamma = {:.2}", conv.gamma);

    let grid = RadialGrid::new(2048, default_r_max(conv.gamma))?;
    let state = solve_ground_state(conv.gamma, grid, &SolverConfig::default())?;

    let hz = params.trap_frequency / (2.0 * std::f64::consts::PI);
    println!();
    println!("ground state:");
    println!(
        "  mu = {:.4} hbar omega = h * {:.1} Hz",
        state.mu,
        state.mu * hz
    );
    println!(
        "  Thomas-Fermi radius R = {:.3} a_w = {:.2} um",
        tf_radius(conv.gamma)?,
        tf_radius(conv.gamma)? * conv.trap_length * 1e6
    );
    let forward = 16.0 * std::f64::consts::PI * conv.gamma * conv.gamma;
    println!(
        "  forward-limit cross section 16 pi gamma^2 = {:.3e} a_w^2 = {:.3e} m^2",
        forward,
        forward * conv.trap_length * conv.trap_length
    );
    Ok(())
}
