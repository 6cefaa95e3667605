//! Relax a trapped condensate to its ground state and inspect the result.
//!
//! ```bash
//! cargo run --release --example ground_state
//! ```
//!
//! Solves the scaled radial problem at one interaction strength, then
//! prints the chemical potential, the energy budget, and a short table of
//! the order parameter `psi(r)`.

use becscatter::gpe::{order_parameter, solve_ground_state, SolverConfig};
use becscatter::grid::RadialGrid;
use becscatter::Result;

fn main() -> Result<()> {
    let gamma = 10.0;
    let grid = RadialGrid::new(1024, 10.0)?;
    let state = solve_ground_state(gamma, grid, &SolverConfig::default())?;

    println!("interaction strength gamma = {gamma}");
    println!(
        "converged after {} steps, defect norm {:.3e}",
        state.steps_taken, state.residual
    );
    println!("chemical potential mu = {:.8} hbar omega", state.mu);
    let e = state.energy;
    println!(
        "energy budget: kinetic {:.6}, trap {:.6}, interaction {:.6}, total {:.6}",
        e.kinetic,
        e.trap,
        e.interaction,
        e.total()
    );
    let virial = 2.0 * e.kinetic - 2.0 * e.trap + 3.0 * e.interaction;
    println!("virial combination 2Ek - 2Et + 3Ei = {virial:+.3e} (zero for a true ground state)");

    println!();
    println!("{:>8}  {:>14}", "r [a_w]", "psi [a_w^-3/2]");
    let psi = order_parameter(&state.profile);
    for j in (0..grid.n()).step_by(grid.n() / 16) {
        println!("{:8.3}  {:14.8}", grid.r(j), psi[j]);
    }
    Ok(())
}
