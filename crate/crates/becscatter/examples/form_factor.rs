//! Build the elastic form factor of a solved density profile.
//!
//! ```bash
//! cargo run --release --example form_factor
//! ```
//!
//! The form factor `s(q)` is the spherical Fourier transform of the
//! normalized density; it starts at `s(0) = 1`, decays on the inverse
//! cloud-size scale, and oscillates through zeros whose spacing encodes
//! the condensate radius. The table compares the solved profile with the
//! sharp-edged Thomas-Fermi density at the same interaction strength.

use becscatter::born::{form_factor_table, tf_form_factor_table};
use becscatter::gpe::{default_r_max, solve_ground_state, SolverConfig};
use becscatter::grid::RadialGrid;
use becscatter::thomas_fermi::tf_radius;
use becscatter::Result;

fn main() -> Result<()> {
    let gamma = 100.0;
    let grid = RadialGrid::new(2048, default_r_max(gamma))?;
    let state = solve_ground_state(gamma, grid, &SolverConfig::default())?;
    let radius = tf_radius(gamma)?;

    let q_max = 20.0 / radius;
    let n_q = 801;
    let numerical = form_factor_table(&state.profile, q_max, n_q)?;
    let tf = tf_form_factor_table(gamma, q_max, n_q)?;

    println!("gamma = {gamma}, Thomas-Fermi radius R = {radius:.4} a_w");
    println!();
    println!("{:>10}  {:>12}  {:>12}", "q [1/a_w]", "s solved", "s TF");
    for i in (0..n_q).step_by(n_q / 20) {
        println!(
            "{:10.4}  {:12.6}  {:12.6}",
            numerical.q_nodes()[i],
            numerical.s_values()[i],
            tf.s_values()[i]
        );
    }

    let first_zero = numerical
        .q_nodes()
        .windows(2)
        .zip(numerical.s_values().windows(2))
        .find(|(_, s)| s[0] > 0.0 && s[1] <= 0.0)
        .map(|(q, _)| 0.5 * (q[0] + q[1]));
    if let Some(q0) = first_zero {
        println!();
        println!(
            "first zero of s(q) near q = {:.4}, i.e. q R = {:.4} (TF value 5.7635)",
            q0,
            q0 * radius
        );
    }
    Ok(())
}
