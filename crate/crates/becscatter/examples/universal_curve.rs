//! Collapse cross-section curves from different clouds onto one shape.
//!
//! ```bash
//! cargo run --release --example universal_curve
//! ```
//!
//! In Thomas-Fermi variables the total cross section depends on `gamma`
//! and `k` only through `sigma / gamma^2` as a function of `k R`. Curves
//! solved at interaction strengths an order of magnitude apart land on the
//! same universal function, and the solved profiles approach it from
//! below as `gamma` grows.

use becscatter::born::{form_factor_table, total_cross_section, universal_scaled_cross_section};
use becscatter::gpe::{default_r_max, solve_ground_state, SolverConfig};
use becscatter::grid::RadialGrid;
use becscatter::sweep::effective_nq;
use becscatter::thomas_fermi::cutoff_radius_from_mu;
use becscatter::Result;

fn main() -> Result<()> {
    let gammas = [10.0, 100.0, 1000.0];
    let ktildes = [0.5, 1.0, 2.0, 4.0];

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &gamma in &gammas {
        let grid = RadialGrid::new(2048, default_r_max(gamma))?;
        let state = solve_ground_state(gamma, grid, &SolverConfig::default())?;
        let r_mu = cutoff_radius_from_mu(state.mu)?;
        let q_max = 12.0 / r_mu + 1.0;
        let table = form_factor_table(&state.profile, q_max, effective_nq(2001, q_max, r_mu))?;
        let row = ktildes
            .iter()
            .map(|&kt| {
                let sigma = total_cross_section(gamma, &table, kt / r_mu)?;
                Ok(sigma / (gamma * gamma))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }

    print!("{:>22}", "k R");
    for &kt in &ktildes {
        print!("  {kt:>12.2}");
    }
    println!();
    for (gamma, row) in gammas.iter().zip(&rows) {
        print!("{:>22}", format!("sigma/g^2, gamma {gamma}"));
        for v in row {
            print!("  {v:>12.5}");
        }
        println!();
    }
    print!("{:>22}", "universal curve");
    for &kt in &ktildes {
        print!("  {:>12.5}", universal_scaled_cross_section(kt)?);
    }
    println!();
    Ok(())
}
