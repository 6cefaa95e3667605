//! End-to-end contracts of the imaginary-time solver against independent
//! closed-form oracles.

use becscatter::gpe::{
    chemical_potential, default_r_max, energy_breakdown, gpe_residual, initial_profile,
    solve_ground_state, Propagator, SolverConfig,
};
use becscatter::grid::{simpson, RadialGrid};
use becscatter::thomas_fermi::{tf_chemical_potential, tf_profile, tf_radius};

/// Exact noninteracting ground state `2 pi^{-1/4} r exp(-r^2/2)`,
/// normalized to `integral u^2 dr = 1` on the half line.
fn exact_gaussian(grid: RadialGrid) -> Vec<f64> {
    let c = 2.0 * std::f64::consts::PI.powf(-0.25);
    (0..grid.n())
        .map(|j| {
            let r = grid.r(j);
            c * r * (-0.5 * r * r).exp()
        })
        .collect()
}

fn l2_distance(a: &[f64], b: &[f64], dr: f64) -> f64 {
    let sq: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).collect();
    simpson(&sq, dr).sqrt()
}

#[test]
fn noninteracting_ground_state_matches_the_exact_gaussian() {
    let grid = RadialGrid::new(4096, 8.0).unwrap();
    let state = solve_ground_state(0.0, grid, &SolverConfig::default()).unwrap();
    assert!(state.converged);
    assert!(
        (state.mu - 1.5).abs() <= 1e-6,
        "mu = {} is not 1.5 within 1e-6",
        state.mu
    );
    let err = l2_distance(state.profile.values(), &exact_gaussian(grid), grid.dr());
    assert!(err <= 1e-6, "L2 profile error {err}");
}

#[test]
fn weak_coupling_shift_matches_first_order_perturbation() {
    // oracle first: the first-order shift is gamma * integral u0^4 / r^2 dr
    // evaluated with the exact noninteracting profile; the closed form of
    // that integral is sqrt(2/pi)
    let grid = RadialGrid::new(4096, 8.0).unwrap();
    let u0 = exact_gaussian(grid);
    let mut integrand = vec![0.0; grid.n()];
    for j in 1..grid.n() {
        let r = grid.r(j);
        integrand[j] = u0[j].powi(4) / (r * r);
    }
    let shift_integral = simpson(&integrand, grid.dr());
    let closed = (2.0 / std::f64::consts::PI).sqrt();
    assert!(
        (shift_integral - closed).abs() <= 1e-8,
        "quadrature {shift_integral} vs closed form {closed}"
    );

    let gamma = 0.1;
    let mu_first_order = 1.5 + gamma * shift_integral;
    let state = solve_ground_state(gamma, grid, &SolverConfig::default()).unwrap();
    // second-order corrections enter at gamma^2; 5e-3 covers them at 0.1
    assert!(
        (state.mu - mu_first_order).abs() <= 5e-3,
        "mu = {} vs first-order {mu_first_order}",
        state.mu
    );
    assert!(
        state.mu < mu_first_order,
        "second-order correction must lower mu below {mu_first_order}, got {}",
        state.mu
    );
}

#[test]
fn energy_decreases_monotonically_during_relaxation() {
    let grid = RadialGrid::new(2048, 8.0).unwrap();
    let gamma = 1.0;
    let propagator = Propagator::new(grid);
    let mut u = initial_profile(gamma, grid);
    let mut prev = energy_breakdown(&u, gamma).total();
    for step in 0..2000 {
        u = propagator.step(&u, 1e-2, gamma).unwrap();
        let e = energy_breakdown(&u, gamma).total();
        assert!(
            e <= prev + 1e-12 * prev.abs().max(1.0),
            "energy rose from {prev} to {e} at step {step}"
        );
        prev = e;
    }
}

#[test]
fn norm_is_preserved_across_many_steps() {
    let grid = RadialGrid::new(1024, 8.0).unwrap();
    let gamma = 10.0;
    let propagator = Propagator::new(grid);
    let mut u = initial_profile(gamma, grid);
    for _ in 0..500 {
        u = propagator.step(&u, 5e-3, gamma).unwrap();
        assert!((u.norm_sq() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn identical_inputs_give_bitwise_identical_results() {
    let grid = RadialGrid::new(1024, 8.0).unwrap();
    let config = SolverConfig::default();
    let a = solve_ground_state(2.0, grid, &config).unwrap();
    let b = solve_ground_state(2.0, grid, &config).unwrap();
    assert_eq!(a.mu.to_bits(), b.mu.to_bits());
    assert_eq!(a.residual.to_bits(), b.residual.to_bits());
    assert_eq!(a.steps_taken, b.steps_taken);
    for (x, y) in a.profile.values().iter().zip(b.profile.values()) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
}

#[test]
fn vanishing_interaction_approaches_the_noninteracting_profile() {
    let grid = RadialGrid::new(1024, 8.0).unwrap();
    let state = solve_ground_state(1e-4, grid, &SolverConfig::default()).unwrap();
    let err = l2_distance(state.profile.values(), &exact_gaussian(grid), grid.dr());
    assert!(err <= 1e-4, "L2 distance {err} to the gamma = 0 profile");
    assert!(state.mu > 1.5 && state.mu < 1.501);
}

#[test]
fn interaction_strictly_raises_the_chemical_potential() {
    let grid = RadialGrid::new(1024, 8.0).unwrap();
    let config = SolverConfig::default();
    let mu_weak = solve_ground_state(0.1, grid, &config).unwrap().mu;
    let mu_mid = solve_ground_state(1.0, grid, &config).unwrap().mu;
    assert!(mu_weak > 1.5);
    assert!(mu_mid > mu_weak);
}

#[test]
fn hard_edge_profile_defect_concentrates_at_the_edge() {
    // the Thomas-Fermi shape solves the equation only where kinetic
    // energy is negligible; its square-root edge makes the defect blow
    // up right at the cutoff radius
    let gamma = 1000.0;
    let grid = RadialGrid::new(4096, 8.0).unwrap();
    let p = tf_profile(gamma, grid).unwrap();
    let mu_tf = tf_chemical_potential(gamma).unwrap();
    let radius = tf_radius(gamma).unwrap();

    let res = gpe_residual(&p, mu_tf, gamma);
    assert!(res > 1e-2, "residual {res} should be far above 1e-8");

    let u = p.values();
    let dr = grid.dr();
    let mut worst = (0usize, 0.0f64);
    for j in 1..grid.n() - 1 {
        let r = grid.r(j);
        let lap = (u[j + 1] - 2.0 * u[j] + u[j - 1]) / (dr * dr);
        let w = 0.5 * r * r + gamma * (u[j] / r).powi(2);
        let defect = (-0.5 * lap + (w - mu_tf) * u[j]).abs();
        if defect > worst.1 {
            worst = (j, defect);
        }
    }
    let r_worst = grid.r(worst.0);
    assert!(
        (r_worst - radius).abs() <= 0.2,
        "max defect sits at r = {r_worst}, expected near the edge {radius}"
    );
}

#[test]
fn virial_identity_holds_for_converged_states() {
    for gamma in [0.1, 1.0, 10.0] {
        let grid = RadialGrid::new(2048, default_r_max(gamma)).unwrap();
        let state = solve_ground_state(gamma, grid, &SolverConfig::default()).unwrap();
        let e = state.energy;
        let virial = 2.0 * e.kinetic - 2.0 * e.trap + 3.0 * e.interaction;
        assert!(
            virial.abs() <= 1e-4 * state.mu,
            "virial defect {virial} at gamma = {gamma} (mu = {})",
            state.mu
        );
    }
}

#[test]
fn reported_diagnostics_are_self_consistent() {
    let grid = RadialGrid::new(2048, 8.0).unwrap();
    let state = solve_ground_state(5.0, grid, &SolverConfig::default()).unwrap();
    let e = state.energy;
    assert_eq!(state.mu, e.kinetic + e.trap + 2.0 * e.interaction);
    let recomputed_mu = chemical_potential(&state.profile, 5.0);
    assert_eq!(state.mu.to_bits(), recomputed_mu.to_bits());
    let recomputed_res = gpe_residual(&state.profile, state.mu, 5.0);
    assert_eq!(state.residual.to_bits(), recomputed_res.to_bits());
    assert!(state.residual <= 1e-8);
}
