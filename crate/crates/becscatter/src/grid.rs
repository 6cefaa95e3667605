//! Uniform radial mesh, sampled radial profiles, and quadrature.
//!
//! Lengths are in trap units `a_omega = sqrt(hbar / (m omega))` throughout,
//! so a grid is fully described by its node count and outer radius.

use crate::error::{Error, Result};

/// Uniform mesh `r_j = j * dr` on `[0, r_max]` with `dr = r_max / (n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    n: usize,
    r_max: f64,
    dr: f64,
}

impl RadialGrid {
    /// Smallest node count that keeps the finite-difference stencils valid.
    pub const MIN_NODES: usize = 16;

    /// Builds the uniform grid; rejects `n < 16` or a non-positive `r_max`.
    pub fn new(n: usize, r_max: f64) -> Result<Self> {
        if n < Self::MIN_NODES {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least {} nodes, got {n}",
                Self::MIN_NODES
            )));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "r_max must be positive and finite, got {r_max}"
            )));
        }
        Ok(Self {
            n,
            r_max,
            dr: r_max / (n - 1) as f64,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    /// Radius of node `j`.
    pub fn r(&self, j: usize) -> f64 {
        j as f64 * self.dr
    }

    /// All node radii, ascending from 0 to `r_max`.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.r(j)).collect()
    }
}

/// Composite Simpson rule on uniformly spaced samples.
///
/// An odd panel count is handled by a trapezoid on the last panel, so the
/// rule is defined for any sample length; fewer than two samples integrate
/// to zero.
pub fn simpson(values: &[f64], dx: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut vals = values;
    if (n - 1) % 2 == 1 {
        total += 0.5 * dx * (values[n - 2] + values[n - 1]);
        vals = &values[..n - 1];
    }
    let m = vals.len();
    if m >= 3 {
        let mut s = vals[0] + vals[m - 1];
        let mut j = 1;
        while j < m - 1 {
            s += 4.0 * vals[j];
            j += 2;
        }
        j = 2;
        while j < m - 1 {
            s += 2.0 * vals[j];
            j += 2;
        }
        total += s * dx / 3.0;
    }
    total
}

/// Sampled radial function `u(r)` with Dirichlet ends, under the convention
/// that a physical order parameter obeys `integral u^2 dr = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    grid: RadialGrid,
    u: Vec<f64>,
}

impl RadialProfile {
    /// Wraps node values, forcing the boundary values `u(0) = u(r_max) = 0`.
    pub fn from_values(grid: RadialGrid, mut u: Vec<f64>) -> Result<Self> {
        if u.len() != grid.n() {
            return Err(Error::InvalidInput(format!(
                "profile has {} values but the grid has {} nodes",
                u.len(),
                grid.n()
            )));
        }
        u[0] = 0.0;
        let last = u.len() - 1;
        u[last] = 0.0;
        Ok(Self { grid, u })
    }

    /// Samples `f` on the grid nodes; boundary values are forced to zero.
    pub fn from_fn(grid: RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let u = (0..grid.n()).map(|j| f(grid.r(j))).collect();
        Self::from_values(grid, u).expect("sampled vector matches the grid by construction")
    }

    pub fn grid(&self) -> RadialGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    /// `integral u^2 dr` by composite Simpson on the grid.
    pub fn norm_sq(&self) -> f64 {
        let sq: Vec<f64> = self.u.iter().map(|&v| v * v).collect();
        simpson(&sq, self.grid.dr())
    }

    /// Rescales so that `integral u^2 dr = 1`.
    pub fn normalize(&self) -> Result<Self> {
        let nsq = self.norm_sq();
        if !(nsq > 0.0) || !nsq.is_finite() {
            return Err(Error::DegenerateProfile(format!(
                "cannot normalize a profile with integral u^2 dr = {nsq}"
            )));
        }
        let inv = 1.0 / nsq.sqrt();
        let u = self.u.iter().map(|&v| v * inv).collect();
        Ok(Self { grid: self.grid, u })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn grid_spacing_and_endpoints() {
        let g = RadialGrid::new(16, 1.5).unwrap();
        assert_relative_eq!(g.dr(), 0.1, max_relative = 1e-15);
        assert_relative_eq!(g.r(15), 1.5, max_relative = 1e-15);
        assert_eq!(g.r(0), 0.0);

        let g = RadialGrid::new(4096, 16.0).unwrap();
        assert_relative_eq!(g.dr(), 16.0 / 4095.0, max_relative = 1e-15);
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(matches!(
            RadialGrid::new(8, 1.0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            RadialGrid::new(32, 0.0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            RadialGrid::new(32, -2.0),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn simpson_is_exact_for_cubics_with_even_panels() {
        // 101 samples -> 100 panels, pure Simpson; exact for x^3.
        let dx = 0.01;
        let vals: Vec<f64> = (0..101).map(|j| (j as f64 * dx).powi(3)).collect();
        assert_abs_diff_eq!(simpson(&vals, dx), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn simpson_handles_odd_panel_counts() {
        // 100 samples -> 99 panels: Simpson plus one trapezoid panel.
        let n = 100;
        let dx = 1.0 / (n - 1) as f64;
        let vals: Vec<f64> = (0..n).map(|j| (j as f64 * dx).powi(2)).collect();
        let exact = 1.0 / 3.0;
        let err = (simpson(&vals, dx) - exact).abs();
        // trapezoid panel error ~ dx^3 / 6 * max|f''|
        assert!(err < dx.powi(3), "error {err} too large");
    }

    #[test]
    fn simpson_degenerate_lengths() {
        assert_eq!(simpson(&[], 0.1), 0.0);
        assert_eq!(simpson(&[3.0], 0.1), 0.0);
        assert_abs_diff_eq!(simpson(&[1.0, 3.0], 0.5), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn profile_forces_dirichlet_ends() {
        let g = RadialGrid::new(16, 1.5).unwrap();
        let p = RadialProfile::from_fn(g, |r| (-0.5 * r * r).exp());
        assert_eq!(p.values()[0], 0.0);
        assert_eq!(p.values()[15], 0.0);
    }

    #[test]
    fn normalize_restores_unit_norm_and_shape() {
        let g = RadialGrid::new(2048, 8.0).unwrap();
        let p = RadialProfile::from_fn(g, |r| 3.0 * r * (-0.5 * r * r).exp());
        let n = p.normalize().unwrap();
        assert_abs_diff_eq!(n.norm_sq(), 1.0, epsilon = 1e-12);
        // same shape: ratio to the unscaled profile is constant
        let ratio = n.values()[100] / p.values()[100];
        assert_relative_eq!(n.values()[900] / p.values()[900], ratio, max_relative = 1e-12);
    }

    #[test]
    fn normalize_is_idempotent() {
        let g = RadialGrid::new(2048, 8.0).unwrap();
        let p = RadialProfile::from_fn(g, |r| r * (-0.5 * r * r).exp())
            .normalize()
            .unwrap();
        let again = p.normalize().unwrap();
        for (a, b) in p.values().iter().zip(again.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn normalize_rejects_zero_profile() {
        let g = RadialGrid::new(16, 1.0).unwrap();
        let p = RadialProfile::from_values(g, vec![0.0; 16]).unwrap();
        assert!(matches!(p.normalize(), Err(Error::DegenerateProfile(_))));
    }

    proptest! {
        #[test]
        fn normalize_is_scale_invariant(scale in 1e-6f64..1e6) {
            let g = RadialGrid::new(256, 6.0).unwrap();
            let p = RadialProfile::from_fn(g, |r| r * (-r).exp());
            let q = RadialProfile::from_fn(g, |r| scale * r * (-r).exp());
            let pn = p.normalize().unwrap();
            let qn = q.normalize().unwrap();
            for (a, b) in pn.values().iter().zip(qn.values()) {
                prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
            }
        }
    }
}
