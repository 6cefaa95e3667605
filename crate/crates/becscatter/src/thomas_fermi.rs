//! Closed-form Thomas-Fermi quantities for a harmonically trapped condensate.
//!
//! Dropping the kinetic term from the stationary mean-field equation leaves
//! an inverted-parabola density with a hard edge at radius `R`. In trap
//! units everything is a closed form in the interaction parameter `gamma`:
//! `mu = (15 gamma)^{2/5} / 2`, `R = (15 gamma)^{1/5}`, and `mu = R^2 / 2`.

use crate::error::{Error, Result};
use crate::grid::{RadialGrid, RadialProfile};

/// Interaction strength together with its Thomas-Fermi chemical potential
/// and cutoff radius; `mu_tf = radius^2 / 2` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfState {
    pub gamma: f64,
    pub mu_tf: f64,
    pub radius: f64,
}

impl TfState {
    pub fn new(gamma: f64) -> Result<Self> {
        Ok(Self {
            gamma,
            mu_tf: tf_chemical_potential(gamma)?,
            radius: tf_radius(gamma)?,
        })
    }
}

fn require_repulsive(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::UnsupportedRegime(format!(
            "Thomas-Fermi closed forms need gamma > 0, got {gamma}"
        )));
    }
    Ok(())
}

/// Chemical potential `(15 gamma)^{2/5} / 2` in units of `hbar omega`.
pub fn tf_chemical_potential(gamma: f64) -> Result<f64> {
    require_repulsive(gamma)?;
    Ok(0.5 * (15.0 * gamma).powf(0.4))
}

/// Condensate radius `(15 gamma)^{1/5}` in units of `a_omega`.
pub fn tf_radius(gamma: f64) -> Result<f64> {
    require_repulsive(gamma)?;
    Ok((15.0 * gamma).powf(0.2))
}

/// Cutoff radius `sqrt(2 mu)` inferred from a chemical potential, so that
/// numerical ground states get a radius on the same footing as `tf_radius`.
pub fn cutoff_radius_from_mu(mu: f64) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidInput(format!(
            "cutoff radius needs mu > 0, got {mu}"
        )));
    }
    Ok((2.0 * mu).sqrt())
}

/// Hard-edged profile `u(r) = r sqrt(mu_tf / gamma (1 - (r/R)^2))` for
/// `r < R`, zero beyond.
///
/// The returned samples are not re-normalized: the continuum function has
/// unit norm and the discrete Simpson norm deviates only by quadrature
/// error at the edge. Callers wanting `integral u^2 dr = 1` on the grid can
/// call [`RadialProfile::normalize`].
pub fn tf_profile(gamma: f64, grid: RadialGrid) -> Result<RadialProfile> {
    let state = TfState::new(gamma)?;
    if grid.r_max() < state.radius {
        return Err(Error::TruncatedSupport {
            required: state.radius,
            available: grid.r_max(),
        });
    }
    let amp = state.mu_tf / gamma;
    Ok(RadialProfile::from_fn(grid, |r| {
        let x = 1.0 - (r / state.radius).powi(2);
        if x > 0.0 {
            r * (amp * x).sqrt()
        } else {
            0.0
        }
    }))
}

/// Form factor of the Thomas-Fermi density as a function of `t = q R`:
/// `s_tf(t) = 15 ((3 - t^2) sin t - 3 t cos t) / t^5`.
///
/// Below `t = 0.01` the closed form cancels catastrophically, so a short
/// even series takes over; the switch is seamless at the stated accuracy.
pub fn tf_form_factor(t: f64) -> Result<f64> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::InvalidInput(format!(
            "form factor argument must be nonnegative, got {t}"
        )));
    }
    Ok(tf_form_factor_unchecked(t))
}

pub(crate) fn tf_form_factor_unchecked(t: f64) -> f64 {
    if t <= 1e-2 {
        let t2 = t * t;
        1.0 - t2 / 14.0 + t2 * t2 / 504.0
    } else {
        15.0 * ((3.0 - t * t) * t.sin() - 3.0 * t * t.cos()) / t.powi(5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::simpson;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn chemical_potential_closed_form() {
        assert_abs_diff_eq!(tf_chemical_potential(1.0 / 15.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(tf_chemical_potential(10.0).unwrap(), 3.7103, epsilon = 5e-5);
        assert_abs_diff_eq!(tf_chemical_potential(1000.0).unwrap(), 23.41, epsilon = 5e-3);
    }

    #[test]
    fn radius_closed_form() {
        assert_abs_diff_eq!(tf_radius(1.0 / 15.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(tf_radius(1000.0).unwrap(), 6.8426, epsilon = 1e-4);
    }

    #[test]
    fn rejects_nonpositive_gamma() {
        assert!(matches!(
            tf_chemical_potential(0.0),
            Err(Error::UnsupportedRegime(_))
        ));
        assert!(matches!(tf_radius(-1.0), Err(Error::UnsupportedRegime(_))));
    }

    #[test]
    fn cutoff_from_mu_inverts_the_radius_relation() {
        assert_abs_diff_eq!(cutoff_radius_from_mu(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cutoff_radius_from_mu(2.0).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cutoff_radius_from_mu(23.41).unwrap(), 6.8425, epsilon = 2e-4);
        assert!(matches!(
            cutoff_radius_from_mu(0.0),
            Err(Error::InvalidInput(_))
        ));
    }

    proptest! {
        #[test]
        fn mu_equals_half_radius_squared(log_gamma in -3.0f64..6.0) {
            let gamma = 10f64.powf(log_gamma);
            let mu = tf_chemical_potential(gamma).unwrap();
            let r = tf_radius(gamma).unwrap();
            prop_assert!((mu - 0.5 * r * r).abs() <= 1e-14 * mu);
        }

        #[test]
        fn mu_and_radius_increase_with_gamma(log_gamma in -3.0f64..5.9) {
            let gamma = 10f64.powf(log_gamma);
            prop_assert!(
                tf_chemical_potential(1.1 * gamma).unwrap() > tf_chemical_potential(gamma).unwrap()
            );
            prop_assert!(tf_radius(1.1 * gamma).unwrap() > tf_radius(gamma).unwrap());
        }
    }

    #[test]
    fn profile_edge_and_central_density() {
        let gamma = 1000.0;
        let state = TfState::new(gamma).unwrap();
        let grid = RadialGrid::new(4096, 8.0).unwrap();
        let p = tf_profile(gamma, grid).unwrap();
        assert_eq!(p.values()[0], 0.0);
        // density u^2 / (4 pi r^2) tends to mu_tf / (4 pi gamma) at the center
        let j = 1;
        let r = grid.r(j);
        let density = p.values()[j].powi(2) / (4.0 * std::f64::consts::PI * r * r);
        let central = state.mu_tf / (4.0 * std::f64::consts::PI * gamma);
        assert_relative_eq!(density, central, max_relative = 1e-6);
        // hard edge: zero at and beyond R
        let edge = (state.radius / grid.dr()).ceil() as usize;
        assert!(p.values()[edge..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn profile_norm_is_close_to_one() {
        let grid = RadialGrid::new(4096, 8.0).unwrap();
        let p = tf_profile(100.0, grid).unwrap();
        assert!((p.norm_sq() - 1.0).abs() <= 1e-3);
    }

    #[test]
    fn profile_requires_the_grid_to_cover_the_support() {
        let grid = RadialGrid::new(512, 4.0).unwrap();
        assert!(matches!(
            tf_profile(1000.0, grid),
            Err(Error::TruncatedSupport { .. })
        ));
    }

    #[test]
    fn form_factor_limits_and_domain() {
        assert_abs_diff_eq!(tf_form_factor(0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(matches!(tf_form_factor(-0.5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn form_factor_series_matches_closed_form_at_the_switch() {
        // The closed form cancels five leading orders near t = 0, leaving
        // roundoff noise of order 1e-7 at t = 0.01; the branches must
        // agree to that level across the switch.
        let closed = 15.0
            * ((3.0 - 0.010001f64.powi(2)) * 0.010001f64.sin() - 3.0 * 0.010001 * 0.010001f64.cos())
            / 0.010001f64.powi(5);
        let series = tf_form_factor(0.009999).unwrap();
        assert_abs_diff_eq!(closed, series, epsilon = 2e-7);
    }

    #[test]
    fn form_factor_first_zero_found_by_bisection() {
        // bracketing bisection oracle for (3 - t^2) sin t - 3 t cos t = 0
        let f = |t: f64| (3.0 - t * t) * t.sin() - 3.0 * t * t.cos();
        let (mut lo, mut hi) = (5.0f64, 6.0f64);
        assert!(f(lo) * f(hi) < 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let zero = 0.5 * (lo + hi);
        assert_abs_diff_eq!(zero, 5.7635, epsilon = 1e-3);
        assert_abs_diff_eq!(tf_form_factor(zero).unwrap(), 0.0, epsilon = 1e-4);
    }

    #[test]
    fn form_factor_large_t_asymptote() {
        // leading behavior -15 sin(t) / t^3; next order -45 cos(t) / t^4
        let t = 100.0;
        let s = tf_form_factor(t).unwrap();
        let leading = -15.0 * t.sin() / t.powi(3);
        assert!((s / leading - 1.0).abs() < 0.06, "s = {s}, leading = {leading}");
        let corrected = leading - 45.0 * t.cos() / t.powi(4);
        assert!((s / corrected - 1.0).abs() < 2e-3);
    }

    #[test]
    fn form_factor_bounded_by_one() {
        for j in 0..20_000 {
            let t = j as f64 * 0.01;
            let s = tf_form_factor(t).unwrap();
            assert!(s.abs() <= 1.0, "|s({t})| = {} > 1", s.abs());
            if t > 0.1 {
                assert!(s.abs() < 1.0);
            }
        }
    }

    #[test]
    fn form_factor_zero_spacing_tends_to_pi() {
        // collect sign changes of s_tf over a large-t window
        let mut zeros = Vec::new();
        let mut prev = tf_form_factor(50.0).unwrap();
        let dt = 1e-3;
        let mut t = 50.0 + dt;
        while t < 80.0 {
            let s = tf_form_factor(t).unwrap();
            if prev.signum() != s.signum() {
                zeros.push(t - 0.5 * dt);
            }
            prev = s;
            t += dt;
        }
        assert!(zeros.len() >= 8);
        // the subleading cos term shifts each zero by about 3/t, so the
        // spacing approaches pi from above as 3 pi / t^2
        for pair in zeros.windows(2) {
            let spacing = pair[1] - pair[0];
            assert!(spacing >= std::f64::consts::PI - 2e-3, "spacing {spacing}");
            assert!(spacing <= std::f64::consts::PI + 3.2 * std::f64::consts::PI / (pair[0] * pair[0]) + 2e-3, "spacing {spacing} at t = {}", pair[0]);
        }
    }

    #[test]
    fn closed_form_agrees_with_quadrature_of_the_profile() {
        // independent oracle: spherical Fourier transform of the sampled
        // hard-edge profile, integral j0(q r) u^2 dr, against the closed form
        let gamma = 1000.0;
        let state = TfState::new(gamma).unwrap();
        let grid = RadialGrid::new(32_769, 8.0).unwrap();
        let p = tf_profile(gamma, grid).unwrap();
        let u = p.values();
        let dr = grid.dr();
        for t in [0.0, 0.5, 1.0, 5.0, 10.0, 25.0, 50.0] {
            let q = t / state.radius;
            let integrand: Vec<f64> = (0..grid.n())
                .map(|j| {
                    let x = q * grid.r(j);
                    let j0 = if x.abs() < 1e-3 {
                        1.0 - x * x / 6.0
                    } else {
                        x.sin() / x
                    };
                    j0 * u[j] * u[j]
                })
                .collect();
            let by_quadrature = simpson(&integrand, dr);
            let closed = tf_form_factor(t).unwrap();
            assert_abs_diff_eq!(by_quadrature, closed, epsilon = 1e-6);
        }
    }
}
