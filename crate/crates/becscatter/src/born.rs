//! First-Born elastic scattering of a probe atom off a trapped condensate.
//!
//! The condensate density acts as a weak extended scatterer. With the
//! reduced radial profile `u(r)` normalized to `integral u^2 dr = 1`, the
//! form factor is `s(q) = integral j0(q r) u(r)^2 dr`, the scattering
//! amplitude `f(q) = -2 gamma s(q)` (lengths in `a_omega`), the
//! differential cross section `4 gamma^2 s(q)^2`, and the total cross
//! section `sigma(k) = (8 pi gamma^2 / k^2) integral_0^{2k} s(q)^2 q dq`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{simpson, RadialProfile};
use crate::thomas_fermi::{tf_form_factor_unchecked, tf_radius};

/// Spherical Bessel function `j0(x) = sin(x)/x`, with the series
/// `1 - x^2/6` below `|x| = 1e-3` to avoid the 0/0 at the origin.
fn j0(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Where a form-factor table's density came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensitySource {
    /// Quadrature over a numerically relaxed profile.
    NumericalProfile,
    /// Closed-form Thomas-Fermi expression.
    TfAnalytic,
    /// Unit-width Gaussian reference density.
    GaussianAnalytic,
}

/// Form factor sampled on a uniform momentum-transfer grid starting at 0.
///
/// `s(0) = 1` by normalization and `|s| <= 1` everywhere; construction
/// rejects tables that violate either within roundoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFactorTable {
    q_nodes: Vec<f64>,
    s_values: Vec<f64>,
    source: DensitySource,
}

impl FormFactorTable {
    pub fn new(q_nodes: Vec<f64>, s_values: Vec<f64>, source: DensitySource) -> Result<Self> {
        if q_nodes.len() != s_values.len() {
            return Err(Error::InvalidInput(format!(
                "node/value length mismatch: {} vs {}",
                q_nodes.len(),
                s_values.len()
            )));
        }
        if q_nodes.len() < 2 {
            return Err(Error::InvalidInput(
                "a form-factor table needs at least two nodes".into(),
            ));
        }
        if q_nodes[0] != 0.0 {
            return Err(Error::InvalidInput(format!(
                "the momentum grid must start at exactly 0, got {}",
                q_nodes[0]
            )));
        }
        let dq = q_nodes[1] - q_nodes[0];
        if !(dq > 0.0) {
            return Err(Error::InvalidInput("momentum nodes must ascend".into()));
        }
        for w in q_nodes.windows(2) {
            let step = w[1] - w[0];
            if !(step > 0.0) || (step - dq).abs() > 1e-9 * dq {
                return Err(Error::InvalidInput(format!(
                    "momentum nodes must be uniform: step {} vs {}",
                    step, dq
                )));
            }
        }
        if (s_values[0] - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidInput(format!(
                "s(0) must be 1 for a normalized density, got {}",
                s_values[0]
            )));
        }
        for &s in &s_values {
            if !s.is_finite() || s.abs() > 1.0 + 1e-9 {
                return Err(Error::InvalidInput(format!(
                    "form-factor values must be finite with |s| <= 1, got {s}"
                )));
            }
        }
        Ok(Self {
            q_nodes,
            s_values,
            source,
        })
    }

    pub fn q_nodes(&self) -> &[f64] {
        &self.q_nodes
    }

    pub fn s_values(&self) -> &[f64] {
        &self.s_values
    }

    pub fn source(&self) -> DensitySource {
        self.source
    }

    pub fn q_max(&self) -> f64 {
        *self.q_nodes.last().unwrap()
    }

    pub fn dq(&self) -> f64 {
        self.q_nodes[1] - self.q_nodes[0]
    }

    /// Linear interpolation at `q`, rejecting points outside the table.
    pub fn value_at(&self, q: f64) -> Result<f64> {
        if !q.is_finite() || q < 0.0 {
            return Err(Error::InvalidInput(format!(
                "momentum transfer must be finite and nonnegative, got {q}"
            )));
        }
        let q_max = self.q_max();
        if q > q_max * (1.0 + 1e-12) {
            return Err(Error::OutOfRange(format!(
                "q = {q} lies beyond the tabulated maximum {q_max}"
            )));
        }
        let q = q.min(q_max);
        let dq = self.dq();
        let idx = ((q / dq).floor() as usize).min(self.q_nodes.len() - 2);
        let t = (q - self.q_nodes[idx]) / dq;
        Ok(self.s_values[idx] * (1.0 - t) + self.s_values[idx + 1] * t)
    }
}

/// Form factor `s(q) = integral j0(q r) u(r)^2 dr` of a normalized profile.
pub fn form_factor(profile: &RadialProfile, q: f64) -> Result<f64> {
    if !q.is_finite() || q < 0.0 {
        return Err(Error::InvalidInput(format!(
            "momentum transfer must be finite and nonnegative, got {q}"
        )));
    }
    let grid = profile.grid();
    let u = profile.values();
    let integrand: Vec<f64> = (0..grid.n())
        .map(|j| j0(q * grid.r(j)) * u[j] * u[j])
        .collect();
    Ok(simpson(&integrand, grid.dr()))
}

/// Tabulates the numerical form factor on `n_q` uniform nodes over
/// `[0, q_max]`, one quadrature per node, evaluated in parallel.
pub fn form_factor_table(
    profile: &RadialProfile,
    q_max: f64,
    n_q: usize,
) -> Result<FormFactorTable> {
    let q_nodes = uniform_q_nodes(q_max, n_q)?;
    let s_values = q_nodes
        .par_iter()
        .map(|&q| form_factor(profile, q))
        .collect::<Result<Vec<f64>>>()?;
    FormFactorTable::new(q_nodes, s_values, DensitySource::NumericalProfile)
}

/// Closed-form Thomas-Fermi table: `s(q) = s_tf(q R)` with `R` the cutoff
/// radius for `gamma`.
pub fn tf_form_factor_table(gamma: f64, q_max: f64, n_q: usize) -> Result<FormFactorTable> {
    let radius = tf_radius(gamma)?;
    let q_nodes = uniform_q_nodes(q_max, n_q)?;
    let s_values: Vec<f64> = q_nodes
        .iter()
        .map(|&q| tf_form_factor_unchecked(q * radius))
        .collect();
    FormFactorTable::new(q_nodes, s_values, DensitySource::TfAnalytic)
}

/// Reference table for the unit-width Gaussian density, whose form factor
/// is exactly `exp(-q^2/4)`.
pub fn gaussian_form_factor_table(q_max: f64, n_q: usize) -> Result<FormFactorTable> {
    let q_nodes = uniform_q_nodes(q_max, n_q)?;
    let s_values: Vec<f64> = q_nodes.iter().map(|&q| (-0.25 * q * q).exp()).collect();
    FormFactorTable::new(q_nodes, s_values, DensitySource::GaussianAnalytic)
}

fn uniform_q_nodes(q_max: f64, n_q: usize) -> Result<Vec<f64>> {
    if !(q_max > 0.0) || !q_max.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "q_max must be positive and finite, got {q_max}"
        )));
    }
    if n_q < 2 {
        return Err(Error::InvalidConfig(format!(
            "a form-factor table needs at least 2 nodes, got {n_q}"
        )));
    }
    let dq = q_max / (n_q - 1) as f64;
    Ok((0..n_q).map(|i| i as f64 * dq).collect())
}

/// First-Born scattering amplitude `f(q) = -2 gamma s(q)` in `a_omega`.
pub fn born_amplitude(gamma: f64, s: f64) -> f64 {
    -2.0 * gamma * s
}

/// Differential cross section `dsigma/dOmega = 4 gamma^2 s(q)^2` in
/// `a_omega^2` per steradian, interpolated from the table.
pub fn differential_cross_section(gamma: f64, table: &FormFactorTable, q: f64) -> Result<f64> {
    let s = table.value_at(q)?;
    Ok(4.0 * gamma * gamma * s * s)
}

/// Total elastic cross section
/// `sigma(k) = (8 pi gamma^2 / k^2) integral_0^{2k} s(q)^2 q dq`
/// by composite Simpson over the table nodes up to the largest node below
/// `2k`, plus a trapezoid correction for the partial final panel.
pub fn total_cross_section(gamma: f64, table: &FormFactorTable, k: f64) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidInput(format!(
            "incident momentum must be positive and finite, got {k}"
        )));
    }
    let q_upper = 2.0 * k;
    let q_max = table.q_max();
    if q_upper > q_max * (1.0 + 1e-12) {
        return Err(Error::OutOfRange(format!(
            "2k = {q_upper} exceeds the tabulated momentum range {q_max}"
        )));
    }
    let dq = table.dq();
    let s = table.s_values();
    let q = table.q_nodes();
    let m = (((q_upper / dq) + 1e-12).floor() as usize).min(q.len() - 1);
    let g: Vec<f64> = (0..=m).map(|i| s[i] * s[i] * q[i]).collect();
    let mut integral = simpson(&g, dq);
    if q[m] < q_upper {
        let s_end = table.value_at(q_upper)?;
        integral += 0.5 * (q_upper - q[m]) * (g[m] + s_end * s_end * q_upper);
    }
    Ok(8.0 * PI * gamma * gamma / (k * k) * integral)
}

/// Maps one total-cross-section sample onto the scaled axes
/// `(k_tilde, sigma_tilde) = (k * cutoff, sigma / gamma^2)`.
pub fn scaled_point(sigma: f64, gamma: f64, cutoff: f64, k: f64) -> Result<(f64, f64)> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidInput(format!(
            "scaling requires positive finite gamma, got {gamma}"
        )));
    }
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::InvalidInput(format!(
            "scaling requires a positive finite cutoff radius, got {cutoff}"
        )));
    }
    Ok((k * cutoff, sigma / (gamma * gamma)))
}

/// Universal scaled cross section of the Thomas-Fermi density,
/// `sigma_tilde(k_tilde) = (8 pi / k_tilde^2) integral_0^{2 k_tilde}
/// s_tf(t)^2 t dt`, independent of the interaction strength.
pub fn universal_scaled_cross_section(k_tilde: f64) -> Result<f64> {
    if !(k_tilde > 0.0) || !k_tilde.is_finite() {
        return Err(Error::InvalidInput(format!(
            "scaled momentum must be positive and finite, got {k_tilde}"
        )));
    }
    let t_upper = 2.0 * k_tilde;
    // resolve the integrand's pi-spaced oscillations: at least 50 nodes
    // per unit t, floor of 401, forced odd for Simpson
    let n = ((t_upper / 0.02) as usize).max(401) | 1;
    let dt = t_upper / (n - 1) as f64;
    let g: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 * dt;
            let s = tf_form_factor_unchecked(t);
            s * s * t
        })
        .collect();
    Ok(8.0 * PI / (k_tilde * k_tilde) * simpson(&g, dt))
}

/// Total cross section of the Thomas-Fermi density at incident momentum
/// `k`, `sigma = gamma^2 sigma_tilde(k R)`. Bit-identical to scaling the
/// universal curve, so scaled TF data collapse exactly.
pub fn tf_total_cross_section(gamma: f64, k: f64) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidInput(format!(
            "incident momentum must be positive and finite, got {k}"
        )));
    }
    let radius = tf_radius(gamma)?;
    Ok(gamma * gamma * universal_scaled_cross_section(k * radius)?)
}

/// Which density model produced a cross-section curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Numerical,
    ThomasFermi,
}

/// A cross-section (or any positive observable) sampled on an ascending
/// abscissa, carrying its interaction strength and free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSectionCurve {
    abscissa: Vec<f64>,
    values: Vec<f64>,
    gamma: f64,
    method: Method,
    metadata: BTreeMap<String, String>,
}

impl CrossSectionCurve {
    pub fn new(abscissa: Vec<f64>, values: Vec<f64>, gamma: f64, method: Method) -> Result<Self> {
        if abscissa.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "abscissa/value length mismatch: {} vs {}",
                abscissa.len(),
                values.len()
            )));
        }
        if abscissa.len() < 2 {
            return Err(Error::InvalidInput(
                "a curve needs at least two samples".into(),
            ));
        }
        for w in abscissa.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidInput(format!(
                    "abscissa must ascend strictly: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for &v in &values {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "curve values must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(Self {
            abscissa,
            values,
            gamma,
            method,
            metadata: BTreeMap::new(),
        })
    }

    pub fn abscissa(&self) -> &[f64] {
        &self.abscissa
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn push_metadata(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }
}
