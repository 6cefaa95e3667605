//! Curve diagnostics: power-law and exponential fits over a window, plus
//! oscillation-period extraction from strict local minima.

use crate::born::CrossSectionCurve;
use crate::error::{Error, Result};

/// Least-squares `y = prefactor * x^exponent` over a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    /// Root-mean-square of the log-space residuals.
    pub rms: f64,
}

/// Least-squares `y = prefactor * exp(rate * x)` over a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub rate: f64,
    pub prefactor: f64,
    /// Root-mean-square of the log-space residuals.
    pub rms: f64,
}

const MIN_FIT_POINTS: usize = 8;

fn window_indices(xs: &[f64], window: (f64, f64)) -> Result<Vec<usize>> {
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "fit window must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let idx: Vec<usize> = xs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x >= lo && x <= hi)
        .map(|(i, _)| i)
        .collect();
    if idx.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData(format!(
            "fit window [{lo}, {hi}] holds {} samples, need at least {MIN_FIT_POINTS}",
            idx.len()
        )));
    }
    Ok(idx)
}

/// Straight-line least squares with centered sums; returns
/// `(slope, intercept, rms residual)`.
fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ss += r * r;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Fits `values = prefactor * abscissa^exponent` to the curve samples with
/// abscissa inside `window`, by least squares in log-log space.
pub fn fit_power_law(curve: &CrossSectionCurve, window: (f64, f64)) -> Result<PowerLawFit> {
    let idx = window_indices(curve.abscissa(), window)?;
    let mut lx = Vec::with_capacity(idx.len());
    let mut ly = Vec::with_capacity(idx.len());
    for &i in &idx {
        let x = curve.abscissa()[i];
        let y = curve.values()[i];
        if !(x > 0.0) || !(y > 0.0) {
            return Err(Error::InvalidInput(format!(
                "power-law fits need positive samples, got ({x}, {y})"
            )));
        }
        lx.push(x.ln());
        ly.push(y.ln());
    }
    let (slope, intercept, rms) = line_fit(&lx, &ly);
    Ok(PowerLawFit {
        exponent: slope,
        prefactor: intercept.exp(),
        rms,
    })
}

/// Fits `values = prefactor * exp(rate * abscissa)` to the curve samples
/// with abscissa inside `window`, by least squares in semilog space.
pub fn fit_log_linear(curve: &CrossSectionCurve, window: (f64, f64)) -> Result<LogLinearFit> {
    let idx = window_indices(curve.abscissa(), window)?;
    let mut xs = Vec::with_capacity(idx.len());
    let mut ly = Vec::with_capacity(idx.len());
    for &i in &idx {
        let x = curve.abscissa()[i];
        let y = curve.values()[i];
        if !(y > 0.0) {
            return Err(Error::InvalidInput(format!(
                "log-linear fits need positive values, got {y} at {x}"
            )));
        }
        xs.push(x);
        ly.push(y.ln());
    }
    let (slope, intercept, rms) = line_fit(&xs, &ly);
    Ok(LogLinearFit {
        rate: slope,
        prefactor: intercept.exp(),
        rms,
    })
}

/// Indices of strict interior local maxima (`y[i] > y[i-1]` and
/// `y[i] > y[i+1]`).
pub fn local_maxima(ys: &[f64]) -> Vec<usize> {
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] > ys[i - 1] && ys[i] > ys[i + 1])
        .collect()
}

/// Indices of strict interior local minima.
pub fn local_minima(ys: &[f64]) -> Vec<usize> {
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] < ys[i - 1] && ys[i] < ys[i + 1])
        .collect()
}

/// Vertex abscissa of the parabola through three samples; refines a
/// grid-resolution extremum to sub-grid accuracy.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let a = (d2 - d1) / (x[2] - x[0]);
    if a == 0.0 {
        x[1]
    } else {
        0.5 * (x[0] + x[1] - d1 / a)
    }
}

/// Mean spacing of the curve's local minima inside `window`, each minimum
/// refined by a three-point parabolic vertex. Needs at least four minima
/// for a stable mean.
pub fn detect_oscillation_period(curve: &CrossSectionCurve, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "detection window must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let xs = curve.abscissa();
    let ys = curve.values();
    let mut positions = Vec::new();
    for i in local_minima(ys) {
        if xs[i] >= lo && xs[i] <= hi {
            positions.push(parabola_vertex(
                [xs[i - 1], xs[i], xs[i + 1]],
                [ys[i - 1], ys[i], ys[i + 1]],
            ));
        }
    }
    if positions.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "found {} minima in [{lo}, {hi}], need at least 4 to estimate a period",
            positions.len()
        )));
    }
    let count = positions.len();
    Ok((positions[count - 1] - positions[0]) / (count - 1) as f64)
}
