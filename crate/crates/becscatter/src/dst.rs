//! Discrete sine transform (DST-I), realized through a complex FFT.
//!
//! The DST-I diagonalizes the second derivative under homogeneous Dirichlet
//! boundaries, which is exactly the setting of the radial problem: interior
//! samples between two pinned zeros.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Unnormalized DST-I over a fixed number of interior samples.
///
/// With `len` interior points the transform is
/// `X_m = 2 * sum_j x_j * sin(pi (j+1)(m+1) / (len+1))`;
/// applying it twice multiplies the input by `2 * (len + 1)`.
///
/// The FFT workspace is owned and reused across calls; relaxation loops
/// invoke the transform tens of thousands of times, and buffers of this
/// size allocated per call would otherwise dominate the step cost.
#[derive(Clone)]
pub struct SineTransform {
    interior: usize,
    fft_len: usize,
    fft: Arc<dyn Fft<f64>>,
    work: RefCell<Workspace>,
}

#[derive(Clone)]
struct Workspace {
    buf: Vec<Complex<f64>>,
    scratch: Vec<Complex<f64>>,
}

impl SineTransform {
    pub fn new(interior: usize) -> Self {
        assert!(interior >= 1, "transform needs at least one interior point");
        let fft_len = 2 * (interior + 1);
        let fft = FftPlanner::new().plan_fft_forward(fft_len);
        let work = RefCell::new(Workspace {
            buf: vec![Complex::new(0.0, 0.0); fft_len],
            scratch: vec![Complex::new(0.0, 0.0); fft.get_inplace_scratch_len()],
        });
        Self {
            interior,
            fft_len,
            fft,
            work,
        }
    }

    pub fn interior_len(&self) -> usize {
        self.interior
    }

    /// Factor picked up by a forward-forward roundtrip: `2 * (len + 1)`.
    pub fn roundtrip_scale(&self) -> f64 {
        2.0 * (self.interior as f64 + 1.0)
    }

    /// Applies the transform; `x.len()` must equal `interior_len()`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.interior, "input length mismatch");
        // Odd extension of x onto a ring of length 2(len+1); the imaginary
        // part of the FFT then carries the sine coefficients.
        let mut work = self.work.borrow_mut();
        let Workspace { buf, scratch } = &mut *work;
        buf.fill(Complex::new(0.0, 0.0));
        for (j, &v) in x.iter().enumerate() {
            buf[j + 1].re = v;
            buf[self.fft_len - 1 - j].re = -v;
        }
        self.fft.process_with_scratch(buf, scratch);
        (1..=self.interior).map(|m| -buf[m].im).collect()
    }
}
