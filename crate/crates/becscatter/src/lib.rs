//! Ground states of harmonically trapped Bose-Einstein condensates and
//! the first-Born elastic scattering observables they imprint on a probe
//! atom.
//!
//! The crate works in trap units throughout: lengths in the oscillator
//! length `a_omega = sqrt(hbar / (m omega))`, energies in `hbar omega`.
//! A condensate of `N` atoms with s-wave scattering length `a_s` enters
//! only through the dimensionless interaction strength
//! `gamma = N a_s / a_omega`.
//!
//! The pipeline has three stages, each usable on its own:
//!
//! - [`gpe`] relaxes the reduced radial profile `u(r)` of the mean-field
//!   ground state by imaginary-time split-operator iteration on a
//!   [`grid::RadialGrid`], with [`thomas_fermi`] providing the closed
//!   forms that become exact at strong coupling;
//! - [`born`] turns a profile into form factors, scattering amplitudes,
//!   and differential and total elastic cross sections, including the
//!   universal scaled cross section of the Thomas-Fermi density;
//! - [`sweep`] drives configured parameter sweeps, assembles the four
//!   standard datasets, and [`dataset`] writes them to deterministic CSV
//!   or JSON files; [`analysis`] extracts power-law tails and
//!   diffraction-oscillation periods from the resulting curves.
//!
//! The `examples/` directory demonstrates one capability per file;
//! `becscatter` is a thin command-line front end over [`sweep`].

pub mod analysis;
pub mod born;
pub mod dataset;
pub mod dst;
pub mod error;
pub mod gpe;
pub mod grid;
pub mod sweep;
pub mod thomas_fermi;

pub use error::{Error, Result};
