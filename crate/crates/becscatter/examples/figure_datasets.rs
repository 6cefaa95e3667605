//! Generate the four standard dataset files at sketch resolution.
//!
//! ```bash
//! cargo run --release --example figure_datasets
//! ```
//!
//! Drives the sweep pipeline end to end with a reduced grid and a short
//! interaction ladder, writing CSV files under `datasets-example/`:
//! density profiles, a cross-section matrix over probe momenta, scaled
//! curves collapsing onto the universal one, and high-q differential
//! tails. The `becscatter` binary produces the full-resolution versions
//! of the same files.

use std::path::Path;

use becscatter::sweep::{run_figure1, run_figure2, run_figure3, run_figure4, KGrid, SweepConfig};
use becscatter::Result;

fn main() -> Result<()> {
    let mut config = SweepConfig::default();
    config.gammas = vec![1.0, 100.0];
    config.ks = vec![0.2, 1.0, 5.0];
    config.grid_n = 1024;
    config.n_q = 801;
    config.k_grid = KGrid {
        k_min: 0.05,
        k_max: 20.0,
        n_k: 60,
    };
    config.validate()?;

    let dir = Path::new("datasets-example");
    for (label, dataset) in [
        ("density profiles", run_figure1(&config)?),
        ("cross sections at fixed k", run_figure2(&config)?),
        ("scaled curves", run_figure3(&config)?),
        ("differential tails", run_figure4(&config)?),
    ] {
        let path = becscatter::sweep::write_dataset(&dataset, dir, config.format)?;
        println!("{label}: {}", path.display());
    }
    Ok(())
}
