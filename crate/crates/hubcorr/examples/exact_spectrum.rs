//! Exact spectrum, ground state and lowest-branch fit of a short chain.

use hubcorr::exact_diag::{full_spectrum, ground_state, lowest_band_fit, EdModel, SpectrumOptions};
use hubcorr::lattice::LatticeSpec;

fn main() -> hubcorr::Result<()> {
    let spec = LatticeSpec::chain(7, 0.1, 1.0)?;
    let model = EdModel::unit_filling(&spec)?;
    let spectrum = full_spectrum(&model, &SpectrumOptions::default())?;
    println!("{} levels", spectrum.all_energies().len());
    let g = ground_state(&model)?;
    let obs = g.observables(&model)?;
    println!("ground energy {:.8}, p(0..3) = {:?}", g.energy, &obs.occupation[..3]);
    let fit = lowest_band_fit(&model)?;
    println!("velocity {:.4} (analytic {:.4})", fit.velocity, fit.analytic);
    Ok(())
}
