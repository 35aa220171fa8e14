//! Sudden hopping quench from the Mott state: the closed form against
//! direct integration of the mode equations.

use hubcorr::bose_z1::{evolve_z1, quench_correlators, BoseCorrelators, EvolveOptions};
use hubcorr::lattice::{along_x, LatticeSpec};

fn main() -> hubcorr::Result<()> {
    let spec = LatticeSpec::chain(64, 0.1, 1.0)?;
    let grid = spec.momentum_grid()?;
    let (ode, drift) = evolve_z1(&BoseCorrelators::mott(&spec, &grid), |_| 0.1, 5.0, &EvolveOptions::default())?;
    let exact = quench_correlators(&spec, &grid, 5.0);
    println!("invariant drift {drift:.2e}");
    for s in 1..=4 {
        let a = exact.real_space(&along_x(s)).obdm;
        let b = ode.real_space(&along_x(s)).obdm;
        println!("s = {s}: closed form {a:.8}, integrated {b:.8}");
    }
    Ok(())
}
