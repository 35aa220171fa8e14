//! Doublon production after a hopping quench from the Neel state.

use hubcorr::fermi::{quench_average_fermi, quench_correlators_fermi};
use hubcorr::lattice::LatticeSpec;

fn main() -> hubcorr::Result<()> {
    let spec = LatticeSpec::cubic(2, 32, 0.1, 1.0)?;
    let grid = spec.momentum_grid()?;
    for t in [0.0, 1.0, 2.0, 5.0, 10.0] {
        println!("t = {t:>4}: double occupancy {:.6}", quench_correlators_fermi(&spec, &grid, t)?.double_occupancy());
    }
    println!("long-time average {:.6}", quench_average_fermi(&spec, &grid)?.double_occupancy());
    Ok(())
}
