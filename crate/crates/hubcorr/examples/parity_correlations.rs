//! Number and parity correlations of neighbouring sites against hopping.

use hubcorr::bose_z1::ground_correlators;
use hubcorr::bose_z2::{pair_correlations, parity_series};
use hubcorr::lattice::{along_x, LatticeSpec, MomentumGrid};

fn main() -> hubcorr::Result<()> {
    let grid = MomentumGrid::dense(1, 512);
    for j in [0.001, 0.01, 0.05, 0.1] {
        let spec = LatticeSpec::chain(512, j, 1.0)?;
        let r = pair_correlations(&ground_correlators(&spec, &grid)?, &along_x(1))?;
        println!(
            "J/U = {j:<5}: F_n = {:+.3e}, F_parity = {:.3e}, series {:.3e}",
            r.f_n,
            r.f_parity,
            parity_series(1, 2.0, j)
        );
    }
    Ok(())
}
