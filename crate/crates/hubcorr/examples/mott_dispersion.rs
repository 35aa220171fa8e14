//! Mode frequencies of the Mott state and the critical hopping rate.

use hubcorr::bose_z1::{ground_correlators, j_critical, omega_bose};
use hubcorr::lattice::LatticeSpec;

fn main() -> hubcorr::Result<()> {
    let u = 1.0;
    let jc = j_critical(u);
    println!("critical hopping J/U = {jc:.7} (omega at k = 0: {:.2e})", omega_bose(jc, u, 1.0).omega().norm());
    for j in [0.05, 0.1, 0.15] {
        let spec = LatticeSpec::chain(64, j, u)?;
        let corr = ground_correlators(&spec, &spec.momentum_grid()?)?;
        let gap = omega_bose(j, u, 1.0).omega().re;
        println!("J/U = {j:.2}: gap {gap:.4}, depletion {:.5}", corr.depletion());
    }
    Ok(())
}
