//! Particle-hole pair creation by a Sauter tilt pulse: mode integration
//! against the exact hypergeometric result.

use hubcorr::bose_tilt::{effective_params, integrate_ph_modes, sauter_beta_exact, PulseProfile, TiltOptions};
use hubcorr::lattice::LatticeSpec;

fn main() -> hubcorr::Result<()> {
    let spec = LatticeSpec::chain(64, 0.1, 1.0)?;
    let params = effective_params(&spec)?;
    let opts = TiltOptions::adiabatic(&spec)?;
    for (e0, tau) in [(0.02, 1.0), (0.05, 2.0), (0.1, 4.0)] {
        let pulse = PulseProfile::sauter(e0, tau);
        let ode = integrate_ph_modes(&spec, &pulse, &[0.0; 3], pulse.natural_span()?, &opts)?.beta_sq();
        let exact = sauter_beta_exact(0.0, 0.0, e0, tau, &params);
        println!("E0 = {e0}, tau = {tau}: |beta|^2 integrated {ode:.4e}, exact {exact:.4e}");
    }
    Ok(())
}
