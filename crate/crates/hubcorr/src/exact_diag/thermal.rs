//! Canonical ensembles over a full spectrum.
//!
//! `⟨O⟩_T = Σ e^{−E/T} ⟨E|O|E⟩ / Σ e^{−E/T}`, with every exponent shifted by
//! the ground energy so that no weight overflows at low temperature.

use super::observables::StateObservables;
use super::spectrum::SpectralDecomposition;
use crate::error::{Error, Result};

/// Canonical averages at one temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    pub temperature: f64,
    /// Mean energy.
    pub energy: f64,
    pub observables: StateObservables,
}

/// Relative tolerance defining the degenerate ground multiplet at `T = 0`.
const GROUND_TOLERANCE: f64 = 1e-9;

/// Canonical average at temperature `t`; `t = 0` averages the ground
/// multiplet and `t = ∞` all states with equal weight.
pub fn thermal_average(spectrum: &SpectralDecomposition, t: f64) -> Result<ThermalState> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::config("T", format!("must be >= 0, got {t}")));
    }
    for b in &spectrum.blocks {
        if b.observables.len() != b.energies.len() {
            return Err(Error::config(
                "spectrum",
                "thermal averages need observables of every eigenstate",
            ));
        }
    }
    let e0 = spectrum.ground_energy();
    let separations = spectrum.blocks[0].observables.first().map_or(0, |o| o.obdm.len());
    let mut acc = StateObservables::zeros(spectrum.particles, separations);
    let mut z = 0.0;
    let mut energy = 0.0;
    for b in &spectrum.blocks {
        let mirror = b.multiplicity == 2;
        for (e, o) in b.energies.iter().zip(&b.observables) {
            let w = if t == 0.0 {
                if (e - e0).abs() <= GROUND_TOLERANCE * e0.abs().max(1.0) {
                    1.0
                } else {
                    0.0
                }
            } else if t.is_infinite() {
                1.0
            } else {
                (-(e - e0) / t).exp()
            };
            if w == 0.0 {
                continue;
            }
            let m = b.multiplicity as f64;
            z += m * w;
            energy += m * w * e;
            acc.accumulate(o, w, mirror);
        }
    }
    let mut observables = StateObservables::zeros(spectrum.particles, separations);
    observables.accumulate(&acc, 1.0 / z, false);
    Ok(ThermalState {
        temperature: t,
        energy: energy / z,
        observables,
    })
}

/// Temperature at which the canonical `p(n)` matches `target`, by
/// bisection on `T ∈ [t_min, t_max]`.
pub fn fit_temperature(spectrum: &SpectralDecomposition, n: usize, target: f64, t_min: f64, t_max: f64) -> Result<f64> {
    let f = |t: f64| -> Result<f64> { Ok(thermal_average(spectrum, t)?.observables.occupation[n] - target) };
    let (mut lo, mut hi) = (t_min, t_max);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::numeric(
            "fit_temperature",
            format!("p({n}) = {target} is not bracketed by T ∈ [{t_min}, {t_max}] ({flo:e}, {fhi:e})"),
        ));
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_diag::spectrum::{full_spectrum, ground_state, SpectrumOptions};
    use crate::exact_diag::EdModel;
    use crate::lattice::LatticeSpec;
    use approx::assert_abs_diff_eq;

    fn spectrum(l: usize, j: f64) -> (EdModel, SpectralDecomposition) {
        let m = EdModel::unit_filling(&LatticeSpec::chain(l, j, 1.0).unwrap()).unwrap();
        let s = full_spectrum(
            &m,
            &SpectrumOptions {
                observables: true,
                mirror: true,
                ..SpectrumOptions::default()
            },
        )
        .unwrap();
        (m, s)
    }

    #[test]
    fn zero_temperature_is_the_ground_state() {
        let (m, s) = spectrum(6, 0.1);
        let g = ground_state(&m).unwrap().observables(&m).unwrap();
        let t0 = thermal_average(&s, 0.0).unwrap();
        let small = thermal_average(&s, 1e-3).unwrap();
        for n in 0..=6 {
            assert_abs_diff_eq!(t0.observables.occupation[n], g.occupation[n], epsilon = 1e-9);
            assert_abs_diff_eq!(small.observables.occupation[n], g.occupation[n], epsilon = 1e-9);
        }
        assert_abs_diff_eq!(t0.observables.obdm[1].re, g.obdm[1].re, epsilon = 1e-9);
    }

    #[test]
    fn infinite_temperature_is_the_flat_average() {
        // at J = 0 every Fock state is an eigenstate, so the flat average of
        // p(n) is a combinatorial count over the basis
        let (m, s) = spectrum(5, 0.0);
        let th = thermal_average(&s, f64::INFINITY).unwrap();
        let d = m.basis().dimension() as f64;
        for n in 0..=5 {
            let count: f64 = m
                .basis()
                .states()
                .map(|st| st.iter().filter(|&&x| x as usize == n).count() as f64 / 5.0)
                .sum();
            assert_abs_diff_eq!(th.observables.occupation[n], count / d, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(th.observables.obdm[1].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mirrored_and_explicit_ensembles_agree() {
        let m = EdModel::unit_filling(&LatticeSpec::chain(5, 0.2, 1.0).unwrap()).unwrap();
        let a = full_spectrum(
            &m,
            &SpectrumOptions {
                observables: true,
                mirror: true,
                ..SpectrumOptions::default()
            },
        )
        .unwrap();
        let b = full_spectrum(
            &m,
            &SpectrumOptions {
                observables: true,
                mirror: false,
                ..SpectrumOptions::default()
            },
        )
        .unwrap();
        for t in [0.2, 1.0] {
            let x = thermal_average(&a, t).unwrap();
            let y = thermal_average(&b, t).unwrap();
            assert_abs_diff_eq!(x.energy, y.energy, epsilon = 1e-12);
            for s in 0..5 {
                assert_abs_diff_eq!((x.observables.obdm[s] - y.observables.obdm[s]).norm(), 0.0, epsilon = 1e-12);
                assert_abs_diff_eq!(x.observables.parity_parity[s], y.observables.parity_parity[s], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn temperature_fit_inverts_the_average() {
        let (_, s) = spectrum(5, 0.1);
        let target = thermal_average(&s, 0.37).unwrap().observables.occupation[0];
        let t = fit_temperature(&s, 0, target, 1e-3, 10.0).unwrap();
        assert_abs_diff_eq!(t, 0.37, epsilon = 1e-8);
        assert!(thermal_average(&s, -1.0).is_err());
    }
}
