//! Sudden quench from the unit-filling Fock state.
//!
//! The state `|1, 1, …, 1⟩` is translation invariant, so its evolution
//! stays in the `K = 0` sector. With the sector eigenpairs `(E_Ω, C_Ω)`
//! and overlaps `c_Ω = ⟨Ω|ψ(0)⟩` the state at time `t` is
//! `Σ_Ω c_Ω e^{−iE_Ω t} |Ω⟩`. Its infinite-time average is the diagonal
//! ensemble: for every group `g` of degenerate levels the projected state
//! `Σ_{Ω∈g} c_Ω |Ω⟩` contributes its own expectation values, so coherences
//! between degenerate levels, which never dephase, are kept.

use num_complex::Complex64;

use super::observables::{SectorObservables, StateObservables};
use super::spectrum::sector_eigen;
use super::EdModel;
use crate::error::{Error, Result};

/// Default tolerance for grouping degenerate levels.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Spectral data of a quench.
#[derive(Debug, Clone)]
pub struct Quench {
    energies: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    overlaps: Vec<f64>,
    table: SectorObservables<Complex64>,
}

/// Prepares the quench of `model` from the uniform unit-filling state.
pub fn quench_from_uniform(model: &EdModel) -> Result<Quench> {
    let uniform = model
        .basis()
        .uniform_state()
        .ok_or_else(|| Error::config("N", "the uniform initial state needs integer filling"))?;
    let sector = model.sector(0)?;
    let orbits = model.orbits()?;
    let fock = model.basis().index_unchecked(&uniform);
    let (orbit, _) = orbits.locate(fock);
    let pos = sector
        .position(orbit)
        .ok_or_else(|| Error::numeric("quench", "uniform state missing from K = 0"))?;
    let e = sector_eigen::<f64>(model, &sector, true)?;
    let overlaps = e.vectors.iter().map(|v| v[pos]).collect();
    Ok(Quench {
        energies: e.values,
        vectors: e.vectors,
        overlaps,
        table: SectorObservables::for_sector(model, &sector)?,
    })
}

impl Quench {
    /// Sector eigenvalues.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Overlaps `c_Ω` with the initial state.
    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }

    /// Conserved mean energy `Σ |c_Ω|² E_Ω`.
    pub fn energy(&self) -> f64 {
        self.overlaps.iter().zip(&self.energies).map(|(c, e)| c * c * e).sum()
    }

    /// Sector coefficients of the state at time `t`.
    pub fn state_at(&self, t: f64) -> Vec<Complex64> {
        let d = self.energies.len();
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for ((v, &c), &e) in self.vectors.iter().zip(&self.overlaps).zip(&self.energies) {
            if c == 0.0 {
                continue;
            }
            let a = Complex64::from_polar(c, -e * t);
            for (o, &x) in out.iter_mut().zip(v) {
                *o += a * x;
            }
        }
        out
    }

    /// Observables at time `t`.
    pub fn observables_at(&self, t: f64) -> StateObservables {
        self.table.evaluate(&self.state_at(t))
    }

    /// Infinite-time average, grouping levels closer than `tolerance`.
    pub fn diagonal_ensemble(&self, tolerance: f64) -> StateObservables {
        let d = self.energies.len();
        let mut out = StateObservables::zeros(self.table.particles(), self.table.separations());
        let mut start = 0;
        while start < d {
            let mut end = start + 1;
            while end < d && self.energies[end] - self.energies[end - 1] <= tolerance {
                end += 1;
            }
            let mut projected = vec![Complex64::new(0.0, 0.0); d];
            let mut weight = 0.0;
            for o in start..end {
                let c = self.overlaps[o];
                weight += c * c;
                for (p, &x) in projected.iter_mut().zip(&self.vectors[o]) {
                    *p += c * x;
                }
            }
            if weight > 0.0 {
                // evaluate() expects a normalised state; rescale afterwards
                let s = 1.0 / weight.sqrt();
                for p in &mut projected {
                    *p *= s;
                }
                out.accumulate(&self.table.evaluate(&projected), weight, false);
            }
            start = end;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSpec;
    use approx::assert_abs_diff_eq;

    fn quench(l: usize, j: f64) -> Quench {
        let m = EdModel::unit_filling(&LatticeSpec::chain(l, j, 1.0).unwrap()).unwrap();
        quench_from_uniform(&m).unwrap()
    }

    #[test]
    fn initial_state_is_recovered() {
        let q = quench(6, 0.1);
        let o = q.observables_at(0.0);
        assert_abs_diff_eq!(o.occupation[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(o.obdm[1].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q.energy(), 0.0, epsilon = 1e-12);
        let norm: f64 = q.overlaps().iter().map(|c| c * c).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_ensemble_matches_long_time_average() {
        // independent oracle: trapezoidal time average of p(n) and OBDM(1)
        // over t U ∈ [0, 10⁴]
        let q = quench(4, 0.2);
        let de = q.diagonal_ensemble(DEGENERACY_TOLERANCE);
        let (t_end, steps) = (1.0e4, 200_000);
        let h = t_end / steps as f64;
        let mut avg = StateObservables::zeros(4, 4);
        for i in 0..=steps {
            let w = if i == 0 || i == steps { 0.5 * h / t_end } else { h / t_end };
            avg.accumulate(&q.observables_at(i as f64 * h), w, false);
        }
        for n in 0..=2 {
            assert!((avg.occupation[n] - de.occupation[n]).abs() < 1e-3, "p({n})");
        }
        assert!((avg.obdm[1].re - de.obdm[1].re).abs() < 1e-3);
    }

    #[test]
    fn degenerate_coherences_are_kept() {
        // at J = 0 the initial state is an eigenstate and nothing evolves
        let q = quench(5, 0.0);
        let de = q.diagonal_ensemble(DEGENERACY_TOLERANCE);
        assert_abs_diff_eq!(de.occupation[1], 1.0, epsilon = 1e-12);
        // a huge tolerance merges every level into one group: the result
        // is then the initial state itself
        let q = quench(5, 0.1);
        let all = q.diagonal_ensemble(1e9);
        assert_abs_diff_eq!(all.occupation[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn doublons_and_holons_balance_along_the_evolution() {
        // unit filling forces p(0) − p(2) = Σ_{n≥3} (n − 1) p(n), and
        // triple occupation stays rare deep in the Mott regime
        let q = quench(7, 0.1);
        for t in [0.5, 2.0, 7.0] {
            let o = q.observables_at(t);
            let excess: f64 = o.occupation.iter().enumerate().skip(3).map(|(n, p)| (n as f64 - 1.0) * p).sum();
            assert_abs_diff_eq!(o.occupation[0] - o.occupation[2], excess, epsilon = 1e-12);
            assert!(excess < 0.05 * o.occupation[0]);
        }
    }
}
