//! Translation orbits and momentum sectors of a periodic chain.
//!
//! The translation `T` moves every boson one site to the right,
//! `(T n)_μ = n_{μ−1}`. Each orbit of `T` in the Fock basis is represented
//! by its lexicographically smallest member `a` and has a period `R_a`.
//! For a momentum index `K` with `k = 2πK/L` the sector state
//!
//! ```text
//! |a(k)⟩ = (√R_a / L) Σ_{r<L} e^{−ikr} Tʳ |a⟩
//! ```
//!
//! is normalised and satisfies `T|a(k)⟩ = e^{ik}|a(k)⟩`. It is non-zero only
//! when `K R_a ≡ 0 (mod L)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::basis::FockBasis;

/// Marker for orbits that do not belong to a sector.
const ABSENT: u32 = u32::MAX;

/// Decomposition of a periodic-chain Fock basis into translation orbits.
#[derive(Debug, Clone)]
pub struct TranslationOrbits {
    sites: usize,
    /// Fock index of each orbit's representative.
    representatives: Vec<usize>,
    /// Period of each orbit.
    periods: Vec<u16>,
    /// Orbit of every Fock state.
    orbit_of: Vec<u32>,
    /// `l` with `state = T^l representative`, for every Fock state.
    shift: Vec<u16>,
}

impl TranslationOrbits {
    /// Enumerates the orbits of `basis`.
    pub fn new(basis: &FockBasis) -> Self {
        let l = basis.sites();
        let d = basis.dimension();
        let mut orbit_of = vec![ABSENT; d];
        let mut shift = vec![0u16; d];
        let mut representatives = Vec::new();
        let mut periods = Vec::new();
        let mut rotated = vec![0u8; l];
        let mut members = Vec::with_capacity(l);
        for i in 0..d {
            if orbit_of[i] != ABSENT {
                continue;
            }
            let s = basis.state(i);
            members.clear();
            for r in 0..l {
                translate(s, r, &mut rotated);
                let j = basis.index_unchecked(&rotated);
                if r > 0 && j == i {
                    break;
                }
                members.push(j);
            }
            let period = members.len();
            // the lexicographic minimum sits last in descending order
            let (r0, &rep) = members.iter().enumerate().max_by_key(|(_, &j)| j).unwrap();
            let orbit = representatives.len() as u32;
            for (r, &j) in members.iter().enumerate() {
                orbit_of[j] = orbit;
                shift[j] = ((r + period - r0) % period) as u16;
            }
            representatives.push(rep);
            periods.push(period as u16);
        }
        TranslationOrbits {
            sites: l,
            representatives,
            periods,
            orbit_of,
            shift,
        }
    }

    /// Number of sites `L`.
    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Number of orbits.
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    /// Whether there are no orbits.
    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Fock index of the representative of `orbit`.
    pub fn representative(&self, orbit: usize) -> usize {
        self.representatives[orbit]
    }

    /// Period of `orbit`.
    pub fn period(&self, orbit: usize) -> usize {
        self.periods[orbit] as usize
    }

    /// Orbit and translation `l` of a Fock state, with `state = T^l rep`.
    pub fn locate(&self, fock_index: usize) -> (usize, usize) {
        (self.orbit_of[fock_index] as usize, self.shift[fock_index] as usize)
    }

    /// Momentum sector `K`.
    pub fn sector(&self, k: usize) -> MomentumSector {
        let l = self.sites;
        assert!(k < l, "momentum index {k} out of range for L = {l}");
        let mut position = vec![ABSENT; self.len()];
        let mut orbits = Vec::new();
        for (o, &p) in self.periods.iter().enumerate() {
            if (k * p as usize) % l == 0 {
                position[o] = orbits.len() as u32;
                orbits.push(o as u32);
            }
        }
        let periods = orbits.iter().map(|&o| self.periods[o as usize] as usize).collect();
        MomentumSector {
            k,
            sites: l,
            orbits,
            periods,
            position,
        }
    }

    /// All sectors `K = 0, …, L − 1`.
    pub fn sectors(&self) -> Vec<MomentumSector> {
        (0..self.sites).map(|k| self.sector(k)).collect()
    }
}

/// Writes `T^r s` into `out`.
pub fn translate(s: &[u8], r: usize, out: &mut [u8]) {
    let l = s.len();
    for (mu, &n) in s.iter().enumerate() {
        out[(mu + r) % l] = n;
    }
}

/// Basis of one momentum sector.
#[derive(Debug, Clone)]
pub struct MomentumSector {
    k: usize,
    sites: usize,
    orbits: Vec<u32>,
    periods: Vec<usize>,
    position: Vec<u32>,
}

impl MomentumSector {
    /// Momentum index `K`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Lattice momentum `2πK/L`.
    pub fn momentum(&self) -> f64 {
        2.0 * PI * self.k as f64 / self.sites as f64
    }

    /// Whether all sector phases are real (`2K ≡ 0 mod L`).
    pub fn is_real(&self) -> bool {
        (2 * self.k) % self.sites == 0
    }

    /// Sector dimension `D_K`.
    pub fn dimension(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit index of the `i`-th sector basis state.
    pub fn orbit(&self, i: usize) -> usize {
        self.orbits[i] as usize
    }

    /// Period of the `i`-th sector basis state.
    pub fn period(&self, i: usize) -> usize {
        self.periods[i]
    }

    /// Normalisation constant `N_Γ = L²/R_Γ` of the unnormalised orbit sum.
    pub fn norm(&self, i: usize) -> f64 {
        (self.sites * self.sites) as f64 / self.periods[i] as f64
    }

    /// Position of an orbit in this sector, if the orbit is compatible.
    pub fn position(&self, orbit: usize) -> Option<usize> {
        let p = self.position[orbit];
        (p != ABSENT).then_some(p as usize)
    }

    /// `e^{ikl}`.
    pub fn phase(&self, l: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.momentum() * l as f64)
    }

    /// Amplitude `⟨T^l a | a(k)⟩` of a sector basis state on a Fock state.
    pub fn fock_amplitude(&self, i: usize, l: usize) -> Complex64 {
        self.phase(l).conj() * ((self.periods[i] as f64).sqrt() / self.sites as f64) * (self.sites / self.periods[i]) as f64
    }

    /// Expands a sector vector into the full Fock basis.
    pub fn to_fock(&self, orbits: &TranslationOrbits, coefficients: &[Complex64], dimension: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); dimension];
        for (idx, (orbit, l)) in (0..dimension).map(|f| (f, orbits.locate(f))) {
            if let Some(i) = self.position(orbit) {
                out[idx] = coefficients[i] * self.fock_amplitude(i, l);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn orbits(n: usize, l: usize) -> (FockBasis, TranslationOrbits) {
        let b = FockBasis::new(n, l).unwrap();
        let o = TranslationOrbits::new(&b);
        (b, o)
    }

    #[test]
    fn two_on_two_sectors() {
        let (b, o) = orbits(2, 2);
        let s = o.sectors();
        assert_eq!(s[0].dimension(), 2);
        assert_eq!(s[1].dimension(), 1);
        let uniform = b.index(&[1, 1]).unwrap();
        let (orbit, _) = o.locate(uniform);
        assert!(s[0].position(orbit).is_some());
        assert!(s[1].position(orbit).is_none());
    }

    #[test]
    fn representatives_are_orbit_minima() {
        let (b, o) = orbits(3, 4);
        let mut buf = vec![0u8; 4];
        for orbit in 0..o.len() {
            let rep = b.state(o.representative(orbit)).to_vec();
            for r in 0..4 {
                translate(&rep, r, &mut buf);
                assert!(rep <= buf);
            }
        }
    }

    #[test]
    fn dimensions_add_up() {
        for n in 2..=9 {
            let (b, o) = orbits(n, n);
            let total: usize = o.sectors().iter().map(|s| s.dimension()).sum();
            assert_eq!(total, b.dimension(), "L = N = {n}");
        }
    }

    #[test]
    fn sector_states_are_translation_eigenstates() {
        let (b, o) = orbits(4, 4);
        let d = b.dimension();
        let mut buf = vec![0u8; 4];
        for sector in o.sectors() {
            for i in 0..sector.dimension() {
                let mut c = vec![Complex64::new(0.0, 0.0); sector.dimension()];
                c[i] = Complex64::new(1.0, 0.0);
                let v = sector.to_fock(&o, &c, d);
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-13);
                // (T v)[T s] = v[s] must equal e^{ik} v[T s]
                for (f, s) in b.states().enumerate() {
                    translate(s, 1, &mut buf);
                    let g = b.index(&buf).unwrap();
                    let tv = v[f];
                    assert_abs_diff_eq!((tv - sector.phase(1) * v[g]).norm(), 0.0, epsilon = 1e-13);
                }
            }
        }
    }
}
