//! Site-averaged observables of exact states.
//!
//! For a separation `s` along the first lattice axis the engine measures
//!
//! * the occupation probabilities `p(n) = (1/L) Σ_μ ⟨δ(n_μ, n)⟩`,
//! * the one-body density matrix `OBDM(s) = ⟨b†_μ b_{μ+s}⟩`,
//! * the density and parity moments `⟨n_μ n_{μ+s}⟩` and
//!   `⟨(−1)^{n_μ} (−1)^{n_{μ+s}}⟩`,
//!
//! each averaged over all site pairs with that separation. All quantities
//! are linear in the density matrix, so ensemble averages are weighted sums
//! of [`StateObservables`]. Connected correlations `F_n(s)` and
//! `F_parity(s)` and the momentum distribution are derived afterwards.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::operator::{BosonOperator, CsrMatrix, Hop, Scalar};
use super::sector::MomentumSector;
use super::EdModel;
use crate::error::{Error, Result};
use crate::lattice::Boundary;

/// Observables of one state or ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct StateObservables {
    /// `p(n)` for `n = 0, …, N`.
    pub occupation: Vec<f64>,
    /// `OBDM(s)` for `s = 0, …, S − 1`.
    pub obdm: Vec<Complex64>,
    /// `⟨n_μ n_{μ+s}⟩`.
    pub density_density: Vec<f64>,
    /// `⟨(−1)^{n_μ + n_{μ+s}}⟩`.
    pub parity_parity: Vec<f64>,
}

impl StateObservables {
    /// All-zero accumulator.
    pub fn zeros(particles: usize, separations: usize) -> Self {
        StateObservables {
            occupation: vec![0.0; particles + 1],
            obdm: vec![Complex64::new(0.0, 0.0); separations],
            density_density: vec![0.0; separations],
            parity_parity: vec![0.0; separations],
        }
    }

    /// `self += w · other`, optionally adding the complex conjugate state
    /// (the mirror image in sector `L − K`) as well.
    pub fn accumulate(&mut self, other: &StateObservables, w: f64, with_mirror: bool) {
        let m = if with_mirror { 2.0 } else { 1.0 };
        for (a, b) in self.occupation.iter_mut().zip(&other.occupation) {
            *a += m * w * b;
        }
        for (a, b) in self.obdm.iter_mut().zip(&other.obdm) {
            *a += if with_mirror { Complex64::new(2.0 * w * b.re, 0.0) } else { b * w };
        }
        for (a, b) in self.density_density.iter_mut().zip(&other.density_density) {
            *a += m * w * b;
        }
        for (a, b) in self.parity_parity.iter_mut().zip(&other.parity_parity) {
            *a += m * w * b;
        }
    }

    /// Mean occupation `Σ n p(n)`.
    pub fn density(&self) -> f64 {
        self.occupation.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    /// Mean parity `Σ (−1)ⁿ p(n)`.
    pub fn parity(&self) -> f64 {
        self.occupation
            .iter()
            .enumerate()
            .map(|(n, p)| if n % 2 == 0 { *p } else { -*p })
            .sum()
    }

    /// Connected density correlation `F_n(s)`.
    pub fn number_correlation(&self, s: usize) -> f64 {
        let n = self.density();
        self.density_density[s] - n * n
    }

    /// Connected parity correlation `F_parity(s)`.
    pub fn parity_correlation(&self, s: usize) -> f64 {
        let p = self.parity();
        self.parity_parity[s] - p * p
    }

    /// Momentum distribution `P(k) = ⟨n_k⟩/N` at `k = 2πq/L`, `q = 0, …, L − 1`,
    /// for a translation-invariant state on a periodic chain with
    /// `⟨n_k⟩ = Σ_s e^{−iks} OBDM(s)`.
    pub fn momentum_distribution(&self) -> Vec<f64> {
        let l = self.obdm.len();
        let total = self.obdm[0].re * l as f64;
        (0..l)
            .map(|q| {
                let k = 2.0 * PI * q as f64 / l as f64;
                let nk: Complex64 = self
                    .obdm
                    .iter()
                    .enumerate()
                    .map(|(s, o)| o * Complex64::from_polar(1.0, -k * s as f64))
                    .sum();
                nk.re / total
            })
            .collect()
    }
}

/// Site pairs `(μ, μ + s)` along the first axis, for every separation.
fn pairs(model: &EdModel) -> Vec<Vec<(usize, usize)>> {
    let spec = model.spec();
    let lx = spec.extent[0] as i64;
    (0..lx)
        .map(|s| {
            (0..spec.sites())
                .filter_map(|mu| {
                    let mut x = spec.coordinates(mu);
                    x[0] += s;
                    if spec.boundary == Boundary::Open && x[0] >= lx {
                        return None;
                    }
                    Some((mu, spec.site_index(&x)))
                })
                .collect()
        })
        .collect()
}

/// Precomputed tables that turn state vectors of one space into
/// [`StateObservables`].
#[derive(Debug, Clone)]
pub struct SectorObservables<T> {
    particles: usize,
    separations: usize,
    /// Per basis state: `p(n)` row, then density and parity moments.
    occupation: Vec<f64>,
    density_density: Vec<f64>,
    parity_parity: Vec<f64>,
    /// `OBDM(s)` operators for `s ≥ 1`.
    obdm: Vec<CsrMatrix<T>>,
}

fn diagonal_tables<'a, I>(states: I, particles: usize, pairs: &[Vec<(usize, usize)>]) -> (Vec<f64>, Vec<f64>, Vec<f64>)
where
    I: Iterator<Item = &'a [u8]>,
{
    let mut occ = Vec::new();
    let mut nn = Vec::new();
    let mut pp = Vec::new();
    for s in states {
        let l = s.len() as f64;
        let mut row = vec![0.0; particles + 1];
        for &n in s {
            row[n as usize] += 1.0 / l;
        }
        occ.extend(row);
        for ps in pairs {
            let w = 1.0 / ps.len().max(1) as f64;
            nn.push(ps.iter().map(|&(a, b)| (s[a] as f64) * (s[b] as f64)).sum::<f64>() * w);
            pp.push(
                ps.iter()
                    .map(|&(a, b)| if (s[a] + s[b]) % 2 == 0 { 1.0 } else { -1.0 })
                    .sum::<f64>()
                    * w,
            );
        }
    }
    (occ, nn, pp)
}

fn obdm_operator(pairs: &[(usize, usize)]) -> BosonOperator<'static> {
    let w = 1.0 / pairs.len().max(1) as f64;
    BosonOperator::hopping(
        pairs
            .iter()
            .map(|&(mu, nu)| Hop {
                to: mu,
                from: nu,
                amplitude: w,
            })
            .collect(),
    )
}

impl<T: Scalar> SectorObservables<T> {
    /// Tables for a momentum sector of a periodic chain.
    pub fn for_sector(model: &EdModel, sector: &MomentumSector) -> Result<Self> {
        let orbits = model.orbits()?;
        let pairs = pairs(model);
        let basis = model.basis();
        let reps = (0..sector.dimension()).map(|i| basis.state(orbits.representative(sector.orbit(i))));
        let (occupation, density_density, parity_parity) = diagonal_tables(reps, model.particles(), &pairs);
        let obdm = pairs[1..]
            .iter()
            .map(|p| obdm_operator(p).sector_matrix(basis, orbits, sector))
            .collect();
        Ok(SectorObservables {
            particles: model.particles(),
            separations: pairs.len(),
            occupation,
            density_density,
            parity_parity,
            obdm,
        })
    }

    /// Number of bosons `N`.
    pub fn particles(&self) -> usize {
        self.particles
    }

    /// Number of separations `S`.
    pub fn separations(&self) -> usize {
        self.separations
    }

    /// Dimension of the space the tables act on.
    pub fn dimension(&self) -> usize {
        self.occupation.len() / (self.particles + 1)
    }

    /// Observables of a normalised state.
    pub fn evaluate(&self, v: &[T]) -> StateObservables {
        let np = self.particles + 1;
        let ns = self.separations;
        let mut out = StateObservables::zeros(self.particles, ns);
        let mut density = 0.0;
        for (i, x) in v.iter().enumerate() {
            let w = x.abs_sq();
            if w == 0.0 {
                continue;
            }
            for n in 0..np {
                out.occupation[n] += w * self.occupation[i * np + n];
                density += w * n as f64 * self.occupation[i * np + n];
            }
            for s in 0..ns {
                out.density_density[s] += w * self.density_density[i * ns + s];
                out.parity_parity[s] += w * self.parity_parity[i * ns + s];
            }
        }
        out.obdm[0] = Complex64::new(density, 0.0);
        for (s, op) in self.obdm.iter().enumerate() {
            out.obdm[s + 1] = op.expectation(v);
        }
        out
    }
}

impl SectorObservables<f64> {
    /// Tables for the plain Fock basis of any lattice.
    pub fn for_fock(model: &EdModel) -> Self {
        let pairs = pairs(model);
        let basis = model.basis();
        let (occupation, density_density, parity_parity) = diagonal_tables(basis.states(), model.particles(), &pairs);
        let obdm = pairs[1..].iter().map(|p| obdm_operator(p).fock_matrix(basis)).collect();
        SectorObservables {
            particles: model.particles(),
            separations: pairs.len(),
            occupation,
            density_density,
            parity_parity,
            obdm,
        }
    }

    /// Observables of a complex state in a real space.
    pub fn evaluate_complex(&self, v: &[Complex64]) -> Result<StateObservables> {
        if v.len() != self.dimension() {
            return Err(Error::config("state", "dimension mismatch"));
        }
        let re: Vec<f64> = v.iter().map(|z| z.re).collect();
        let im: Vec<f64> = v.iter().map(|z| z.im).collect();
        let mut out = self.evaluate(&re);
        let b = self.evaluate(&im);
        out.accumulate(&b, 1.0, false);
        // cross terms of the off-diagonal operators: i(⟨re|O|im⟩ − ⟨im|O|re⟩)
        for (s, op) in self.obdm.iter().enumerate() {
            let o_im = op.apply(&im);
            let o_re = op.apply(&re);
            let a: f64 = re.iter().zip(&o_im).map(|(x, y)| x * y).sum();
            let c: f64 = im.iter().zip(&o_re).map(|(x, y)| x * y).sum();
            out.obdm[s + 1] += Complex64::new(0.0, a - c);
        }
        Ok(out)
    }
}
