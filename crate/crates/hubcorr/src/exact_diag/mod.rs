//! Exact diagonalization of the Bose-Hubbard model on small lattices.
//!
//! The Hamiltonian
//!
//! ```text
//! H = −(J/Z) Σ_{μν} T_{μν} b†_μ b_ν + (U/2) Σ_μ n_μ (n_μ − 1)
//! ```
//!
//! is assembled in the occupation-number basis of `N` bosons on the sites of
//! a [`LatticeSpec`]. Periodic chains are further split into momentum
//! sectors, so that only blocks of dimension `D_K ≈ D/L` are ever stored.
//! On top of the spectra the module offers site-averaged observables,
//! canonical ensembles, quench dynamics with infinite-time averages, RK4
//! evolution under a time-dependent tilt and a fit of the lowest excitation
//! branch.

pub mod band;
pub mod basis;
pub mod lanczos;
pub mod observables;
pub mod operator;
pub mod quench;
pub mod sector;
pub mod spectrum;
pub mod thermal;
pub mod tilt;

pub use band::{analytic_velocity, band_edges, band_fit_from_energies, lowest_band_fit, BandFit};
pub use basis::FockBasis;
pub use lanczos::{lowest_eigenpairs, EigenPair, LanczosOptions};
pub use observables::{SectorObservables, StateObservables};
pub use operator::{BosonOperator, CsrMatrix, Hop, Scalar};
pub use quench::{quench_from_uniform, Quench};
pub use sector::{MomentumSector, TranslationOrbits};
pub use spectrum::{full_spectrum, ground_state, GroundState, SectorSpectrum, SpectralDecomposition, SpectrumMethod, SpectrumOptions};
pub use thermal::{fit_temperature, thermal_average, ThermalState};
pub use tilt::{tilt_evolution, TiltEdOptions, TiltEdResult};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeSpec};

/// Default cap on sector dimensions for full diagonalization.
pub const DEFAULT_DENSE_BUDGET: usize = 6000;

/// Resource limits of the exact diagonalization engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdBudget {
    /// Largest Fock-basis dimension that may be enumerated.
    pub max_fock_dimension: usize,
    /// Largest block that may be diagonalised densely.
    pub max_dense_dimension: usize,
}

impl Default for EdBudget {
    fn default() -> Self {
        EdBudget {
            max_fock_dimension: basis::DEFAULT_MAX_DIMENSION,
            max_dense_dimension: DEFAULT_DENSE_BUDGET,
        }
    }
}

/// A lattice, a particle number and the Hilbert space they span.
#[derive(Debug, Clone)]
pub struct EdModel {
    spec: LatticeSpec,
    basis: FockBasis,
    orbits: Option<TranslationOrbits>,
    budget: EdBudget,
}

impl EdModel {
    /// Model with `particles` bosons and the default budget.
    pub fn new(spec: &LatticeSpec, particles: usize) -> Result<Self> {
        Self::with_budget(spec, particles, EdBudget::default())
    }

    /// Model at unit filling, `N = L`.
    pub fn unit_filling(spec: &LatticeSpec) -> Result<Self> {
        Self::new(spec, spec.sites())
    }

    /// Model with explicit resource limits.
    pub fn with_budget(spec: &LatticeSpec, particles: usize, budget: EdBudget) -> Result<Self> {
        spec.validate()?;
        let basis = FockBasis::with_budget(particles, spec.sites(), budget.max_fock_dimension)?;
        let orbits = (spec.dimension == 1 && spec.boundary == Boundary::Periodic)
            .then(|| TranslationOrbits::new(&basis));
        Ok(EdModel {
            spec: spec.clone(),
            basis,
            orbits,
            budget,
        })
    }

    /// Lattice and couplings.
    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    /// Same Hilbert space with different couplings.
    pub fn with_couplings(&self, j: f64, u: f64) -> Result<Self> {
        let spec = LatticeSpec {
            j,
            u,
            ..self.spec.clone()
        };
        spec.validate()?;
        Ok(EdModel { spec, ..self.clone() })
    }

    /// Fock basis.
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    /// Resource limits.
    pub fn budget(&self) -> EdBudget {
        self.budget
    }

    /// Number of sites `L`.
    pub fn sites(&self) -> usize {
        self.basis.sites()
    }

    /// Number of bosons `N`.
    pub fn particles(&self) -> usize {
        self.basis.particles()
    }

    /// Translation orbits, available for periodic chains only.
    pub fn orbits(&self) -> Result<&TranslationOrbits> {
        self.orbits
            .as_ref()
            .ok_or_else(|| Error::config("boundary", "momentum sectors need a periodic one-dimensional chain"))
    }

    /// Whether the model is split into momentum sectors.
    pub fn has_sectors(&self) -> bool {
        self.orbits.is_some()
    }

    /// Momentum sector `K`.
    pub fn sector(&self, k: usize) -> Result<MomentumSector> {
        let orbits = self.orbits()?;
        if k >= self.sites() {
            return Err(Error::config("K", format!("must be below L = {}, got {k}", self.sites())));
        }
        Ok(orbits.sector(k))
    }

    /// All momentum sectors.
    pub fn sectors(&self) -> Result<Vec<MomentumSector>> {
        Ok(self.orbits()?.sectors())
    }

    /// Directed nearest-neighbour hops `−(J/Z) b†_μ b_ν`.
    pub fn hops(&self, amplitude: f64) -> Vec<Hop> {
        (0..self.sites())
            .flat_map(|mu| {
                self.spec
                    .neighbors(mu)
                    .into_iter()
                    .map(move |nu| Hop { to: mu, from: nu, amplitude })
            })
            .collect()
    }

    /// The Hamiltonian as an operator.
    pub fn hamiltonian(&self) -> BosonOperator<'static> {
        let z = self.spec.coordination() as f64;
        let half_u = 0.5 * self.spec.u;
        let hops = if self.spec.j == 0.0 {
            Vec::new()
        } else {
            self.hops(-self.spec.j / z)
        };
        BosonOperator {
            hops,
            diagonal: Box::new(move |s: &[u8]| half_u * s.iter().map(|&n| (n as f64) * (n as f64 - 1.0)).sum::<f64>()),
        }
    }

    /// Hopping part `−(1/Z) Σ T_{μν} b†_μ b_ν` per unit `J`.
    pub fn hopping(&self) -> BosonOperator<'static> {
        BosonOperator::hopping(self.hops(-1.0 / self.spec.coordination() as f64))
    }

    /// Hamiltonian in the plain Fock basis.
    pub fn hamiltonian_fock(&self) -> CsrMatrix<f64> {
        self.hamiltonian().fock_matrix(&self.basis)
    }

    /// Hamiltonian block of a momentum sector.
    pub fn hamiltonian_sector<T: Scalar>(&self, sector: &MomentumSector) -> Result<CsrMatrix<T>> {
        Ok(self.hamiltonian().sector_matrix(&self.basis, self.orbits()?, sector))
    }
}
