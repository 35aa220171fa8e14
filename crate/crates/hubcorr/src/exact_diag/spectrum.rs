//! Ground states and full spectra.
//!
//! Periodic chains are diagonalised sector by sector. Sectors `K` and
//! `L − K` are complex conjugates of each other, so by default only
//! `K ≤ L/2` is diagonalised and the others are recorded as mirror images
//! with the same energies and conjugate observables.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;

use super::lanczos::{lowest_eigenpairs, LanczosOptions};
use super::observables::{SectorObservables, StateObservables};
use super::operator::{CsrMatrix, Scalar};
use super::sector::MomentumSector;
use super::EdModel;
use crate::error::{Error, Result};
use crate::linalg::HermitianEigen;

/// How a set of eigenpairs was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// Dense diagonalization of the whole block.
    Full,
    /// Iterative solution for the lowest states only.
    Iterative,
}

/// Eigenvalues of one block, with optional per-state observables.
#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    /// Momentum index, or `None` for the plain Fock basis.
    pub k: Option<usize>,
    /// Eigenvalues in ascending order.
    pub energies: Vec<f64>,
    /// `2` if the block also stands for its mirror sector `L − K`.
    pub multiplicity: usize,
    pub method: SpectrumMethod,
    /// Observables of every eigenstate, if requested.
    pub observables: Vec<StateObservables>,
}

/// Spectrum of a model, block by block.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub sites: usize,
    pub particles: usize,
    pub blocks: Vec<SectorSpectrum>,
}

impl SpectralDecomposition {
    /// Lowest eigenvalue over all blocks.
    pub fn ground_energy(&self) -> f64 {
        self.blocks
            .iter()
            .filter_map(|b| b.energies.first().copied())
            .fold(f64::INFINITY, f64::min)
    }

    /// All eigenvalues with degeneracy from mirroring, ascending.
    pub fn all_energies(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(|b| b.energies.iter().flat_map(move |&e| std::iter::repeat(e).take(b.multiplicity)))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Eigenvalues of sector `K`, resolving mirror images.
    pub fn sector_energies(&self, k: usize) -> Option<&[f64]> {
        let mirror = (self.sites - k) % self.sites;
        self.blocks
            .iter()
            .find(|b| b.k == Some(k) || (b.multiplicity == 2 && b.k == Some(mirror)))
            .map(|b| b.energies.as_slice())
    }

    /// `(K, Ω, E)` rows covering every sector, mirror images included.
    pub fn rows(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for b in &self.blocks {
            let k = b.k.unwrap_or(0);
            let ks: Vec<usize> = if b.multiplicity == 2 { vec![k, self.sites - k] } else { vec![k] };
            for kk in ks {
                out.extend(b.energies.iter().enumerate().map(|(o, &e)| (kk, o, e)));
            }
        }
        out.sort_by_key(|r| r.0);
        out
    }
}

/// Settings for [`full_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Evaluate observables for every eigenstate.
    pub observables: bool,
    /// Diagonalise only `K ≤ L/2` and mirror the rest.
    pub mirror: bool,
    /// Worker threads diagonalising sectors side by side.
    pub threads: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            observables: false,
            mirror: true,
            threads: 1,
        }
    }
}

fn check_dense_budget(model: &EdModel, dim: usize, context: &str) -> Result<()> {
    let limit = model.budget().max_dense_dimension;
    if dim > limit {
        return Err(Error::Budget {
            context: context.to_string(),
            requested: dim,
            limit,
        });
    }
    Ok(())
}

/// Dense eigendecomposition of a sector block.
pub fn sector_eigen<T: Scalar>(model: &EdModel, sector: &MomentumSector, want_vectors: bool) -> Result<HermitianEigen<T>> {
    check_dense_budget(model, sector.dimension(), &format!("dense diagonalization of sector K={}", sector.k()))?;
    let h: CsrMatrix<T> = model.hamiltonian_sector(sector)?;
    Ok(T::dense_eigen(h.dim(), &h.to_dense(), want_vectors))
}

fn sector_block<T: Scalar>(model: &EdModel, sector: &MomentumSector, multiplicity: usize, observables: bool) -> Result<SectorSpectrum> {
    let e = sector_eigen::<T>(model, sector, observables)?;
    let obs = if observables {
        let table = SectorObservables::<T>::for_sector(model, sector)?;
        e.vectors.iter().map(|v| table.evaluate(v)).collect()
    } else {
        Vec::new()
    };
    Ok(SectorSpectrum {
        k: Some(sector.k()),
        energies: e.values,
        multiplicity,
        method: SpectrumMethod::Full,
        observables: obs,
    })
}

/// All eigenvalues of the model, optionally with per-state observables.
pub fn full_spectrum(model: &EdModel, opts: &SpectrumOptions) -> Result<SpectralDecomposition> {
    let l = model.sites();
    let mut blocks = Vec::new();
    if model.has_sectors() {
        let jobs: Vec<(MomentumSector, usize)> = model
            .sectors()?
            .into_iter()
            .filter(|s| !(opts.mirror && 2 * s.k() > l))
            .map(|s| {
                let k = s.k();
                let multiplicity = if opts.mirror && 2 * k != l && k != 0 { 2 } else { 1 };
                (s, multiplicity)
            })
            .collect();
        let run = |(sector, multiplicity): &(MomentumSector, usize)| {
            if sector.is_real() {
                sector_block::<f64>(model, sector, *multiplicity, opts.observables)
            } else {
                sector_block::<Complex64>(model, sector, *multiplicity, opts.observables)
            }
        };
        let threads = opts.threads.clamp(1, jobs.len().max(1));
        if threads == 1 {
            for job in &jobs {
                blocks.push(run(job)?);
            }
        } else {
            let next = AtomicUsize::new(0);
            let done: Mutex<Vec<Option<Result<SectorSpectrum>>>> = Mutex::new(jobs.iter().map(|_| None).collect());
            std::thread::scope(|scope| {
                for _ in 0..threads {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= jobs.len() {
                            break;
                        }
                        let r = run(&jobs[i]);
                        done.lock().unwrap_or_else(|e| e.into_inner())[i] = Some(r);
                    });
                }
            });
            for r in done.into_inner().unwrap_or_else(|e| e.into_inner()) {
                blocks.push(r.ok_or_else(|| Error::numeric("full_spectrum", "a sector worker did not finish"))??);
            }
        }
    } else {
        let d = model.basis().dimension();
        check_dense_budget(model, d, "dense diagonalization of the Fock basis")?;
        let h = model.hamiltonian_fock();
        let e = f64::dense_eigen(d, &h.to_dense(), opts.observables);
        let obs = if opts.observables {
            let table = SectorObservables::for_fock(model);
            e.vectors.iter().map(|v| table.evaluate(v)).collect()
        } else {
            Vec::new()
        };
        blocks.push(SectorSpectrum {
            k: None,
            energies: e.values,
            multiplicity: 1,
            method: SpectrumMethod::Full,
            observables: obs,
        });
    }
    Ok(SpectralDecomposition {
        sites: l,
        particles: model.particles(),
        blocks,
    })
}

/// Lowest `count` eigenvalues of sector `K` by Lanczos iteration.
pub fn lowest_sector_energies(model: &EdModel, k: usize, count: usize, opts: &LanczosOptions) -> Result<Vec<f64>> {
    let sector = model.sector(k)?;
    let count = count.min(sector.dimension());
    let values = if sector.is_real() {
        let h = model.hamiltonian_sector::<f64>(&sector)?;
        lowest_eigenpairs(&h, count, opts)?.into_iter().map(|p| p.value).collect()
    } else {
        let h = model.hamiltonian_sector::<Complex64>(&sector)?;
        lowest_eigenpairs(&h, count, opts)?.into_iter().map(|p| p.value).collect()
    };
    Ok(values)
}

/// Ground state of the model.
///
/// On periodic chains the state lives in the `K = 0` sector and `vector`
/// holds sector coefficients; otherwise it holds Fock amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    /// Whether `vector` is expressed in the `K = 0` sector.
    pub in_sector: bool,
}

impl GroundState {
    /// Site-averaged observables of the ground state.
    pub fn observables(&self, model: &EdModel) -> Result<StateObservables> {
        if self.in_sector {
            let s = model.sector(0)?;
            Ok(SectorObservables::<f64>::for_sector(model, &s)?.evaluate(&self.vector))
        } else {
            Ok(SectorObservables::for_fock(model).evaluate(&self.vector))
        }
    }
}

/// Ground state by Lanczos iteration.
pub fn ground_state(model: &EdModel) -> Result<GroundState> {
    ground_state_with(model, &LanczosOptions::default())
}

/// Ground state with explicit Lanczos settings.
pub fn ground_state_with(model: &EdModel, opts: &LanczosOptions) -> Result<GroundState> {
    let (h, in_sector) = if model.has_sectors() {
        (model.hamiltonian_sector::<f64>(&model.sector(0)?)?, true)
    } else {
        (model.hamiltonian_fock(), false)
    };
    let p = lowest_eigenpairs(&h, 1, opts)?.remove(0);
    Ok(GroundState {
        energy: p.value,
        vector: p.vector,
        residual: p.residual,
        in_sector,
    })
}
