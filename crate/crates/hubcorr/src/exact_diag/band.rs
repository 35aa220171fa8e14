//! Lowest excitation branch of a periodic chain.
//!
//! At small momenta the lowest branch above the ground state `E_01` is
//! close to the pseudo-relativistic form
//!
//! ```text
//! (E_{K2} − E_01)² = ΔE² + K² v_eff²,
//! ```
//!
//! where `E_{K2}` is the lowest excitation at momentum `K = 2πK_index/L`:
//! the second level `E_02` at `K = 0` and the lowest level `E_11` of the
//! first non-zero momentum. These three levels fix `ΔE` and `v_eff`. The
//! strong-coupling particle-hole picture gives `v_eff = ½√(J(3U − J))`, and
//! its continuum of particle-hole pairs with total momentum `K` is bounded
//! by [`band_edges`].

use std::f64::consts::PI;

use super::lanczos::LanczosOptions;
use super::spectrum::lowest_sector_energies;
use super::EdModel;
use crate::bose_z1::omega_bose;
use crate::error::{Error, Result};

/// Pseudo-relativistic fit of the lowest branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandFit {
    pub sites: usize,
    /// Ground energy `E_01`.
    pub e01: f64,
    /// Second `K = 0` level `E_02`.
    pub e02: f64,
    /// Lowest level at the first non-zero momentum, `E_11`.
    pub e11: f64,
    /// Gap `ΔE = E_02 − E_01`.
    pub gap: f64,
    /// Fitted velocity `v_eff`.
    pub velocity: f64,
    /// `½√(J(3U − J))`.
    pub analytic: f64,
}

/// `v_eff = ½√(J(3U − J))`.
pub fn analytic_velocity(j: f64, u: f64) -> f64 {
    0.5 * (j * (3.0 * u - j)).max(0.0).sqrt()
}

/// Fit from the three levels of a chain of `sites` sites.
pub fn band_fit_from_energies(sites: usize, e01: f64, e02: f64, e11: f64, j: f64, u: f64) -> Result<BandFit> {
    if sites < 2 {
        return Err(Error::config("L", "the fit needs at least two sites"));
    }
    let k = 2.0 * PI / sites as f64;
    let gap = e02 - e01;
    let w1 = e11 - e01;
    let v_sq = (w1 * w1 - gap * gap) / (k * k);
    if !(v_sq >= 0.0) {
        return Err(Error::numeric(
            "lowest_band_fit",
            format!("E_11 − E_01 = {w1} lies below the gap {gap}; no real velocity"),
        ));
    }
    Ok(BandFit {
        sites,
        e01,
        e02,
        e11,
        gap,
        velocity: v_sq.sqrt(),
        analytic: analytic_velocity(j, u),
    })
}

/// Computes `E_01`, `E_02` and `E_11` by Lanczos iteration and fits the branch.
pub fn lowest_band_fit(model: &EdModel) -> Result<BandFit> {
    let opts = LanczosOptions::default();
    let k0 = lowest_sector_energies(model, 0, 2, &opts)?;
    let k1 = lowest_sector_energies(model, 1, 1, &opts)?;
    if k0.len() < 2 {
        return Err(Error::config("L", "the K = 0 sector has fewer than two states"));
    }
    let spec = model.spec();
    band_fit_from_energies(model.sites(), k0[0], k0[1], k1[0], spec.j, spec.u)
}

/// Lower and upper edge of the particle-hole continuum at total momentum
/// `k` of a chain, from `E = ω^p_{k_p} − ω^h_{k_h}` with `k_p + k_h = k`,
/// `ω^h_q = −½(J T_q + ω_q)` and `ω^p_q = −½(J T_q − ω_q)`.
pub fn band_edges(j: f64, u: f64, k: f64, samples: usize) -> Result<(f64, f64)> {
    let samples = samples.max(8);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..samples {
        let kp = -PI + 2.0 * PI * i as f64 / samples as f64;
        let kh = k - kp;
        let (tp, th) = (kp.cos(), kh.cos());
        let (wp, wh) = (omega_bose(j, u, tp), omega_bose(j, u, th));
        if wp.is_unstable() || wh.is_unstable() {
            return Err(Error::numeric("band_edges", "imaginary mode frequency"));
        }
        let e = -0.5 * (j * tp - wp.omega().re) + 0.5 * (j * th + wh.omega().re);
        lo = lo.min(e);
        hi = hi.max(e);
    }
    Ok((lo, hi))
}
