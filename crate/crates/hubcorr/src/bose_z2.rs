//! Second-order observables built from first-order correlators.
//!
//! The on-site depletion `f0` renormalises the hopping to `J (1 − 3 f0)`,
//! which shifts the gap and the critical coupling. Density-density and
//! parity correlations vanish at first order; at second order they reduce
//! to products of first-order momentum-space correlators,
//!
//! ```text
//! F_n(s)      = (2/N²) Σ_{p,q} e^{i(p+q)s} (f11_p f11_q − f12_p f21_q)
//! F_parity(s) = (8/N²) Σ_{p,q} e^{i(p+q)s} (f11_p f11_q + f12_p f21_q)
//! ```
//!
//! Both double sums factorise into products of single Fourier sums, which
//! is how they are evaluated here.

use num_complex::Complex64;

use crate::bose_z1::{self, omega_bose, BoseCorrelators, ModeFrequency};
use crate::error::{Error, Result};
use crate::lattice::{Displacement, LatticeSpec, MomentumGrid, Vector};

/// Largest tolerated imaginary part of the factorised correlation sums.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// First-order depletion and the renormalised dispersion it implies.
#[derive(Debug, Clone)]
pub struct RenormalizedDispersion {
    /// Depletion `f0` used for the renormalisation.
    pub f0: f64,
    /// `ω_ren²` at every grid point.
    pub omega_ren_sq: Vec<f64>,
}

/// Renormalised frequency of one mode, equal to the first-order frequency
/// with `J` replaced by `J (1 − 3 f0)`.
pub fn omega_renormalized(spec: &LatticeSpec, f0: f64, t_k: f64) -> Result<ModeFrequency> {
    if !(0.0..1.0 / 3.0).contains(&f0) {
        return Err(Error::config(
            "f0",
            format!("depletion must lie in [0, 1/3), got {f0}"),
        ));
    }
    Ok(omega_bose(spec.j * (1.0 - 3.0 * f0), spec.u, t_k))
}

/// Critical coupling after renormalisation, `U (3 − 2√2)/(1 − 3 f0)`.
pub fn j_critical_renormalized(u: f64, f0: f64) -> Result<f64> {
    if !(0.0..1.0 / 3.0).contains(&f0) {
        return Err(Error::config(
            "f0",
            format!("depletion must lie in [0, 1/3), got {f0}"),
        ));
    }
    Ok(bose_z1::j_critical(u) / (1.0 - 3.0 * f0))
}

/// Computes the first-order ground-state depletion and the renormalised
/// dispersion on `grid` (one fixed-point step).
pub fn renormalized_dispersion(spec: &LatticeSpec, grid: &MomentumGrid) -> Result<RenormalizedDispersion> {
    let f0 = bose_z1::ground_correlators(spec, grid)?.depletion();
    let omega_ren_sq = grid
        .structure_factors()
        .iter()
        .map(|&t| omega_renormalized(spec, f0, t).map(|w| w.omega_sq))
        .collect::<Result<Vec<_>>>()?;
    Ok(RenormalizedDispersion { f0, omega_ren_sq })
}

/// Density and parity correlations at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCorrelationResult {
    /// `⟨n_μ n_ν⟩ − ⟨n_μ⟩⟨n_ν⟩`.
    pub f_n: f64,
    /// Connected correlation of the on-site parities `(−1)^n`.
    pub f_parity: f64,
    /// Largest imaginary residue of the two sums.
    pub imag_residue: f64,
    /// Time of the correlators the result was built from.
    pub time: f64,
}

fn fourier_parts(corr: &BoseCorrelators, s: &Displacement) -> (Complex64, Complex64, Complex64) {
    let f11: Vec<Complex64> = corr.modes.iter().map(|m| m.f11).collect();
    let f12: Vec<Complex64> = corr.modes.iter().map(|m| m.f12).collect();
    let f21: Vec<Complex64> = corr.modes.iter().map(|m| m.f21).collect();
    (
        corr.grid.fourier(&f11, s),
        corr.grid.fourier(&f12, s),
        corr.grid.fourier(&f21, s),
    )
}

/// Number and parity correlations at separation `s`.
pub fn pair_correlations(corr: &BoseCorrelators, s: &Displacement) -> Result<PairCorrelationResult> {
    let (a, b, c) = fourier_parts(corr, s);
    let n = 2.0 * (a * a - b * c);
    let p = 8.0 * (a * a + b * c);
    let imag = n.im.abs().max(p.im.abs());
    let scale = 1.0 + n.re.abs().max(p.re.abs());
    if imag > IMAG_TOLERANCE * scale {
        return Err(Error::numeric(
            "pair_correlations",
            format!("imaginary residue {imag:e} exceeds tolerance"),
        ));
    }
    Ok(PairCorrelationResult {
        f_n: n.re,
        f_parity: p.re,
        imag_residue: imag,
        time: corr.time,
    })
}

/// Density-density correlation `F_n(s)`.
pub fn number_correlation(corr: &BoseCorrelators, s: &Displacement) -> Result<f64> {
    pair_correlations(corr, s).map(|r| r.f_n)
}

/// Parity correlation `F_parity(s)`.
pub fn parity_correlation(corr: &BoseCorrelators, s: &Displacement) -> Result<f64> {
    pair_correlations(corr, s).map(|r| r.f_parity)
}

/// `(2/N²) Σ_{p,q} e^{i(p+q)s} f11_p f11_q`, which equals
/// `F_parity/8 + F_n/2`.
pub fn hole_pair_sum(corr: &BoseCorrelators, s: &Displacement) -> f64 {
    let (a, _, _) = fourier_parts(corr, s);
    2.0 * (a * a).re
}

/// `J²` and `J⁴` coefficients of the nearest-neighbour parity correlation
/// in units of `(J/ZU)²` and `(J/ZU)⁴`.
pub fn parity_series_coefficients(n: u32, z: f64) -> (f64, f64) {
    let nn = n as f64 * (n as f64 + 1.0);
    let c2 = 8.0 * nn;
    let c4 = 2.0 * nn / 3.0 * (nn * (70.0 - 208.0 * z + 48.0 * z * z) + 4.0 - 22.0 * z + 9.0 * z * z);
    (c2, c4)
}

/// Quartic perturbative series of the nearest-neighbour parity correlation
/// at integer filling `n` and coordination `z`.
pub fn parity_series(n: u32, z: f64, j_over_u: f64) -> f64 {
    let (c2, c4) = parity_series_coefficients(n, z);
    let x = j_over_u / z;
    c2 * x * x + c4 * x.powi(4)
}

/// Result of a light-cone query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightCone {
    /// Largest group velocity on the grid.
    pub v_max: f64,
    /// Whether `|s| ≤ v_max t`.
    pub inside: bool,
}

/// Largest group velocity `|∇_k ω_k|` over a grid.
pub fn max_group_velocity(spec: &LatticeSpec, grid: &MomentumGrid) -> f64 {
    grid.points()
        .map(|k| norm(&bose_z1::group_velocity(spec, &k)))
        .fold(0.0, f64::max)
}

fn norm(v: &Vector) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Whether a separation `s` is reachable within time `t` at the largest
/// group velocity of the dispersion.
pub fn light_cone(spec: &LatticeSpec, grid: &MomentumGrid, t: f64, s: &Displacement) -> Result<LightCone> {
    if t <= 0.0 {
        return Err(Error::config("t", "light cone needs t > 0"));
    }
    let v_max = max_group_velocity(spec, grid);
    let dist = s.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
    Ok(LightCone {
        v_max,
        inside: dist <= v_max * t,
    })
}

/// Nearest-neighbour ground-state parity correlation as a function of `J`.
pub fn parity_scan(spec: &LatticeSpec, grid: &MomentumGrid, js: &[f64], s: &Displacement) -> Result<Vec<(f64, f64)>> {
    js.iter()
        .map(|&j| {
            let g = bose_z1::ground_correlators(&spec.with_j(j), grid)?;
            Ok((j, parity_correlation(&g, s)?))
        })
        .collect()
}

/// Location of the largest ground-state parity correlation for
/// `J ∈ (0, J_crit)`, found by golden-section search.
pub fn parity_maximum(spec: &LatticeSpec, grid: &MomentumGrid, s: &Displacement) -> Result<(f64, f64)> {
    let f = |j: f64| -> Result<f64> {
        let g = bose_z1::ground_correlators(&spec.with_j(j), grid)?;
        parity_correlation(&g, s)
    };
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, bose_z1::j_critical(spec.u) * (1.0 - 1e-9));
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > 1e-10 * spec.u {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1)?;
        }
    }
    let j = 0.5 * (a + b);
    Ok((j, f(j)?))
}
