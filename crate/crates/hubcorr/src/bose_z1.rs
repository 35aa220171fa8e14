//! First-order bosonic correlations on the unit-filling Mott background.
//!
//! Each momentum mode carries four correlators between the hole operator
//! `h` (empty site) and the particle operator `p` (doubly occupied site):
//! `f11 = ⟨h†h⟩`, `f12 = ⟨h†p⟩`, `f21 = ⟨p†h⟩` and `f22 = ⟨p†p⟩`. To first
//! order in `1/Z` they obey
//!
//! ```text
//! i ∂t f12 =  (U − 3J T_k) f12 − √2 J T_k (f11 + f22 + 1)
//! i ∂t f21 = −(U − 3J T_k) f21 + √2 J T_k (f11 + f22 + 1)
//! i ∂t f11 = i ∂t f22 = √2 J T_k (f12 − f21)
//! ```
//!
//! with eigenfrequency `ω_k² = U² − 6JU T_k + J² T_k²` and the conserved
//! bilinear `f11 (f11 + 1) − f12 f21`.

use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::lattice::{Displacement, LatticeSpec, MomentumGrid, Vector};
use crate::ode;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Threshold on `|ω² t²|` below which the quench kernels use their Taylor
/// series instead of trigonometric evaluation.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Default RK4 step in units of `1/U`.
pub const DEFAULT_DT: f64 = 1e-3;

/// Default bound on `|f11|` beyond which evolutions stop.
pub const DEFAULT_SATURATION: f64 = 1e2;

/// Squared eigenfrequency of a mode together with its principal root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFrequency {
    /// `ω²`, negative for modes that grow exponentially.
    pub omega_sq: f64,
}

impl ModeFrequency {
    /// Principal square root with non-negative imaginary part.
    pub fn omega(&self) -> Complex64 {
        if self.omega_sq >= 0.0 {
            Complex64::new(self.omega_sq.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-self.omega_sq).sqrt())
        }
    }

    /// Whether the mode is dynamically unstable.
    pub fn is_unstable(&self) -> bool {
        self.omega_sq < 0.0
    }
}

/// Mode frequency `ω_k² = U² − 6JU T_k + J² T_k²`.
///
/// Near the gap closing it is evaluated as `(J T_k − U(3 − √8))(J T_k − U(3 + √8))`
/// so that the relative error stays small. Elsewhere the expanded form is used,
/// which is exact at `J = 0`.
pub fn omega_bose(j: f64, u: f64, t_k: f64) -> ModeFrequency {
    let x = j * t_k;
    let (lower, upper) = (j_critical(u), u * (3.0 + 8f64.sqrt()));
    let near_root = (x - lower).abs() < 0.5 * lower.abs() || (x - upper).abs() < 0.5 * lower.abs();
    let omega_sq = if near_root { (x - lower) * (x - upper) } else { u * u + x * (x - 6.0 * u) };
    ModeFrequency { omega_sq }
}

/// Hopping rate at which the `k = 0` gap closes, `U (3 − √8)`.
pub fn j_critical(u: f64) -> f64 {
    u * (3.0 - 8f64.sqrt())
}

/// Correlators of a single momentum mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseMode {
    pub f11: Complex64,
    pub f12: Complex64,
    pub f21: Complex64,
    pub f22: Complex64,
}

impl BoseMode {
    /// Uncorrelated Mott state.
    pub const ZERO: BoseMode = BoseMode {
        f11: ZERO,
        f12: ZERO,
        f21: ZERO,
        f22: ZERO,
    };

    /// Conserved bilinear `f11 (f11 + 1) − f12 f21`.
    pub fn invariant(&self) -> Complex64 {
        self.f11 * (self.f11 + 1.0) - self.f12 * self.f21
    }

    /// One-body density matrix in momentum space, `⟨b†b⟩_k`, using
    /// `b ≈ h + √2 p` on the unit-filling background.
    pub fn obdm(&self) -> f64 {
        (self.f11 + 2.0 * self.f22 + SQRT_2 * (self.f12 + self.f21)).re
    }

    fn as_array(&self) -> [Complex64; 4] {
        [self.f11, self.f12, self.f21, self.f22]
    }

    fn from_array(a: [Complex64; 4]) -> Self {
        BoseMode {
            f11: a[0],
            f12: a[1],
            f21: a[2],
            f22: a[3],
        }
    }
}

/// Momentum-resolved correlators on a grid.
#[derive(Debug, Clone)]
pub struct BoseCorrelators {
    /// Grid the modes live on.
    pub grid: MomentumGrid,
    /// Structure factor at every grid point.
    pub structure: Vec<f64>,
    /// Hopping rate used to produce the state.
    pub j: f64,
    /// Interaction strength.
    pub u: f64,
    /// Per-mode correlators in grid order.
    pub modes: Vec<BoseMode>,
    /// Time since the start of the evolution, in the units of `1/U`.
    pub time: f64,
}

/// Real-space correlators at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSpaceCorrelators {
    /// `⟨h†_μ h_ν⟩`.
    pub hh: f64,
    /// `⟨h†_μ p_ν⟩`.
    pub hp: Complex64,
    /// `⟨p†_μ p_ν⟩`.
    pub pp: f64,
    /// `⟨b†_μ b_ν⟩`.
    pub obdm: f64,
}

impl BoseCorrelators {
    /// Uncorrelated Mott state on a grid.
    pub fn mott(spec: &LatticeSpec, grid: &MomentumGrid) -> Self {
        Self::from_fn(spec, grid, 0.0, |_| BoseMode::ZERO)
    }

    fn from_fn<F: Fn(f64) -> BoseMode>(spec: &LatticeSpec, grid: &MomentumGrid, time: f64, f: F) -> Self {
        let structure = grid.structure_factors();
        let modes = structure.iter().map(|&t| f(t)).collect();
        BoseCorrelators {
            grid: grid.clone(),
            structure,
            j: spec.j,
            u: spec.u,
            modes,
            time,
        }
    }

    /// On-site depletion `f0 = f2 = (1/N) Σ_k f11_k`.
    pub fn depletion(&self) -> f64 {
        self.modes.iter().map(|m| m.f11.re).sum::<f64>() * self.grid.weight()
    }

    /// Mode frequencies on the grid.
    pub fn frequencies(&self) -> Vec<ModeFrequency> {
        self.structure
            .iter()
            .map(|&t| omega_bose(self.j, self.u, t))
            .collect()
    }

    /// Real-space correlators between two distinct sites separated by `s`.
    pub fn real_space(&self, s: &Displacement) -> RealSpaceCorrelators {
        let hh: Vec<Complex64> = self.modes.iter().map(|m| m.f11).collect();
        let hp: Vec<Complex64> = self.modes.iter().map(|m| m.f12).collect();
        let pp: Vec<Complex64> = self.modes.iter().map(|m| m.f22).collect();
        let ob: Vec<f64> = self.modes.iter().map(|m| m.obdm()).collect();
        RealSpaceCorrelators {
            hh: self.grid.fourier(&hh, s).re,
            hp: self.grid.fourier(&hp, s),
            pp: self.grid.fourier(&pp, s).re,
            obdm: self.grid.fourier_real(&ob, s),
        }
    }

    /// Largest deviation of the per-mode invariant from `reference`.
    pub fn invariant_drift(&self, reference: &BoseCorrelators) -> f64 {
        self.modes
            .iter()
            .zip(&reference.modes)
            .map(|(a, b)| (a.invariant() - b.invariant()).norm())
            .fold(0.0, f64::max)
    }
}

/// Ground-state correlators of a single mode.
pub fn ground_mode(j: f64, u: f64, t_k: f64) -> Result<BoseMode> {
    let w = omega_bose(j, u, t_k);
    let a = u - 3.0 * j * t_k;
    if w.omega_sq <= 0.0 || a <= 0.0 {
        return Err(Error::config(
            "J",
            format!("ground state requires the Mott phase, J = {j} is not below {}", j_critical(u)),
        ));
    }
    let omega = w.omega_sq.sqrt();
    let f11 = (a - omega) / (2.0 * omega);
    let f12 = SQRT_2 * j * t_k / omega;
    Ok(BoseMode {
        f11: f11.into(),
        f12: f12.into(),
        f21: f12.into(),
        f22: f11.into(),
    })
}

fn require_mott(spec: &LatticeSpec) -> Result<()> {
    if spec.j >= j_critical(spec.u) {
        return Err(Error::config(
            "J",
            format!(
                "requires J < J_crit = {}, got {}",
                j_critical(spec.u),
                spec.j
            ),
        ));
    }
    Ok(())
}

/// Ground-state correlators of the gapped Mott phase.
pub fn ground_correlators(spec: &LatticeSpec, grid: &MomentumGrid) -> Result<BoseCorrelators> {
    require_mott(spec)?;
    let mut out = BoseCorrelators::mott(spec, grid);
    for (m, &t) in out.modes.iter_mut().zip(&out.structure) {
        *m = ground_mode(spec.j, spec.u, t)?;
    }
    Ok(out)
}

/// `(1 − cos ωt)/ω²`, continued analytically to `ω² ≤ 0`.
pub fn one_minus_cos_kernel(omega_sq: f64, t: f64) -> f64 {
    let x = omega_sq * t * t;
    if x.abs() < SERIES_THRESHOLD {
        let t2 = t * t;
        t2 * (0.5 - x / 24.0 + x * x / 720.0 - x * x * x / 40320.0)
    } else if omega_sq > 0.0 {
        let w = omega_sq.sqrt();
        // 1 − cos = 2 sin²(ωt/2) avoids cancellation at small arguments
        2.0 * (0.5 * w * t).sin().powi(2) / omega_sq
    } else {
        let w = (-omega_sq).sqrt();
        2.0 * (0.5 * w * t).sinh().powi(2) / (-omega_sq)
    }
}

/// `sin(ωt)/ω`, continued analytically to `ω² ≤ 0`.
pub fn sin_kernel(omega_sq: f64, t: f64) -> f64 {
    let x = omega_sq * t * t;
    if x.abs() < SERIES_THRESHOLD {
        t * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0)
    } else if omega_sq > 0.0 {
        let w = omega_sq.sqrt();
        (w * t).sin() / w
    } else {
        let w = (-omega_sq).sqrt();
        (w * t).sinh() / w
    }
}

/// Correlators of one mode a time `t` after switching on `J` suddenly.
pub fn quench_mode(j: f64, u: f64, t_k: f64, t: f64) -> BoseMode {
    let w2 = omega_bose(j, u, t_k).omega_sq;
    let c = one_minus_cos_kernel(w2, t);
    let s = sin_kernel(w2, t);
    let jt = j * t_k;
    let f11 = 4.0 * jt * jt * c;
    let re12 = SQRT_2 * jt * (u - 3.0 * jt) * c;
    let im12 = SQRT_2 * jt * s;
    BoseMode {
        f11: f11.into(),
        f12: Complex64::new(re12, im12),
        f21: Complex64::new(re12, -im12),
        f22: f11.into(),
    }
}

/// Correlators a time `t` after the sudden switch `J(t) = J Θ(t)`.
pub fn quench_correlators(spec: &LatticeSpec, grid: &MomentumGrid, t: f64) -> BoseCorrelators {
    BoseCorrelators::from_fn(spec, grid, t, |tk| quench_mode(spec.j, spec.u, tk, t))
}

/// Off-site one-body density matrix `⟨b†_μ b_ν⟩` after a sudden quench.
pub fn quench_obdm(spec: &LatticeSpec, grid: &MomentumGrid, t: f64, s: &Displacement) -> f64 {
    let values: Vec<f64> = grid
        .structure_factors()
        .iter()
        .map(|&tk| {
            let w2 = omega_bose(spec.j, spec.u, tk).omega_sq;
            4.0 * spec.j * spec.u * tk * one_minus_cos_kernel(w2, t)
        })
        .collect();
    grid.fourier_real(&values, s)
}

/// Momentum distribution `P(k) = (1/N²) Σ_{μν} e^{ik(x_μ − x_ν)} ⟨b†_μ b_ν⟩`.
///
/// The on-site density is fixed to unity, so only the off-site part of the
/// momentum-space density matrix contributes structure.
pub fn momentum_distribution(corr: &BoseCorrelators) -> Vec<f64> {
    let ob: Vec<f64> = corr.modes.iter().map(|m| m.obdm()).collect();
    let mean = ob.iter().sum::<f64>() * corr.grid.weight();
    ob.iter()
        .map(|&o| (1.0 + o - mean) * corr.grid.weight())
        .collect()
}

/// Long-time averages of the quench correlators.
pub fn quasi_equilibrium(spec: &LatticeSpec, grid: &MomentumGrid) -> Result<BoseCorrelators> {
    require_mott(spec)?;
    Ok(BoseCorrelators::from_fn(spec, grid, f64::INFINITY, |tk| {
        let w2 = omega_bose(spec.j, spec.u, tk).omega_sq;
        let jt = spec.j * tk;
        let f11 = 4.0 * jt * jt / w2;
        let f12 = SQRT_2 * jt * (spec.u - 3.0 * jt) / w2;
        BoseMode {
            f11: f11.into(),
            f12: f12.into(),
            f21: f12.into(),
            f22: f11.into(),
        }
    }))
}

/// Temperature whose thermal doublon density matches a depletion `d`,
/// from `e^{−U/2T} = 2d`.
pub fn effective_temperature(u: f64, d: f64) -> Result<f64> {
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::numeric(
            "effective_temperature",
            format!("depletion must lie in (0, 1/2), got {d}"),
        ));
    }
    Ok(0.5 * u / (1.0 / (2.0 * d)).ln())
}

/// Thermal on-site occupation probabilities `(p0, p1, p2)` at inverse
/// temperature `β` with chemical potential `U/2`.
pub fn thermal_onsite(beta: f64, u: f64) -> (f64, f64, f64) {
    let x = (-0.5 * beta * u).exp();
    (0.5 * x, 1.0 - x, 0.5 * x)
}

/// Thermal `⟨h†_μ p_ν⟩` to first order in `J`.
///
/// `⟨h†h⟩` and `⟨p†p⟩` vanish at this order.
pub fn thermal_correlator_first_order(spec: &LatticeSpec, mu: usize, nu: usize) -> Complex64 {
    if mu == nu {
        return ZERO;
    }
    let t = if spec.neighbors(mu).contains(&nu) { 1.0 } else { 0.0 };
    Complex64::new(SQRT_2 * spec.j * t / (spec.coordination() as f64 * spec.u), 0.0)
}

/// Right-hand side of the first-order equations for one mode.
pub fn mode_rhs(j: f64, u: f64, t_k: f64, y: &[Complex64; 4]) -> [Complex64; 4] {
    let mi = Complex64::new(0.0, -1.0);
    let a = u - 3.0 * j * t_k;
    let b = SQRT_2 * j * t_k;
    let src = y[0] + y[3] + 1.0;
    let d11 = mi * b * (y[1] - y[2]);
    [
        d11,
        mi * (a * y[1] - b * src),
        mi * (-a * y[2] + b * src),
        d11,
    ]
}

/// Options of the RK4 evolver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Step size.
    pub dt: f64,
    /// Largest tolerated change of the conserved bilinear.
    pub drift_tolerance: f64,
    /// Largest tolerated `|f11|`.
    pub saturation: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            dt: DEFAULT_DT,
            drift_tolerance: 1e-8,
            saturation: DEFAULT_SATURATION,
        }
    }
}

/// Outcome of evolving one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEvolution {
    pub mode: BoseMode,
    /// Largest deviation of the invariant observed along the way.
    pub drift: f64,
}

/// Evolves one mode with a time-dependent hopping `J(t)` and structure
/// factor `T_k(t)`.
pub fn evolve_mode<J, T>(
    initial: BoseMode,
    u: f64,
    j_of_t: J,
    t_of_t: T,
    t0: f64,
    t1: f64,
    opts: &EvolveOptions,
) -> Result<ModeEvolution>
where
    J: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    let inv0 = initial.invariant();
    let mut drift: f64 = 0.0;
    let mut saturated = None;
    let f = |t: f64, y: &[Complex64; 4]| mode_rhs(j_of_t(t), u, t_of_t(t), y);
    let y = ode::integrate(f, t0, initial.as_array(), t1, opts.dt, |t, y| {
        let m = BoseMode::from_array(*y);
        drift = drift.max((m.invariant() - inv0).norm());
        if m.f11.norm() > opts.saturation {
            saturated = Some(t);
            return false;
        }
        true
    });
    if let Some(t) = saturated {
        return Err(Error::numeric(
            "evolve_z1",
            format!(
                "|f11| exceeded the saturation bound {} at t = {t}; the expansion is no longer valid",
                opts.saturation
            ),
        ));
    }
    if drift > opts.drift_tolerance {
        return Err(Error::numeric(
            "evolve_z1",
            format!(
                "conserved bilinear drifted by {drift:e} > {:e}; reduce dt",
                opts.drift_tolerance
            ),
        ));
    }
    Ok(ModeEvolution {
        mode: BoseMode::from_array(y),
        drift,
    })
}

/// Evolves every mode under a hopping ramp `J(t)` from `initial.time` to
/// `t_final`. Returns the final correlators and the largest invariant drift.
pub fn evolve_z1<J>(
    initial: &BoseCorrelators,
    ramp: J,
    t_final: f64,
    opts: &EvolveOptions,
) -> Result<(BoseCorrelators, f64)>
where
    J: Fn(f64) -> f64,
{
    let mut out = initial.clone();
    let mut drift: f64 = 0.0;
    for (m, &tk) in out.modes.iter_mut().zip(&initial.structure) {
        let r = evolve_mode(*m, initial.u, &ramp, |_| tk, initial.time, t_final, opts)?;
        *m = r.mode;
        drift = drift.max(r.drift);
    }
    out.time = t_final;
    out.j = ramp(t_final);
    Ok((out, drift))
}

/// Group velocity `∂ω/∂k` of the first-order dispersion.
pub fn group_velocity(spec: &LatticeSpec, k: &Vector) -> Vector {
    let tk = spec.structure_factor(k);
    let w = omega_bose(spec.j, spec.u, tk).omega_sq.max(0.0).sqrt();
    let grad = crate::lattice::structure_factor_gradient(spec.dimension, k);
    let dw_dt = if w > 0.0 {
        (-6.0 * spec.j * spec.u + 2.0 * spec.j * spec.j * tk) / (2.0 * w)
    } else {
        0.0
    };
    let mut v = [0.0; 3];
    for (vi, gi) in v.iter_mut().zip(grad) {
        *vi = dw_dt * gi;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{along_x, LatticeSpec};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn omega_examples() {
        assert_abs_diff_eq!(omega_bose(0.0, 1.0, 0.3).omega().re, 1.0);
        let jc = j_critical(1.0);
        assert_abs_diff_eq!(omega_bose(jc, 1.0, 1.0).omega_sq, 0.0, epsilon = 1e-14);
        let w = omega_bose(1.0, 1.0, 1.0);
        assert_abs_diff_eq!(w.omega_sq, -4.0);
        assert!(w.is_unstable());
        assert_abs_diff_eq!(w.omega().im, 2.0);
    }

    #[test]
    fn critical_coupling() {
        assert_abs_diff_eq!(j_critical(1.0), 0.171_572_875_253_809_9, epsilon = 1e-15);
        assert_abs_diff_eq!(j_critical(2.0), 0.343_145_750_507_619_8, epsilon = 1e-15);
    }

    #[test]
    fn ground_state_vanishes_at_zero_hopping() {
        let spec = LatticeSpec::chain(16, 0.0, 1.0).unwrap();
        let g = ground_correlators(&spec, &spec.momentum_grid().unwrap()).unwrap();
        assert!(g.modes.iter().all(|m| *m == BoseMode::ZERO));
        assert_eq!(g.depletion(), 0.0);
    }

    #[test]
    fn ground_state_rejects_superfluid() {
        let spec = LatticeSpec::chain(16, 0.2, 1.0).unwrap();
        assert!(ground_correlators(&spec, &spec.momentum_grid().unwrap()).is_err());
    }

    #[test]
    fn ground_state_is_stationary() {
        for tk in [-1.0, -0.3, 0.0, 0.4, 1.0] {
            let (j, u) = (0.12, 1.0);
            let m = ground_mode(j, u, tk).unwrap();
            let d = mode_rhs(j, u, tk, &m.as_array());
            for x in d {
                assert!(x.norm() < 1e-12);
            }
            let stat = SQRT_2 * j * tk * (2.0 * m.f11 + 1.0) / (u - 3.0 * j * tk);
            assert_abs_diff_eq!((m.f12 - stat).norm(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(m.invariant().norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn ground_nearest_neighbour_hp_small_j() {
        // ⟨h†p⟩ between neighbours tends to √2 J/(Z U)
        for d in 1..=3 {
            let j = 1e-4;
            let spec = LatticeSpec::cubic(d, 16, j, 1.0).unwrap();
            let g = ground_correlators(&spec, &spec.momentum_grid().unwrap()).unwrap();
            let hp = g.real_space(&along_x(1)).hp.re;
            let want = SQRT_2 * j / (2.0 * d as f64);
            assert!((hp - want).abs() < 10.0 * j * j, "d={d}: {hp} vs {want}");
            let thermal = thermal_correlator_first_order(&spec, 0, 1).re;
            assert_abs_diff_eq!(thermal, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn quench_starts_from_mott() {
        let spec = LatticeSpec::chain(8, 0.3, 1.0).unwrap();
        let q = quench_correlators(&spec, &spec.momentum_grid().unwrap(), 0.0);
        assert!(q.modes.iter().all(|m| m.f11.norm() == 0.0 && m.f12.norm() == 0.0));
    }

    #[test]
    fn kernels_are_continuous_through_zero() {
        for t in [0.5, 3.0, 20.0] {
            for w2 in [1e-8] {
                let a = one_minus_cos_kernel(w2, t);
                let b = one_minus_cos_kernel(-w2, t);
                // leading correction is of relative order ω²t²
                let tol = w2 * t * t * a.abs();
                assert!((a - b).abs() <= tol);
                let a = sin_kernel(w2, t);
                let b = sin_kernel(-w2, t);
                assert!((a - b).abs() <= w2 * t * t * a.abs());
            }
            assert_abs_diff_eq!(one_minus_cos_kernel(0.0, t), t * t / 2.0);
        }
    }

    #[test]
    fn kernel_series_switch_is_smooth() {
        let t = 1.0;
        for w2 in [0.99e-4, 1.01e-4, -0.99e-4, -1.01e-4] {
            let w = Complex64::new(w2, 0.0).sqrt();
            let exact = ((1.0 - (w * t).cos()) / w2).re;
            assert_abs_diff_eq!(one_minus_cos_kernel(w2, t), exact, epsilon = 1e-12);
            let exact_s = ((w * t).sin() / w).re;
            assert_abs_diff_eq!(sin_kernel(w2, t), exact_s, epsilon = 1e-12);
        }
    }

    #[test]
    fn obdm_vanishes_without_hopping() {
        let spec = LatticeSpec::chain(16, 0.0, 1.0).unwrap();
        let grid = spec.momentum_grid().unwrap();
        for t in [0.0, 1.0, 10.0] {
            assert_eq!(quench_obdm(&spec, &grid, t, &along_x(1)), 0.0);
        }
        let spec = spec.with_j(0.1);
        assert_eq!(quench_obdm(&spec, &grid, 0.0, &along_x(2)), 0.0);
    }

    #[test]
    fn quench_obdm_matches_mode_combination() {
        let spec = LatticeSpec::chain(32, 0.1, 1.0).unwrap();
        let grid = spec.momentum_grid().unwrap();
        let q = quench_correlators(&spec, &grid, 3.0);
        for s in 1..4 {
            let a = quench_obdm(&spec, &grid, 3.0, &along_x(s));
            let b = q.real_space(&along_x(s)).obdm;
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn momentum_distribution_examples() {
        let spec = LatticeSpec::chain(16, 0.0, 1.0).unwrap();
        let grid = spec.momentum_grid().unwrap();
        let p = momentum_distribution(&BoseCorrelators::mott(&spec, &grid));
        assert!(p.iter().all(|&x| (x - 1.0 / 16.0).abs() < 1e-15));
        let spec = spec.with_j(0.1);
        let g = ground_correlators(&spec, &grid).unwrap();
        let p = momentum_distribution(&g);
        assert!(p[0] > p[8]);
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn superfluid_quench_grows_fastest_at_zero_momentum() {
        let spec = LatticeSpec::chain(32, 0.3, 1.0).unwrap();
        let grid = spec.momentum_grid().unwrap();
        let early = momentum_distribution(&quench_correlators(&spec, &grid, 2.0));
        let late = momentum_distribution(&quench_correlators(&spec, &grid, 6.0));
        let growth: Vec<f64> = early.iter().zip(&late).map(|(a, b)| b - a).collect();
        let imax = growth
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(imax, 0);
    }

    #[test]
    fn effective_temperature_examples() {
        let d = (-2.0f64).exp() / 2.0;
        assert_abs_diff_eq!(effective_temperature(1.0, d).unwrap(), 0.25, epsilon = 1e-14);
        assert!(effective_temperature(1.0, 1e-300).unwrap() < 1e-3);
        assert!(effective_temperature(1.0, 0.5).is_err());
        assert!(effective_temperature(1.0, 0.0).is_err());
    }

    #[test]
    fn thermal_onsite_examples() {
        let (p0, p1, p2) = thermal_onsite(1e6, 1.0);
        assert_eq!((p0, p1, p2), (0.0, 1.0, 0.0));
        let (p0, _, _) = thermal_onsite(2.0 * 2f64.ln(), 1.0);
        assert_abs_diff_eq!(p0, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn zero_ramp_keeps_correlators() {
        let spec = LatticeSpec::chain(8, 0.1, 1.0).unwrap();
        let grid = spec.momentum_grid().unwrap();
        let g = ground_correlators(&spec, &grid).unwrap();
        let (e, _) = evolve_z1(&g, |_| 0.0, 1.0, &EvolveOptions::default()).unwrap();
        // with J = 0 only the phases of f12, f21 rotate; f11 stays fixed
        for (a, b) in e.modes.iter().zip(&g.modes) {
            assert_abs_diff_eq!((a.f11 - b.f11).norm(), 0.0, epsilon = 1e-14);
        }
        let m = BoseCorrelators::mott(&spec, &grid);
        let (e, _) = evolve_z1(&m, |_| 0.0, 1.0, &EvolveOptions::default()).unwrap();
        assert!(e.modes.iter().all(|x| *x == BoseMode::ZERO));
    }

    #[test]
    fn superfluid_saturation_guard() {
        let spec = LatticeSpec::chain(8, 1.0, 1.0).unwrap();
        let grid = spec.momentum_grid().unwrap();
        let m = BoseCorrelators::mott(&spec, &grid);
        let err = evolve_z1(&m, |_| 1.0, 50.0, &EvolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Numeric { .. }));
    }

    proptest! {
        #[test]
        fn quench_closed_form_conserves_invariant(j in 0.0f64..0.5, tk in -1.0f64..1.0, t in 0.0f64..20.0) {
            let m = quench_mode(j, 1.0, tk, t);
            let scale = 1.0 + m.f11.norm().powi(2);
            prop_assert!(m.invariant().norm() <= 1e-12 * scale);
            prop_assert_eq!(m.f11, m.f22);
            prop_assert!(m.f11.re >= 0.0);
        }

        #[test]
        fn hermitian_real_space(j in 0.0f64..0.15, s in 1i64..5) {
            let spec = LatticeSpec::chain(12, j, 1.0).unwrap();
            let grid = spec.momentum_grid().unwrap();
            let q = quench_correlators(&spec, &grid, 2.5);
            let ph: Vec<Complex64> = q.modes.iter().map(|m| m.f21).collect();
            // ⟨p†_ν h_μ⟩ at separation −s equals the conjugate of ⟨h†_μ p_ν⟩ at s
            let a = q.real_space(&along_x(s)).hp;
            let b = grid.fourier(&ph, &along_x(-s));
            prop_assert!((a - b.conj()).norm() < 1e-13);
        }
    }
}
