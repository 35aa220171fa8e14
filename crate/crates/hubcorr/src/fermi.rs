//! First-order fermionic charge-mode dynamics on the Néel background.
//!
//! At half filling only four correlators per momentum mode carry source
//! terms, written here as `f00 = f^{0_A0_A}`, `f01 = f^{0_A1_B}`,
//! `f10 = f^{1_B0_A}` and `f11 = f^{1_B1_B}`. With `a = J T_k` they obey
//!
//! ```text
//! i ∂t f00 = a (f10 − f01)
//! i ∂t f01 = a (f11 − f00) + U f01 − a
//! i ∂t f10 = a (f00 − f11) − U f10 + a
//! i ∂t f11 = a (f01 − f10)
//! ```
//!
//! and conserve `(f11 − 1) f11 + f01 f10`. The remaining correlator
//! families have no sources and stay zero; they are integrated alongside on
//! request as a regression check. The module also covers the staggered
//! field that gaps the soft modes and the Dirac-like pair creation in a
//! tilted lattice.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::bose_tilt::{tanh_ramp, PulseProfile, TiltOptions};
use crate::error::{Error, Result};
use crate::lattice::{Displacement, LatticeSpec, MomentumGrid, Vector};
use crate::ode;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Charge-mode frequency `ω_k = √(U² + 4J²T_k²)`.
pub fn omega_fermi(j: f64, u: f64, t_k: f64) -> f64 {
    (u * u + 4.0 * j * j * t_k * t_k).sqrt()
}

/// Frequencies `ω± = (U ± √(U² + 4J²T_k²))/2` of the sourceless modes,
/// returned as `(ω⁻, ω⁺)`. The soft root `ω⁻ ≈ −J²T_k²/U` for small `J`.
pub fn soft_hard_modes(j: f64, u: f64, t_k: f64) -> (f64, f64) {
    let r = omega_fermi(j, u, t_k);
    // ω⁻ = −J²T²·4/(2(U + r)) avoids cancellation for small J
    let minus = -2.0 * j * j * t_k * t_k / (u + r);
    (minus, 0.5 * (u + r))
}

/// Generator `H` of the homogeneous charge system `i ẏ = H y` with
/// `y = (f00 + ½, f01, f10, f11 − ½)` and `a = J T_k`.
///
/// `H` is real symmetric, so the evolution is unitary.
pub fn charge_generator(a: f64, u: f64) -> [[f64; 4]; 4] {
    [[0.0, -a, a, 0.0], [-a, u, 0.0, a], [a, 0.0, -u, -a], [0.0, a, -a, 0.0]]
}

/// A staggered field `±a` on the two sublattices of a bipartite lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaggeredField {
    pub a: f64,
}

impl StaggeredField {
    /// Validated field on the lattice `spec`.
    pub fn new(a: f64, spec: &LatticeSpec) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::config("a", "staggered amplitude must be non-negative"));
        }
        if !spec.is_bipartite() {
            return Err(Error::config(
                "extent",
                "a staggered field needs a bipartite lattice (even periodic extents)",
            ));
        }
        Ok(StaggeredField { a })
    }
}

/// Mode frequencies in a staggered field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaggeredFrequencies {
    /// `(ω⁻, ω⁺) = ((U + a ∓ √(4J²T² + (U − a)²))/2)`.
    pub soft: (f64, f64),
    /// Charge frequency `√(4J²T² + (U + a)²)`.
    pub charge: f64,
}

/// Soft and charge frequencies with a staggered field `a`.
pub fn staggered_frequencies(j: f64, u: f64, a: f64, t_k: f64) -> StaggeredFrequencies {
    let hop = 4.0 * j * j * t_k * t_k;
    let r = (hop + (u - a).powi(2)).sqrt();
    StaggeredFrequencies {
        soft: (0.5 * (u + a - r), 0.5 * (u + a + r)),
        charge: (hop + (u + a).powi(2)).sqrt(),
    }
}

/// The four sourced correlators of one momentum mode.
///
/// `f00` and `f11` are real; `f10 = f01*` for states reached from the Néel
/// state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeMode {
    pub f00: f64,
    pub f01: Complex64,
    pub f10: Complex64,
    pub f11: f64,
}

impl ChargeMode {
    /// Uncorrelated Néel state.
    pub const ZERO: ChargeMode = ChargeMode {
        f00: 0.0,
        f01: ZERO,
        f10: ZERO,
        f11: 0.0,
    };

    /// Conserved bilinear `(f11 − 1) f11 + f01 f10`.
    pub fn invariant(&self) -> Complex64 {
        (self.f11 - 1.0) * self.f11 + self.f01 * self.f10
    }

    fn as_array(&self) -> [Complex64; 4] {
        [self.f00.into(), self.f01, self.f10, self.f11.into()]
    }

    fn from_array(y: &[Complex64; 4]) -> Self {
        ChargeMode {
            f00: y[0].re,
            f01: y[1],
            f10: y[2],
            f11: y[3].re,
        }
    }
}

/// Charge correlators on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiCorrelators {
    pub grid: MomentumGrid,
    /// `T_k` at every grid point.
    pub structure: Vec<f64>,
    pub j: f64,
    pub u: f64,
    pub modes: Vec<ChargeMode>,
    pub time: f64,
}

/// Real-space charge correlators at one displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiRealSpace {
    pub f00: Complex64,
    pub f01: Complex64,
    pub f10: Complex64,
    pub f11: Complex64,
}

impl FermiCorrelators {
    fn from_fn<F: Fn(f64) -> ChargeMode>(spec: &LatticeSpec, grid: &MomentumGrid, time: f64, f: F) -> Self {
        let structure = grid.structure_factors();
        let modes = structure.iter().map(|&t| f(t)).collect();
        FermiCorrelators {
            grid: grid.clone(),
            structure,
            j: spec.j,
            u: spec.u,
            modes,
            time,
        }
    }

    /// Uncorrelated Néel state on `grid`.
    pub fn neel(spec: &LatticeSpec, grid: &MomentumGrid) -> Self {
        Self::from_fn(spec, grid, 0.0, |_| ChargeMode::ZERO)
    }

    /// Double occupancy `⟨n↑n↓⟩ = (1/N) Σ_k f11_k`.
    pub fn double_occupancy(&self) -> f64 {
        self.modes.iter().map(|m| m.f11).sum::<f64>() * self.grid.weight()
    }

    /// Empty-site probability `⟨n̄↑n̄↓⟩ = −(1/N) Σ_k f00_k`.
    pub fn holon_density(&self) -> f64 {
        -self.modes.iter().map(|m| m.f00).sum::<f64>() * self.grid.weight()
    }

    /// Correlators at lattice displacement `s`.
    pub fn real_space(&self, s: &Displacement) -> FermiRealSpace {
        let pick = |f: &dyn Fn(&ChargeMode) -> Complex64| -> Complex64 {
            let v: Vec<Complex64> = self.modes.iter().map(f).collect();
            self.grid.fourier(&v, s)
        };
        FermiRealSpace {
            f00: pick(&|m| m.f00.into()),
            f01: pick(&|m| m.f01),
            f10: pick(&|m| m.f10),
            f11: pick(&|m| m.f11.into()),
        }
    }

    /// Mode frequencies `ω_k`.
    pub fn frequencies(&self) -> Vec<f64> {
        self.structure.iter().map(|&t| omega_fermi(self.j, self.u, t)).collect()
    }
}

/// Ground-state mode: `f11 = −f00 = ½(1 − U/ω)`, `f01 = f10 = JT/ω`.
pub fn ground_mode(j: f64, u: f64, t_k: f64) -> ChargeMode {
    let w = omega_fermi(j, u, t_k);
    // ½(1 − U/ω) = 2J²T²/(ω(ω + U)) without cancellation
    let f11 = 2.0 * j * j * t_k * t_k / (w * (w + u));
    let f10 = Complex64::new(j * t_k / w, 0.0);
    ChargeMode {
        f00: -f11,
        f01: f10,
        f10,
        f11,
    }
}

/// Ground-state charge correlators, reached by switching on `J`
/// adiabatically from the Néel state.
pub fn ground_correlators_fermi(spec: &LatticeSpec, grid: &MomentumGrid) -> Result<FermiCorrelators> {
    spec.validate()?;
    let (j, u) = (spec.j, spec.u);
    if u <= 0.0 {
        return Err(Error::config("U", "must be positive"));
    }
    Ok(FermiCorrelators::from_fn(spec, grid, 0.0, |t| ground_mode(j, u, t)))
}

/// Mode at time `t` after switching on `J` suddenly in the Néel state:
/// `f11 = 2a²(1 − cos ωt)/ω²`, `f10 = aU(1 − cos ωt)/ω² − i a sin(ωt)/ω`.
pub fn quench_mode(j: f64, u: f64, t_k: f64, t: f64) -> ChargeMode {
    let a = j * t_k;
    let w = omega_fermi(j, u, t_k);
    let one_minus_cos = 2.0 * (0.5 * w * t).sin().powi(2);
    let f11 = 2.0 * a * a * one_minus_cos / (w * w);
    let f10 = Complex64::new(a * u * one_minus_cos / (w * w), -a * (w * t).sin() / w);
    ChargeMode {
        f00: -f11,
        f01: f10.conj(),
        f10,
        f11,
    }
}

/// Long-time average of [`quench_mode`]: the oscillating terms dropped.
pub fn quench_average_mode(j: f64, u: f64, t_k: f64) -> ChargeMode {
    let a = j * t_k;
    let w2 = u * u + 4.0 * a * a;
    let f11 = 2.0 * a * a / w2;
    let f10 = Complex64::new(a * u / w2, 0.0);
    ChargeMode {
        f00: -f11,
        f01: f10,
        f10,
        f11,
    }
}

/// Closed-form charge correlators at time `t ≥ 0` after a sudden quench
/// from the Néel state.
pub fn quench_correlators_fermi(spec: &LatticeSpec, grid: &MomentumGrid, t: f64) -> Result<FermiCorrelators> {
    spec.validate()?;
    if !(t >= 0.0) {
        return Err(Error::config("t", "time must be non-negative"));
    }
    let (j, u) = (spec.j, spec.u);
    Ok(FermiCorrelators::from_fn(spec, grid, t, |tk| quench_mode(j, u, tk, t)))
}

/// Long-time averages of the quench correlators.
pub fn quench_average_fermi(spec: &LatticeSpec, grid: &MomentumGrid) -> Result<FermiCorrelators> {
    spec.validate()?;
    let (j, u) = (spec.j, spec.u);
    Ok(FermiCorrelators::from_fn(spec, grid, f64::INFINITY, |tk| quench_average_mode(j, u, tk)))
}

/// Right-hand side of the sourced charge equations with `a = J T_k`.
pub fn charge_rhs(a: f64, u: f64, y: &[Complex64; 4]) -> [Complex64; 4] {
    let mi = Complex64::new(0.0, -1.0);
    [
        mi * (a * (y[2] - y[1])),
        mi * (a * (y[3] - y[0]) + u * y[1] - a),
        mi * (a * (y[0] - y[3]) - u * y[2] + a),
        mi * (a * (y[1] - y[2])),
    ]
}

/// Right-hand side of the sourceless correlator families.
///
/// Layout: four decoupled correlators with frequencies `−U, +U, 0, 0`,
/// followed by four coupled pairs
/// `(f^{0_A0_B}, f^{1_B0_B})`, `(f^{0_B0_A}, f^{0_B1_B})`,
/// `(f^{1_B1_A}, f^{0_A1_A})`, `(f^{1_A1_B}, f^{1_A0_A})`.
pub fn sourceless_rhs(a: f64, u: f64, y: &[Complex64; 12]) -> [Complex64; 12] {
    let mi = Complex64::new(0.0, -1.0);
    let h = [
        -u * y[0],
        u * y[1],
        ZERO,
        ZERO,
        a * y[5],
        a * y[4] - u * y[5],
        -a * y[7],
        -a * y[6] + u * y[7],
        a * y[9],
        a * y[8] + u * y[9],
        -a * y[11],
        -a * y[10] - u * y[11],
    ];
    h.map(|v| mi * v)
}

/// Options of [`evolve_charge_modes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeEvolveOptions {
    /// RK4 step.
    pub dt: f64,
    /// Largest tolerated change of the conserved bilinear per unit time.
    pub drift_rate_tolerance: f64,
    /// Also integrate the sourceless families from zero.
    pub track_sourceless: bool,
}

impl Default for ChargeEvolveOptions {
    fn default() -> Self {
        ChargeEvolveOptions {
            dt: 1e-3,
            drift_rate_tolerance: 1e-10,
            track_sourceless: false,
        }
    }
}

/// Outcome of [`evolve_charge_modes`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeEvolution {
    pub correlators: FermiCorrelators,
    /// Largest change of the conserved bilinear over all modes and times.
    pub drift: f64,
    /// Largest magnitude reached by any sourceless correlator, zero when
    /// not tracked.
    pub sourceless_max: f64,
    /// Smallest and largest `f11` seen along the evolution.
    pub f11_range: (f64, f64),
}

/// Integrates the sourced charge equations with RK4 from `initial.time` to
/// `t_final` for a hopping ramp `J(t)` and an optional uniform tilt, which
/// enters through the Peierls shift `T_k(t) = T_{k+A(t)}`.
pub fn evolve_charge_modes<R>(
    spec: &LatticeSpec,
    initial: &FermiCorrelators,
    ramp: R,
    tilt: Option<&PulseProfile>,
    t_final: f64,
    opts: &ChargeEvolveOptions,
) -> Result<ChargeEvolution>
where
    R: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(opts.dt > 0.0) {
        return Err(Error::config("dt", "must be positive"));
    }
    if let Some(p) = tilt {
        p.validate()?;
    }
    let t0 = initial.time;
    if !(t_final >= t0) {
        return Err(Error::config("t_final", "must not precede the initial time"));
    }
    let u = spec.u;
    let d = spec.dimension;
    let points: Vec<Vector> = initial.grid.points().collect();
    let mut modes = Vec::with_capacity(points.len());
    let mut drift: f64 = 0.0;
    let mut sourceless_max: f64 = 0.0;
    let mut f11_range = (f64::INFINITY, f64::NEG_INFINITY);
    for (k, start) in points.iter().zip(&initial.modes) {
        let t_of = |t: f64| match tilt {
            Some(p) => crate::lattice::structure_factor(d, &p.shifted(k, t)),
            None => crate::lattice::structure_factor(d, k),
        };
        let rhs = |t: f64, y: &[Complex64; 16]| {
            let a = ramp(t) * t_of(t);
            let mut out = [ZERO; 16];
            let y4 = [y[0], y[1], y[2], y[3]];
            out[..4].copy_from_slice(&charge_rhs(a, u, &y4));
            if opts.track_sourceless {
                let mut y12 = [ZERO; 12];
                y12.copy_from_slice(&y[4..]);
                out[4..].copy_from_slice(&sourceless_rhs(a, u, &y12));
            }
            out
        };
        let mut y0 = [ZERO; 16];
        y0[..4].copy_from_slice(&start.as_array());
        let inv0 = start.invariant();
        let mut mode_drift: f64 = 0.0;
        let mut seen = (start.f11, start.f11);
        let mut off: f64 = 0.0;
        let y = ode::integrate(rhs, t0, y0, t_final, opts.dt, |_, y| {
            let m = ChargeMode::from_array(&[y[0], y[1], y[2], y[3]]);
            mode_drift = mode_drift.max((m.invariant() - inv0).norm());
            seen = (seen.0.min(m.f11), seen.1.max(m.f11));
            if opts.track_sourceless {
                off = y[4..].iter().fold(off, |acc, v| acc.max(v.norm()));
            }
            true
        });
        drift = drift.max(mode_drift);
        sourceless_max = sourceless_max.max(off);
        f11_range = (f11_range.0.min(seen.0), f11_range.1.max(seen.1));
        modes.push(ChargeMode::from_array(&[y[0], y[1], y[2], y[3]]));
    }
    let span = (t_final - t0).max(1.0);
    if drift > opts.drift_rate_tolerance * span {
        return Err(Error::numeric(
            "evolve_charge_modes",
            format!("conserved bilinear drifted by {drift:e}; reduce dt"),
        ));
    }
    Ok(ChargeEvolution {
        correlators: FermiCorrelators {
            grid: initial.grid.clone(),
            structure: initial.structure.clone(),
            j: ramp(t_final),
            u,
            modes,
            time: t_final,
        },
        drift,
        sourceless_max,
        f11_range,
    })
}

/// Default tilt options for fermions: `dt = 10⁻³/U` and hopping ramps of
/// `60/U`. The charge gap never drops below `U`, so these ramps are
/// adiabatic for every `J`.
pub fn fermi_tilt_options(u: f64) -> TiltOptions {
    TiltOptions {
        ramp_time: 60.0 / u,
        ..TiltOptions::for_u(u)
    }
}

/// Fermionic Bogoliubov coefficients of one mode, `|α|² + |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracCoefficients {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub normalization_residual: f64,
}

impl DiracCoefficients {
    /// Pair-creation probability `|β|²`.
    pub fn beta_sq(&self) -> f64 {
        self.beta.norm_sqr()
    }
}

/// Integrates the two-component system
/// `i∂t p = (U/2) p − J T_k(t) h`, `i∂t h = −(U/2) h − J T_k(t) p` through
/// the pulse, with the hopping switched on before and off after it, and
/// projects onto the `J = 0` particle and hole states.
pub fn integrate_dirac_modes(
    spec: &LatticeSpec,
    pulse: &PulseProfile,
    k: &Vector,
    t_span: (f64, f64),
    opts: &TiltOptions,
) -> Result<DiracCoefficients> {
    let (t0, t1) = t_span;
    let r = opts.ramp_time;
    let (start, end) = (t0 - r, t1 + r);
    let (j, u, d) = (spec.j, spec.u, spec.dimension);
    let hop = move |t: f64| -> f64 {
        if r <= 0.0 {
            return if (t0..=t1).contains(&t) { j } else { 0.0 };
        }
        j * tanh_ramp((t - start) / r) * tanh_ramp((end - t) / r)
    };
    let rhs = |t: f64, y: &[Complex64; 2]| {
        let a = hop(t) * crate::lattice::structure_factor(d, &pulse.shifted(k, t));
        let mi = Complex64::new(0.0, -1.0);
        [mi * (0.5 * u * y[0] - a * y[1]), mi * (-0.5 * u * y[1] - a * y[0])]
    };
    let y0 = [ZERO, Complex64::new(1.0, 0.0)];
    let y = ode::integrate(rhs, start, y0, end, opts.dt, |_, _| true);
    let phase = 0.5 * u * (end - start);
    let beta = y[0] * Complex64::from_polar(1.0, phase);
    let alpha = y[1] * Complex64::from_polar(1.0, -phase);
    let residual = (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs();
    if residual > opts.tolerance {
        return Err(Error::numeric(
            "integrate_dirac_modes",
            format!("normalisation residual {residual:e}; reduce dt"),
        ));
    }
    Ok(DiracCoefficients {
        alpha,
        beta,
        normalization_residual: residual,
    })
}

/// Pair creation over a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracPairCreation {
    pub beta_sq: Vec<f64>,
    pub max_residual: f64,
    /// `⟨n↑n↓⟩ = (1/N) Σ_k |β_k|²`.
    pub double_occupancy: f64,
}

/// Pair creation by `pulse` for every grid momentum.
pub fn dirac_pair_creation(
    spec: &LatticeSpec,
    pulse: &PulseProfile,
    grid: &MomentumGrid,
    opts: &TiltOptions,
) -> Result<DiracPairCreation> {
    spec.validate()?;
    pulse.validate()?;
    let span = pulse.natural_span()?;
    let mut beta_sq = Vec::with_capacity(grid.len());
    let mut max_residual: f64 = 0.0;
    for k in grid.points() {
        let b = integrate_dirac_modes(spec, pulse, &k, span, opts)?;
        max_residual = max_residual.max(b.normalization_residual);
        beta_sq.push(b.beta_sq());
    }
    let double_occupancy = beta_sq.iter().sum::<f64>() * grid.weight();
    Ok(DiracPairCreation {
        beta_sq,
        max_residual,
        double_occupancy,
    })
}

/// Tunnelling exponent `π U²/(4 J |∇T|_{k0} E0)` of pair creation by a
/// slowly varying field, with effective light speed `c = J |∇T|_{k0}` and
/// rest energy `U/2` at a point `k0` where `T_k` vanishes.
pub fn tunneling_exponent(j: f64, u: f64, grad_t: f64, e0: f64) -> f64 {
    PI * u * u / (4.0 * j * grad_t * e0)
}

/// Tunnelling estimate `exp(−π U²/(4 J |∇T|_{k0} E0))`.
pub fn tunneling_estimate(j: f64, u: f64, grad_t: f64, e0: f64) -> f64 {
    (-tunneling_exponent(j, u, grad_t, e0)).exp()
}
