//! Floquet analysis of the first-order correlations under a strong constant
//! tilt.
//!
//! After a Peierls substitution a uniform tilt `E0` turns the structure
//! factor into a periodic function of time,
//! `T_k(t) = (1/Z)(e^{iE0t}χ_k + e^{−iE0t}χ_k*)`, and the homogeneous part
//! of the mode equations becomes a periodically driven linear system. Its
//! Floquet exponent `ν` is obtained in two independent ways:
//!
//! * the monodromy matrix over one period, integrated with RK4, and
//! * the infinite banded determinant of the Fourier-space equations,
//!   truncated at `|n| ≤ n_max` with an analytic correction for the
//!   discarded blocks.
//!
//! The perturbative expansion of `sin²(πν)` to fourth order in `J/E0` and a
//! scan for resonance bands (`Im ν ≠ 0`) are built on top.

use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::fermi::charge_generator;
use crate::linalg::DenseMatrix;
use crate::ode;

/// Default number of RK4 steps per drive period.
pub const DEFAULT_T_STEPS: usize = 4000;
/// Largest tolerated deviation of the bosonic monodromy determinant from 1.
pub const DETERMINANT_TOLERANCE: f64 = 1e-8;
/// Default distance from integer `U/E0` inside which the perturbative
/// formula is rejected.
pub const DEFAULT_POLE_MARGIN: f64 = 0.02;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A single-harmonic drive of the structure factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetDrive {
    /// Tilt per site, which is also the drive frequency.
    pub e0: f64,
    /// Complex amplitude `χ_k`.
    pub chi: Complex64,
    pub u: f64,
    pub j: f64,
    /// Coordination number.
    pub z: f64,
}

impl FloquetDrive {
    /// Validated drive.
    pub fn new(e0: f64, chi: Complex64, u: f64, j: f64, z: f64) -> Result<Self> {
        let d = FloquetDrive { e0, chi, u, j, z };
        d.validate()?;
        Ok(d)
    }

    /// Drive of a one-dimensional chain at quasimomentum `k`, for which
    /// `T_k(t) = cos(k + E0 t)`, i.e. `Z = 2` and `χ = e^{ik}`.
    pub fn peierls_1d(e0: f64, k: f64, u: f64, j: f64) -> Result<Self> {
        Self::new(e0, Complex64::from_polar(1.0, k), u, j, 2.0)
    }

    /// Checks the parameter ranges.
    pub fn validate(&self) -> Result<()> {
        if !(self.e0 > 0.0 && self.e0.is_finite()) {
            return Err(Error::config("E0", "drive frequency must be positive"));
        }
        if !(self.u >= 0.0 && self.u.is_finite()) {
            return Err(Error::config("U", "must be non-negative"));
        }
        if !(self.j >= 0.0 && self.j.is_finite()) {
            return Err(Error::config("J", "must be non-negative"));
        }
        if !(self.z > 0.0 && self.z.is_finite()) {
            return Err(Error::config("Z", "coordination number must be positive"));
        }
        if !(self.chi.re.is_finite() && self.chi.im.is_finite()) {
            return Err(Error::config("chi", "must be finite"));
        }
        Ok(())
    }

    /// Same drive with a different interaction strength.
    pub fn with_u(&self, u: f64) -> Self {
        FloquetDrive { u, ..*self }
    }

    /// Drive period `2π/E0`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.e0
    }

    /// `U/E0`.
    pub fn u_ratio(&self) -> f64 {
        self.u / self.e0
    }

    /// `J/(Z E0)`, the natural expansion parameter of the determinant.
    pub fn coupling(&self) -> f64 {
        self.j / (self.z * self.e0)
    }

    /// Time-dependent structure factor `T_k(t)`.
    pub fn structure_factor(&self, t: f64) -> f64 {
        2.0 * (self.chi * Complex64::from_polar(1.0, self.e0 * t)).re / self.z
    }
}

/// Floquet exponent with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetResult {
    /// Exponent folded to `0 ≤ Re ν ≤ ½`, `Im ν ≥ 0`.
    pub nu: Complex64,
    /// `sin²(πν)`, real for this system.
    pub sin2_pi_nu: f64,
    /// `Im ν · E0`, the exponential growth rate of the correlations.
    pub growth_rate: f64,
    /// Whether the exponent has an imaginary part.
    pub resonant: bool,
}

/// Generator `H` of the homogeneous bosonic system `i ẏ = H y` with
/// `y = (f12, f11 + ½, f21)`.
pub fn bose_generator(j_t: f64, u: f64) -> [[f64; 3]; 3] {
    let a = u - 3.0 * j_t;
    let b = SQRT_2 * j_t;
    [[a, -2.0 * b, 0.0], [b, 0.0, -b], [0.0, 2.0 * b, -a]]
}

fn period_propagator<const N: usize, G>(drive: &FloquetDrive, t_steps: usize, generator: G) -> [[Complex64; N]; N]
where
    G: Fn(f64) -> [[f64; N]; N],
{
    let period = drive.period();
    let dt = period / t_steps.max(1) as f64;
    let rhs = |t: f64, y: &[Complex64; N]| {
        let h = generator(t);
        let mut out = [ZERO; N];
        for (i, row) in h.iter().enumerate() {
            let s: Complex64 = row.iter().zip(y).map(|(&hij, &yj)| yj * hij).sum();
            out[i] = Complex64::new(s.im, -s.re);
        }
        out
    };
    let mut m = [[ZERO; N]; N];
    for col in 0..N {
        let mut y0 = [ZERO; N];
        y0[col] = ONE;
        let y = ode::integrate(rhs, 0.0, y0, period, dt, |_, _| true);
        for row in 0..N {
            m[row][col] = y[row];
        }
    }
    m
}

/// Monodromy matrix of the bosonic system over one drive period.
pub fn bose_monodromy(drive: &FloquetDrive, t_steps: usize) -> [[Complex64; 3]; 3] {
    let (j, u) = (drive.j, drive.u);
    period_propagator(drive, t_steps, |t| bose_generator(j * drive.structure_factor(t), u))
}

/// Monodromy matrix of the fermionic charge-mode system over one period.
pub fn fermi_monodromy(drive: &FloquetDrive, t_steps: usize) -> [[Complex64; 4]; 4] {
    let (j, u) = (drive.j, drive.u);
    period_propagator(drive, t_steps, |t| charge_generator(j * drive.structure_factor(t), u))
}

fn det3(m: &[[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Exponent from `s = sin²(πν)`.
///
/// The two non-trivial monodromy eigenvalues satisfy
/// `λ + 1/λ = 2(1 − 2s)`.
pub fn exponent_from_sin2(s: f64, e0: f64) -> FloquetResult {
    let half_trace = 1.0 - 2.0 * s;
    let nu = if half_trace.abs() <= 1.0 {
        Complex64::new(half_trace.acos() / (2.0 * PI), 0.0)
    } else {
        // |λ| ≠ 1; λ real with the sign of the half trace
        let mag = half_trace.abs() + (half_trace * half_trace - 1.0).sqrt();
        let re = if half_trace > 0.0 { 0.0 } else { 0.5 };
        Complex64::new(re, mag.ln() / (2.0 * PI))
    };
    FloquetResult {
        nu,
        sin2_pi_nu: s,
        growth_rate: nu.im * e0,
        resonant: nu.im > 0.0,
    }
}

/// Floquet exponent from the monodromy matrix.
///
/// The conserved bilinear makes one eigenvalue equal to one; the other two
/// are `e^{±2πiν}`, so `tr M = 1 + 2cos(2πν) = 3 − 4 sin²(πν)`.
pub fn monodromy_exponent(drive: &FloquetDrive, t_steps: usize) -> Result<FloquetResult> {
    drive.validate()?;
    if t_steps < 16 {
        return Err(Error::config("t_steps", "at least 16 steps per period are required"));
    }
    let m = bose_monodromy(drive, t_steps);
    let det = det3(&m);
    if (det - ONE).norm() > DETERMINANT_TOLERANCE {
        return Err(Error::numeric(
            "monodromy_exponent",
            format!("monodromy determinant deviates from one by {:e}; increase t_steps", (det - ONE).norm()),
        ));
    }
    let trace = m[0][0] + m[1][1] + m[2][2];
    Ok(exponent_from_sin2((3.0 - trace.re) / 4.0, drive.e0))
}

/// Eigenvalues of the fermionic monodromy matrix.
pub fn fermi_monodromy_eigenvalues(drive: &FloquetDrive, t_steps: usize) -> Result<Vec<Complex64>> {
    drive.validate()?;
    let m = fermi_monodromy(drive, t_steps);
    let mut dense = DenseMatrix::zeros(4, 4);
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            *dense.get_mut(i, j) = v;
        }
    }
    Ok(dense.eigenvalues())
}

/// Options of the truncated-determinant evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantOptions {
    /// Retained harmonics `|n| ≤ n_max`.
    pub n_max: usize,
    /// Number of discarded harmonics summed explicitly in the tail
    /// correction on each side.
    pub tail_terms: usize,
    /// Imaginary part `y > 0` of the evaluation point `ν₀ = iy`.
    pub eval_point: f64,
    /// Largest tolerated change of `sin²(πν)` from `n_max` to `n_max + 2`.
    pub tolerance: f64,
}

impl Default for DeterminantOptions {
    fn default() -> Self {
        DeterminantOptions {
            n_max: 8,
            tail_terms: 4000,
            eval_point: 0.1,
            tolerance: 1e-8,
        }
    }
}

/// `sin²(πν)` from the determinant together with its truncation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantResult {
    pub sin2_pi_nu: f64,
    /// Corrected determinant `Δ(ν₀)` at `n_max`.
    pub delta: Complex64,
    /// `|sin²(πν)(n_max + 2) − sin²(πν)(n_max)|`.
    pub convergence: f64,
}

fn sin2(z: Complex64) -> Complex64 {
    let s = (z * PI).sin();
    s * s
}

/// Block `M_n` at exponent `ν`.
///
/// The middle row carries `±√2/(ν+n)`. This is the entry obtained from
/// the equation of motion of `f11`, and with it the determinant reproduces
/// the monodromy result; a plain `2` in the first column does not.
pub fn block(drive: &FloquetDrive, nu: Complex64, n: i64) -> [[Complex64; 3]; 3] {
    let g = drive.coupling();
    let u = drive.u_ratio();
    let base = nu + n as f64;
    let p = g / (base + u);
    let m = g / base;
    let q = g / (base - u);
    let s2 = 2.0 * SQRT_2;
    [
        [-3.0 * p, -s2 * p, ZERO],
        [SQRT_2 * m, ZERO, -SQRT_2 * m],
        [ZERO, s2 * q, 3.0 * q],
    ]
}

fn mat_mul3(a: &[[Complex64; 3]; 3], b: &[[Complex64; 3]; 3]) -> [[Complex64; 3]; 3] {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            for j in 0..3 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Correction `ln Δ_∞ − ln Δ_trunc` from closed walks that leave the
/// retained window, to fourth order in the coupling.
///
/// With `Â = 1 + A` and `A` nearest-neighbour in the harmonic index,
/// `ln det Â = −½ tr A² − ¼ tr A⁴ + …` (odd traces vanish). The walks of
/// length two and four touching `|n| > n_max` are summed for
/// `|n| ≤ n_max + tail_terms`; the remaining second-order tail is added in
/// closed form from `tr(M_n M_{n+1}) ≈ 2 g²/n²`.
fn tail_log_correction(drive: &FloquetDrive, nu: Complex64, n_max: i64, tail_terms: i64) -> Complex64 {
    let lo = -n_max - tail_terms - 4;
    let hi = n_max + tail_terms + 4;
    let blocks: Vec<[[Complex64; 3]; 3]> = (lo..=hi).map(|n| block(drive, nu, n)).collect();
    let chi = drive.chi;
    // A_{n,n+step} = χ* M_n for step +1 and χ M_n for step −1
    let hop = |n: i64, step: i64| -> [[Complex64; 3]; 3] {
        let w = if step > 0 { chi.conj() } else { chi };
        let mut b = blocks[(n - lo) as usize];
        for row in b.iter_mut() {
            for v in row.iter_mut() {
                *v *= w;
            }
        }
        b
    };
    let inside = |n: i64| n.abs() <= n_max;
    let walks2: [[i64; 2]; 2] = [[1, -1], [-1, 1]];
    let walks4: [[i64; 4]; 6] = [
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [-1, 1, 1, -1],
        [-1, 1, -1, 1],
        [-1, -1, 1, 1],
    ];
    let mut corr = ZERO;
    for start in (lo + 2)..=(hi - 2) {
        for w in &walks2 {
            let (a, b) = (start, start + w[0]);
            if inside(a) && inside(b) {
                continue;
            }
            let p = mat_mul3(&hop(a, w[0]), &hop(b, w[1]));
            corr -= 0.5 * (p[0][0] + p[1][1] + p[2][2]);
        }
        for w in &walks4 {
            let mut idx = [start; 5];
            for s in 0..4 {
                idx[s + 1] = idx[s] + w[s];
            }
            if idx.iter().all(|&n| inside(n)) {
                continue;
            }
            let mut p = hop(idx[0], w[0]);
            for s in 1..4 {
                p = mat_mul3(&p, &hop(idx[s], w[s]));
            }
            corr -= 0.25 * (p[0][0] + p[1][1] + p[2][2]);
        }
    }
    // second-order walks beyond the explicit range, two per pair and side
    let g = drive.coupling();
    let edge = (n_max + tail_terms + 2) as f64;
    corr -= chi.norm_sqr() * 2.0 * (2.0 * g * g / edge);
    corr
}

/// Determinant `Δ(ν)` of the Fourier-space system truncated to
/// `|n| ≤ n_max`, with the tail correction applied when `tail_terms > 0`.
pub fn truncated_determinant(drive: &FloquetDrive, nu: Complex64, n_max: usize, tail_terms: usize) -> Complex64 {
    let size = 2 * n_max + 1;
    let mut m = DenseMatrix::identity(3 * size);
    for (i, n) in (-(n_max as i64)..=n_max as i64).enumerate() {
        let b = block(drive, nu, n);
        for r in 0..3 {
            for c in 0..3 {
                if i > 0 {
                    *m.get_mut(3 * i + r, 3 * (i - 1) + c) = drive.chi * b[r][c];
                }
                if i + 1 < size {
                    *m.get_mut(3 * i + r, 3 * (i + 1) + c) = drive.chi.conj() * b[r][c];
                }
            }
        }
    }
    let det = m.determinant();
    if tail_terms == 0 {
        return det;
    }
    det * tail_log_correction(drive, nu, n_max as i64, tail_terms as i64).exp()
}

fn sin2_from_determinant(drive: &FloquetDrive, n_max: usize, opts: &DeterminantOptions) -> (f64, Complex64) {
    let u = drive.u_ratio();
    let su = sin2(Complex64::new(u, 0.0));
    // Δ(ν) = (s(ν) − s(ν_F)) / (s(ν) − s(U/E0)) evaluated at ν₀ = iy
    let nu0 = Complex64::new(0.0, opts.eval_point);
    let d = truncated_determinant(drive, nu0, n_max, opts.tail_terms);
    let s0 = sin2(nu0);
    ((s0 - d * (s0 - su)).re, d)
}

/// `sin²(πν)` from the truncated determinant.
///
/// The identity `Δ(ν) = (sin²πν − sin²πν_F)/(sin²πν − sin²(πU/E0))`
/// reduces at `ν = 0` to `sin²(πν_F) = sin²(πU/E0) Δ(0)`. At `ν = 0`
/// itself the middle row of `M_0` is singular, so the identity is
/// evaluated at `ν₀ = iy` (default `y = 0.1`), where no block has a pole
/// even for integer `U/E0`. The result at `n_max + 2` is computed as a
/// convergence check.
pub fn determinant_relation(drive: &FloquetDrive, opts: &DeterminantOptions) -> Result<DeterminantResult> {
    let r = determinant_unchecked(drive, opts)?;
    if r.convergence > opts.tolerance {
        return Err(Error::numeric(
            "determinant_relation",
            format!(
                "truncation not converged: change {:e} from n_max = {} to {}",
                r.convergence,
                opts.n_max,
                opts.n_max + 2
            ),
        ));
    }
    Ok(r)
}

fn determinant_unchecked(drive: &FloquetDrive, opts: &DeterminantOptions) -> Result<DeterminantResult> {
    drive.validate()?;
    if opts.n_max < 2 {
        return Err(Error::config("n_max", "at least two harmonics must be retained"));
    }
    if !(opts.eval_point > 0.0 && opts.eval_point.is_finite()) {
        return Err(Error::config(
            "eval_point",
            "must be positive: at ν = 0 the block M_0 has a pole in its middle row",
        ));
    }
    let (s, delta) = sin2_from_determinant(drive, opts.n_max, opts);
    let (s2, _) = sin2_from_determinant(drive, opts.n_max + 2, opts);
    Ok(DeterminantResult {
        sin2_pi_nu: s,
        delta,
        convergence: (s2 - s).abs(),
    })
}

/// Perturbative `sin²(πν)` through fourth order in `J/E0`.
///
/// Rejects `U/E0` within `pole_margin` of an integer, where the expansion
/// breaks down.
pub fn resonance_expansion(drive: &FloquetDrive, pole_margin: f64) -> Result<f64> {
    drive.validate()?;
    let (j, u, e0, z) = (drive.j, drive.u, drive.e0, drive.z);
    let r = u / e0;
    if (r - r.round()).abs() < pole_margin {
        return Err(Error::config(
            "U",
            format!("U/E0 = {r} is within {pole_margin} of a pole of the expansion"),
        ));
    }
    let c2 = drive.chi.norm_sqr();
    let pu = PI * r;
    let s = pu.sin();
    let second = 16.0 * j * j * c2 * PI * u / (z * z * e0 * (e0 * e0 - u * u)) / pu.tan();
    let e2 = e0 * e0;
    let u2 = u * u;
    let bracket = 8.0 * PI * u * (4.0 * e2 * e2 - 5.0 * e2 * u2 + u2 * u2) * (2.0 * pu).cos()
        + e0 * (-19.0 * e2 * e2 + 76.0 * e2 * u2 - 33.0 * u2 * u2) * (2.0 * pu).sin();
    let fourth = 8.0 * j.powi(4) * c2 * c2 * PI * u / (z.powi(4) * s * s)
        / (e2 * (e2 - u2).powi(3) * (4.0 * e2 - u2))
        * bracket;
    Ok(s * s * (1.0 + second + fourth))
}

/// Closed-form location and width `(center, width)` of the first
/// resonance band, `U = E0` and `ΔU = 4√2 J|χ|/Z`.
pub fn first_resonance_prediction(drive: &FloquetDrive) -> (f64, f64) {
    (drive.e0, 4.0 * SQRT_2 * drive.j * drive.chi.norm() / drive.z)
}

/// Closed-form location and width of the second resonance band,
/// `U = 2E0 + 16J²|χ|²/(3E0Z²)` and `ΔU = 12√2 J²|χ|²/(Z²E0)`.
pub fn second_resonance_prediction(drive: &FloquetDrive) -> (f64, f64) {
    let (j, e0, z) = (drive.j, drive.e0, drive.z);
    let c2 = drive.chi.norm_sqr();
    (
        2.0 * e0 + 16.0 * j * j * c2 / (3.0 * e0 * z * z),
        12.0 * SQRT_2 * j * j * c2 / (z * z * e0),
    )
}

/// One point of a resonance scan over `U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub u: f64,
    pub sin2_det: f64,
    pub sin2_mono: f64,
    pub im_nu: f64,
}

/// A connected interval of `U` with `Im ν > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceBand {
    pub lower: f64,
    pub upper: f64,
    pub center: f64,
    pub width: f64,
    /// Largest `Im ν` seen on the scan grid inside the band.
    pub max_im_nu: f64,
}

/// Result of [`resonance_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceScan {
    pub points: Vec<ScanPoint>,
    pub bands: Vec<ResonanceBand>,
}

fn mono_sin2(drive: &FloquetDrive, t_steps: usize) -> Result<f64> {
    Ok(monodromy_exponent(drive, t_steps)?.sin2_pi_nu)
}

fn unstable(s: f64) -> bool {
    !(0.0..=1.0).contains(&s)
}

/// Bisects the stability boundary between `a` (stable) and `b` (unstable).
fn refine_edge(drive: &FloquetDrive, mut a: f64, mut b: f64, t_steps: usize) -> Result<f64> {
    for _ in 0..40 {
        let m = 0.5 * (a + b);
        if unstable(mono_sin2(&drive.with_u(m), t_steps)?) {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Scans `sin²(πν)` over the interaction strengths `u_values` (ascending)
/// with both evaluation methods and locates the resonance bands from the
/// monodromy, refining every band edge by bisection.
///
/// Bands touching the ends of the grid are reported with the grid end as
/// their edge.
pub fn resonance_scan(
    drive: &FloquetDrive,
    u_values: &[f64],
    t_steps: usize,
    det_opts: &DeterminantOptions,
) -> Result<ResonanceScan> {
    if u_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::config("range", "scan values must be strictly increasing"));
    }
    let mut points = Vec::with_capacity(u_values.len());
    for &u in u_values {
        let d = drive.with_u(u);
        let mono = monodromy_exponent(&d, t_steps)?;
        let det = determinant_unchecked(&d, det_opts)?;
        points.push(ScanPoint {
            u,
            sin2_det: det.sin2_pi_nu,
            sin2_mono: mono.sin2_pi_nu,
            im_nu: mono.nu.im,
        });
    }
    let mut bands = Vec::new();
    let mut i = 0;
    while i < points.len() {
        if !unstable(points[i].sin2_mono) {
            i += 1;
            continue;
        }
        let first = i;
        while i + 1 < points.len() && unstable(points[i + 1].sin2_mono) {
            i += 1;
        }
        let last = i;
        let lower = if first == 0 {
            points[0].u
        } else {
            refine_edge(drive, points[first - 1].u, points[first].u, t_steps)?
        };
        let upper = if last + 1 == points.len() {
            points[last].u
        } else {
            refine_edge(drive, points[last + 1].u, points[last].u, t_steps)?
        };
        let max_im_nu = points[first..=last].iter().map(|p| p.im_nu).fold(0.0, f64::max);
        bands.push(ResonanceBand {
            lower,
            upper,
            center: 0.5 * (lower + upper),
            width: upper - lower,
            max_im_nu,
        });
        i += 1;
    }
    Ok(ResonanceScan { points, bands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn drive(u: f64, j: f64) -> FloquetDrive {
        FloquetDrive::peierls_1d(1.0, 0.3, u, j).unwrap()
    }

    #[test]
    fn free_phases_without_hopping() {
        for u in [0.3, 0.8, 1.4, 2.25] {
            let r = monodromy_exponent(&drive(u, 0.0), DEFAULT_T_STEPS).unwrap();
            let folded = {
                let f = u.rem_euclid(1.0);
                f.min(1.0 - f)
            };
            assert_abs_diff_eq!(r.nu.re, folded, epsilon = 1e-9);
            assert_eq!(r.nu.im, 0.0);
            assert!(!r.resonant);
            let d = determinant_relation(&drive(u, 0.0), &DeterminantOptions::default()).unwrap();
            assert_abs_diff_eq!(d.delta.re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(d.sin2_pi_nu, (PI * u).sin().powi(2), epsilon = 1e-14);
        }
    }

    #[test]
    fn resonant_growth_at_u_equal_e0() {
        let r = monodromy_exponent(&drive(1.0, 0.05), DEFAULT_T_STEPS).unwrap();
        assert!(r.resonant && r.nu.im > 0.0);
        assert_abs_diff_eq!(r.growth_rate, r.nu.im, epsilon = 1e-15);
    }

    #[test]
    fn stable_off_resonance() {
        let r = monodromy_exponent(&drive(1.5, 0.01), DEFAULT_T_STEPS).unwrap();
        assert!(r.nu.im.abs() <= 1e-10);
    }

    #[test]
    fn exponent_inversion() {
        for s in [0.0, 0.2, 0.5, 0.9, 1.0] {
            let r = exponent_from_sin2(s, 1.0);
            assert_abs_diff_eq!((PI * r.nu.re).sin().powi(2), s, epsilon = 1e-12);
        }
        for s in [-0.3, 1.4] {
            let r = exponent_from_sin2(s, 2.0);
            assert!(r.resonant);
            let back = sin2(r.nu).re;
            assert_abs_diff_eq!(back, s, epsilon = 1e-12);
            assert_abs_diff_eq!(r.growth_rate, 2.0 * r.nu.im);
        }
    }

    #[test]
    fn monodromy_carries_the_inhomogeneous_equations() {
        // the full mode equations over one period equal M(y0 + ½) − ½
        let d = drive(0.7, 0.08);
        let m = bose_monodromy(&d, DEFAULT_T_STEPS);
        let y0 = [Complex64::new(0.3, 0.0), Complex64::new(0.1, 0.2), Complex64::new(0.1, -0.2), Complex64::new(0.3, 0.0)];
        let f = |t: f64, y: &[Complex64; 4]| crate::bose_z1::mode_rhs(d.j, d.u, d.structure_factor(t), y);
        let y1 = ode::integrate(f, 0.0, y0, d.period(), d.period() / DEFAULT_T_STEPS as f64, |_, _| true);
        let h0 = [y0[1], y0[0] + 0.5, y0[2]];
        let h1: Vec<Complex64> = (0..3).map(|i| (0..3).map(|k| m[i][k] * h0[k]).sum()).collect();
        assert_abs_diff_eq!((h1[0] - y1[1]).norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!((h1[1] - 0.5 - y1[0]).norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!((h1[2] - y1[2]).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn determinant_agrees_with_monodromy() {
        for (u, j) in [(0.3, 0.1), (0.97, 0.1), (1.0, 0.05), (1.7, 0.1), (2.02, 0.08), (2.5, 0.02)] {
            let d = drive(u, j);
            let mono = monodromy_exponent(&d, DEFAULT_T_STEPS).unwrap();
            let det = determinant_relation(&d, &DeterminantOptions::default()).unwrap();
            assert!(
                (mono.sin2_pi_nu - det.sin2_pi_nu).abs() < 1e-8,
                "U={u} J={j}: {} vs {}",
                mono.sin2_pi_nu,
                det.sin2_pi_nu
            );
        }
    }

    #[test]
    fn result_does_not_depend_on_evaluation_point() {
        for u in [0.63, 1.0, 2.0] {
            let d = drive(u, 0.05);
            let a = determinant_relation(&d, &DeterminantOptions::default()).unwrap();
            let opts = DeterminantOptions {
                eval_point: 0.3,
                ..DeterminantOptions::default()
            };
            let b = determinant_relation(&d, &opts).unwrap();
            assert_abs_diff_eq!(a.sin2_pi_nu, b.sin2_pi_nu, epsilon = 1e-9);
        }
        let zero = DeterminantOptions {
            eval_point: 0.0,
            ..DeterminantOptions::default()
        };
        assert!(determinant_relation(&drive(0.63, 0.05), &zero).is_err());
    }

    #[test]
    fn tail_correction_speeds_up_convergence() {
        let d = drive(0.4, 0.1);
        let nu = Complex64::new(0.0, 0.1);
        let exact = truncated_determinant(&d, nu, 40, 4000);
        let raw = (truncated_determinant(&d, nu, 8, 0) - exact).norm();
        let fixed = (truncated_determinant(&d, nu, 8, 4000) - exact).norm();
        assert!(fixed < 1e-3 * raw, "{fixed} vs {raw}");
    }

    #[test]
    fn expansion_matches_determinant_at_weak_coupling() {
        // J|χ|/(Z E0) = 0.02
        for u in [0.3, 0.6, 1.4, 1.7, 2.4] {
            let d = drive(u, 0.04);
            let series = resonance_expansion(&d, DEFAULT_POLE_MARGIN).unwrap();
            let det = determinant_relation(&d, &DeterminantOptions::default()).unwrap();
            let rel = (series - det.sin2_pi_nu).abs() / det.sin2_pi_nu.abs();
            assert!(rel < 1e-2, "U={u}: {series} vs {}", det.sin2_pi_nu);
        }
    }

    #[test]
    fn expansion_rejects_poles_and_reduces_at_zero_hopping() {
        assert!(resonance_expansion(&drive(1.01, 0.01), DEFAULT_POLE_MARGIN).is_err());
        assert!(resonance_expansion(&drive(1.99, 0.01), DEFAULT_POLE_MARGIN).is_err());
        assert_abs_diff_eq!(
            resonance_expansion(&drive(0.7, 0.0), DEFAULT_POLE_MARGIN).unwrap(),
            (0.7 * PI).sin().powi(2)
        );
    }

    #[test]
    fn correction_keeps_its_sign_across_first_pole() {
        // both sides of U = E0 are pulled towards the band, where
        // sin²(πν) < 0; the determinant is the independent check
        let d = drive(1.0, 0.01);
        let (_, w) = first_resonance_prediction(&d);
        for u in [1.0 - 5.0 * w, 1.0 + 5.0 * w] {
            let x = d.with_u(u);
            let base = (PI * u).sin().powi(2);
            let series = resonance_expansion(&x, 0.0).unwrap() - base;
            let det = determinant_relation(&x, &DeterminantOptions::default()).unwrap().sin2_pi_nu - base;
            assert!(series < 0.0 && det < 0.0, "U={u}: {series} {det}");
        }
    }

    #[test]
    fn scan_finds_first_band() {
        let d = drive(1.0, 0.05);
        let (c, w) = first_resonance_prediction(&d);
        let us: Vec<f64> = (0..=60).map(|i| 0.85 + 0.005 * i as f64).collect();
        let scan = resonance_scan(&d, &us, 1000, &DeterminantOptions::default()).unwrap();
        assert_eq!(scan.bands.len(), 1);
        let b = scan.bands[0];
        assert!((b.center - c).abs() < 0.01);
        assert!((b.width / w - 1.0).abs() < 0.2, "{} vs {w}", b.width);
    }

    #[test]
    fn fermionic_monodromy_is_unitary() {
        for u in [0.5, 1.0, 2.0] {
            let ev = fermi_monodromy_eigenvalues(&drive(u, 0.3), DEFAULT_T_STEPS).unwrap();
            for l in ev {
                assert!((l.norm() - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn invalid_drives_are_rejected() {
        assert!(FloquetDrive::peierls_1d(0.0, 0.0, 1.0, 0.1).is_err());
        assert!(FloquetDrive::peierls_1d(1.0, 0.0, -1.0, 0.1).is_err());
        assert!(monodromy_exponent(&drive(1.0, 0.1), 4).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn unit_determinant(u in 0.1f64..3.0, j in 0.0f64..0.2, k in -PI..PI) {
            let d = FloquetDrive::peierls_1d(1.0, k, u, j).unwrap();
            let m = bose_monodromy(&d, 2000);
            prop_assert!((det3(&m) - ONE).norm() < 1e-9);
        }

        #[test]
        fn expansion_is_quadratic_to_leading_order(u in 0.1f64..0.4) {
            let d1 = drive(u, 0.01);
            let d2 = drive(u, 0.02);
            let base = (PI * u).sin().powi(2);
            let a = resonance_expansion(&d1, 0.0).unwrap() - base;
            let b = resonance_expansion(&d2, 0.0).unwrap() - base;
            prop_assert!((b / a - 4.0).abs() < 0.05);
        }
    }
}
