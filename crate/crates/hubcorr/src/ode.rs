//! Classical fourth-order Runge-Kutta integration at fixed step.
//!
//! Two flavours are provided: [`integrate`] for small fixed-size complex
//! systems (one momentum mode at a time) and [`Rk4Workspace`] for long state
//! vectors, where the right-hand side writes into a caller-provided buffer.

use num_complex::Complex64;

/// One RK4 step of `dy/dt = f(t, y)` for a fixed-size complex system.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[Complex64; N], dt: f64) -> [Complex64; N]
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
{
    let axpy = |a: &[Complex64; N], b: &[Complex64; N], h: f64| {
        let mut out = *a;
        for (o, bi) in out.iter_mut().zip(b) {
            *o += bi * h;
        }
        out
    };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * dt, &axpy(y, &k1, 0.5 * dt));
    let k3 = f(t + 0.5 * dt, &axpy(y, &k2, 0.5 * dt));
    let k4 = f(t + dt, &axpy(y, &k3, dt));
    let mut out = *y;
    for i in 0..N {
        out[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0);
    }
    out
}

/// Number of equal steps of size at most `dt` covering `[t0, t1]`.
pub fn step_count(t0: f64, t1: f64, dt: f64) -> usize {
    (((t1 - t0) / dt).ceil().max(1.0)) as usize
}

/// Integrates from `t0` to `t1` with equal steps no larger than `dt`.
///
/// `observe` is called after every step with the current time and state and
/// may abort the integration by returning `false`.
pub fn integrate<const N: usize, F, O>(
    f: F,
    t0: f64,
    y0: [Complex64; N],
    t1: f64,
    dt: f64,
    mut observe: O,
) -> [Complex64; N]
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
    O: FnMut(f64, &[Complex64; N]) -> bool,
{
    if t1 <= t0 {
        return y0;
    }
    let n = step_count(t0, t1, dt);
    let h = (t1 - t0) / n as f64;
    let mut y = y0;
    for step in 0..n {
        let t = t0 + step as f64 * h;
        y = rk4_step(&f, t, &y, h);
        if !observe(t + h, &y) {
            break;
        }
    }
    y
}

/// Scratch buffers for RK4 on long state vectors.
#[derive(Debug, Clone)]
pub struct Rk4Workspace {
    k: [Vec<Complex64>; 4],
    tmp: Vec<Complex64>,
}

impl Rk4Workspace {
    /// Buffers for vectors of length `n`.
    pub fn new(n: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); n];
        Rk4Workspace {
            k: [z.clone(), z.clone(), z.clone(), z.clone()],
            tmp: z,
        }
    }

    /// Advances `y` in place by one step of size `dt`.
    ///
    /// `rhs(t, y, out)` must write `dy/dt` into `out`.
    pub fn step<F>(&mut self, rhs: &F, t: f64, y: &mut [Complex64], dt: f64)
    where
        F: Fn(f64, &[Complex64], &mut [Complex64]),
    {
        let [k1, k2, k3, k4] = &mut self.k;
        let tmp = &mut self.tmp;
        rhs(t, y, k1);
        for i in 0..y.len() {
            tmp[i] = y[i] + k1[i] * (0.5 * dt);
        }
        rhs(t + 0.5 * dt, tmp, k2);
        for i in 0..y.len() {
            tmp[i] = y[i] + k2[i] * (0.5 * dt);
        }
        rhs(t + 0.5 * dt, tmp, k3);
        for i in 0..y.len() {
            tmp[i] = y[i] + k3[i] * dt;
        }
        rhs(t + dt, tmp, k4);
        for i in 0..y.len() {
            y[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn harmonic_oscillator_phase() {
        let w = 1.3;
        let f = |_t: f64, y: &[Complex64; 1]| [Complex64::new(0.0, -w) * y[0]];
        let y = integrate(f, 0.0, [Complex64::new(1.0, 0.0)], 5.0, 1e-3, |_, _| true);
        let exact = Complex64::from_polar(1.0, -w * 5.0);
        assert_abs_diff_eq!((y[0] - exact).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn vector_stepper_matches_fixed_size() {
        let rhs = |t: f64, y: &[Complex64], out: &mut [Complex64]| {
            out[0] = Complex64::new(0.0, -1.0) * (t.cos() * y[1]);
            out[1] = Complex64::new(0.0, -1.0) * (t.cos() * y[0]);
        };
        let f = |t: f64, y: &[Complex64; 2]| {
            let mut out = [Complex64::new(0.0, 0.0); 2];
            rhs(t, y, &mut out);
            out
        };
        let y0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let a = integrate(f, 0.0, y0, 2.0, 1e-2, |_, _| true);
        let mut ws = Rk4Workspace::new(2);
        let mut b = y0.to_vec();
        for s in 0..200 {
            ws.step(&rhs, s as f64 * 1e-2, &mut b, 1e-2);
        }
        assert_abs_diff_eq!((a[0] - b[0]).norm(), 0.0, epsilon = 1e-13);
        // exact solution: y0 = cos(sin t), y1 = -i sin(sin t)
        assert_abs_diff_eq!(b[0].re, (2.0f64.sin()).cos(), epsilon = 1e-8);
    }
}
