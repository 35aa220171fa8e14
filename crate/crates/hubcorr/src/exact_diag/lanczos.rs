//! Restarted Lanczos iteration for the lowest eigenpairs of a sparse
//! Hermitian matrix.
//!
//! Each cycle builds a Krylov basis of at most `krylov_dim` vectors with
//! full reorthogonalisation, diagonalises the tridiagonal projection and
//! restarts from the lowest Ritz vector until its residual
//! `‖A v − θ v‖` drops below the tolerance. Several eigenpairs are found one
//! after another; every new Krylov vector is kept orthogonal to the pairs
//! already converged, which also resolves degenerate eigenvalues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operator::{inner, norm, CsrMatrix, Scalar};
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

/// Default residual tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Settings of the iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Krylov vectors per restart cycle.
    pub krylov_dim: usize,
    /// Residual tolerance `‖A v − θ v‖` for a normalised `v`.
    pub tolerance: f64,
    /// Restart cycles allowed per eigenpair.
    pub max_restarts: usize,
    /// Seed of the random start vector.
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            krylov_dim: 80,
            tolerance: DEFAULT_TOLERANCE,
            max_restarts: 200,
            seed: 0x5eed,
        }
    }
}

/// A converged eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub value: f64,
    pub vector: Vec<T>,
    /// `‖A v − θ v‖` of the returned normalised vector.
    pub residual: f64,
}

/// Removes the components of `v` along the orthonormal `basis`, twice.
fn orthogonalize<T: Scalar>(v: &mut [T], basis: &[Vec<T>]) {
    for _ in 0..2 {
        for q in basis {
            let c = inner(q, v);
            for (vi, &qi) in v.iter_mut().zip(q) {
                *vi -= qi * c;
            }
        }
    }
}

fn scale<T: Scalar>(v: &mut [T], s: f64) {
    for x in v {
        *x = *x * s;
    }
}

fn residual<T: Scalar>(a: &CsrMatrix<T>, v: &[T], theta: f64) -> f64 {
    let av = a.apply(v);
    av.iter()
        .zip(v)
        .map(|(&x, &y)| (x - y * theta).abs_sq())
        .sum::<f64>()
        .sqrt()
}

/// The `count` lowest eigenpairs of the Hermitian matrix `a`, ascending.
pub fn lowest_eigenpairs<T: Scalar>(a: &CsrMatrix<T>, count: usize, opts: &LanczosOptions) -> Result<Vec<EigenPair<T>>> {
    let n = a.dim();
    if count > n {
        return Err(Error::config(
            "count",
            format!("requested {count} eigenpairs of a {n}-dimensional matrix"),
        ));
    }
    if opts.krylov_dim < 2 || !(opts.tolerance > 0.0) {
        return Err(Error::config("lanczos", "krylov_dim >= 2 and tolerance > 0 required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut locked: Vec<Vec<T>> = Vec::with_capacity(count);
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let mut start: Vec<T> = (0..n)
            .map(|_| T::from_parts(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let mut converged = None;
        for _ in 0..opts.max_restarts {
            let (theta, v, res) = cycle(a, &start, &locked, opts.krylov_dim)?;
            if res <= opts.tolerance {
                converged = Some((theta, v, res));
                break;
            }
            start = v;
        }
        let Some((value, vector, residual)) = converged else {
            return Err(Error::numeric(
                "lanczos",
                format!(
                    "eigenpair {} not converged after {} restarts",
                    locked.len(),
                    opts.max_restarts
                ),
            ));
        };
        locked.push(vector.clone());
        pairs.push(EigenPair {
            value,
            vector,
            residual,
        });
    }
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(pairs)
}

/// One Lanczos cycle from `start`, returning the lowest Ritz pair and its
/// true residual.
fn cycle<T: Scalar>(a: &CsrMatrix<T>, start: &[T], locked: &[Vec<T>], krylov_dim: usize) -> Result<(f64, Vec<T>, f64)> {
    let n = a.dim();
    let m_max = krylov_dim.min(n - locked.len());
    let mut v = start.to_vec();
    orthogonalize(&mut v, locked);
    let nv = norm(&v);
    if !(nv > 0.0) {
        return Err(Error::numeric("lanczos", "start vector lies in the converged subspace"));
    }
    scale(&mut v, 1.0 / nv);
    let mut basis: Vec<Vec<T>> = vec![v];
    let mut alpha = Vec::with_capacity(m_max);
    let mut beta: Vec<f64> = Vec::with_capacity(m_max);
    let mut w = vec![T::zero(); n];
    loop {
        let j = basis.len() - 1;
        a.apply_into(&basis[j], &mut w);
        let aj = inner(&basis[j], &w).re();
        alpha.push(aj);
        // the final pass against the converged pairs keeps them from
        // creeping back in through rounding in the Krylov basis
        orthogonalize(&mut w, &basis);
        orthogonalize(&mut w, locked);
        let b = norm(&w);
        let scale_ref = aj.abs().max(beta.last().copied().unwrap_or(0.0)).max(1.0);
        if basis.len() == m_max || b <= 1e-12 * scale_ref {
            break;
        }
        beta.push(b);
        let mut next = w.clone();
        scale(&mut next, 1.0 / b);
        basis.push(next);
    }
    let m = alpha.len();
    let mut t = vec![0.0; m * m];
    for i in 0..m {
        t[i * m + i] = alpha[i];
        if i + 1 < m {
            t[i * m + i + 1] = beta[i];
            t[(i + 1) * m + i] = beta[i];
        }
    }
    let e = symmetric_eigen(m, &t, true);
    let theta = e.values[0];
    let s = &e.vectors[0];
    let mut y = vec![T::zero(); n];
    for (q, &c) in basis.iter().zip(s) {
        for (yi, &qi) in y.iter_mut().zip(q) {
            *yi += qi * c;
        }
    }
    orthogonalize(&mut y, locked);
    let ny = norm(&y);
    scale(&mut y, 1.0 / ny);
    let theta = {
        let rq = a.expectation(&y).re;
        if rq.is_finite() {
            rq
        } else {
            theta
        }
    };
    let res = residual(a, &y, theta);
    Ok((theta, y, res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn laplacian(n: usize) -> CsrMatrix<f64> {
        let rows = (0..n).map(|i| {
            let mut r = vec![(i, 2.0)];
            if i > 0 {
                r.push((i - 1, -1.0));
            }
            if i + 1 < n {
                r.push((i + 1, -1.0));
            }
            r
        });
        CsrMatrix::from_rows(n, rows.collect::<Vec<_>>())
    }

    #[test]
    fn open_chain_laplacian() {
        let n = 300;
        let pairs = lowest_eigenpairs(&laplacian(n), 3, &LanczosOptions::default()).unwrap();
        for (j, p) in pairs.iter().enumerate() {
            let exact = 2.0 - 2.0 * (std::f64::consts::PI * (j + 1) as f64 / (n + 1) as f64).cos();
            assert_abs_diff_eq!(p.value, exact, epsilon = 1e-10);
            assert!(p.residual <= 1e-8);
        }
        assert_abs_diff_eq!(inner(&pairs[0].vector, &pairs[1].vector), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn degenerate_pair_is_resolved() {
        // ring Laplacian: every nonzero eigenvalue is doubly degenerate
        let n = 40;
        let rows = (0..n).map(|i| vec![(i, 2.0), ((i + 1) % n, -1.0), ((i + n - 1) % n, -1.0)]);
        let m = CsrMatrix::from_rows(n, rows.collect::<Vec<Vec<(usize, f64)>>>());
        let pairs = lowest_eigenpairs(&m, 3, &LanczosOptions::default()).unwrap();
        let e1 = 2.0 - 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
        assert_abs_diff_eq!(pairs[0].value, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(pairs[1].value, e1, epsilon = 1e-10);
        assert_abs_diff_eq!(pairs[2].value, e1, epsilon = 1e-10);
    }

    #[test]
    fn complex_matches_dense() {
        let n = 60;
        let rows = (0..n).map(|i| {
            let mut r = vec![(i, Complex64::new((i % 7) as f64 * 0.3, 0.0))];
            let j = (i + 1) % n;
            let z = Complex64::from_polar(1.0, 0.37 * i as f64);
            r.push((j, z));
            r.push(((i + n - 1) % n, Complex64::from_polar(1.0, -0.37 * ((i + n - 1) % n) as f64)));
            r
        });
        let m = CsrMatrix::from_rows(n, rows.collect::<Vec<_>>());
        assert!(m.hermiticity_defect() < 1e-15);
        let dense = Complex64::dense_eigen(n, &m.to_dense(), false);
        let pairs = lowest_eigenpairs(&m, 2, &LanczosOptions::default()).unwrap();
        assert_abs_diff_eq!(pairs[0].value, dense.values[0], epsilon = 1e-10);
        assert_abs_diff_eq!(pairs[1].value, dense.values[1], epsilon = 1e-10);
    }

    #[test]
    fn tiny_matrix_and_bad_requests() {
        let m = CsrMatrix::from_rows(1, vec![vec![(0, 3.0)]]);
        let p = lowest_eigenpairs(&m, 1, &LanczosOptions::default()).unwrap();
        assert_abs_diff_eq!(p[0].value, 3.0);
        assert!(lowest_eigenpairs(&m, 2, &LanczosOptions::default()).is_err());
    }
}
