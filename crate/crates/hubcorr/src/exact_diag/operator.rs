//! Sparse operators on the Fock basis and on momentum sectors.
//!
//! Every operator is a sum of hops `a b†_μ b_ν` (with `μ = ν` standing for
//! `a n_μ`) plus a function of the occupations that is diagonal in the Fock
//! basis. Matrices are assembled row by row in compressed sparse row form.
//! In a momentum sector the operator must commute with translations; the
//! row of representative `a` then collects
//!
//! ```text
//! ⟨a(k)| O |b(k)⟩ = Σ a' e^{−ikl} √(R_a/R_b)
//! ```
//!
//! over all terms `a' T^l|b⟩` of `O†|a⟩`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::basis::FockBasis;
use super::sector::{MomentumSector, TranslationOrbits};
use crate::linalg::{hermitian_eigen, symmetric_eigen, HermitianEigen};

/// Field of matrix elements and state amplitudes: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + Debug
    + Default
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + 'static
{
    /// Additive identity.
    fn zero() -> Self;
    /// Complex conjugate.
    fn conj(self) -> Self;
    /// `|z|²`.
    fn abs_sq(self) -> f64;
    /// Real part.
    fn re(self) -> f64;
    /// Builds a value from real and imaginary parts; real types drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;
    /// Widening conversion.
    fn to_complex(self) -> Complex64;
    /// Full eigendecomposition of a Hermitian matrix given row-major.
    fn dense_eigen(n: usize, a: &[Self], want_vectors: bool) -> HermitianEigen<Self>;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn conj(self) -> Self {
        self
    }
    fn abs_sq(self) -> f64 {
        self * self
    }
    fn re(self) -> f64 {
        self
    }
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn dense_eigen(n: usize, a: &[Self], want_vectors: bool) -> HermitianEigen<Self> {
        symmetric_eigen(n, a, want_vectors)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs_sq(self) -> f64 {
        self.norm_sqr()
    }
    fn re(self) -> f64 {
        self.re
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn dense_eigen(n: usize, a: &[Self], want_vectors: bool) -> HermitianEigen<Self> {
        hermitian_eigen(n, a, want_vectors)
    }
}

/// `⟨x|y⟩ = Σ conj(x_i) y_i`.
pub fn inner<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + a.conj() * b)
}

/// Euclidean norm.
pub fn norm<T: Scalar>(x: &[T]) -> f64 {
    x.iter().map(|z| z.abs_sq()).sum::<f64>().sqrt()
}

/// Square matrix in compressed sparse row form.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<T>,
}

impl<T: Scalar> CsrMatrix<T> {
    /// Builds a matrix from per-row `(column, value)` lists; duplicate
    /// columns are summed and exact zeros dropped.
    pub fn from_rows<I>(dim: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<(usize, T)>>,
    {
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            let mut last: Option<usize> = None;
            for (c, v) in row {
                if last == Some(c) {
                    *vals.last_mut().unwrap() += v;
                } else {
                    cols.push(c as u32);
                    vals.push(v);
                    last = Some(c);
                }
            }
            // drop entries that cancelled
            let start = *row_ptr.last().unwrap();
            let mut w = start;
            for r in start..cols.len() {
                if vals[r] != T::zero() {
                    cols[w] = cols[r];
                    vals[w] = vals[r];
                    w += 1;
                }
            }
            cols.truncate(w);
            vals.truncate(w);
            row_ptr.push(cols.len());
        }
        assert_eq!(row_ptr.len(), dim + 1, "row count must equal the dimension");
        CsrMatrix { dim, row_ptr, cols, vals }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entries of row `i` as `(column, value)` pairs.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().map(|&c| c as usize).zip(self.vals[r].iter().copied())
    }

    /// Single entry, zero if not stored.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.row(i).find(|&(c, _)| c == j).map_or(T::zero(), |(_, v)| v)
    }

    /// `y = A x`.
    pub fn apply_into(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.dim) {
            let mut acc = T::zero();
            for r in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[r] * x[self.cols[r] as usize];
            }
            *yi = acc;
        }
    }

    /// `A x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dim];
        self.apply_into(x, &mut y);
        y
    }

    /// `⟨x|A|x⟩`.
    pub fn expectation(&self, x: &[T]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, xi) in x.iter().enumerate() {
            let mut row = T::zero();
            for r in self.row_ptr[i]..self.row_ptr[i + 1] {
                row += self.vals[r] * x[self.cols[r] as usize];
            }
            acc += (xi.conj() * row).to_complex();
        }
        acc
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim * self.dim];
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                out[i * self.dim + j] = v;
            }
        }
        out
    }

    /// Largest `|A_ij − conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i).conj()).abs_sq().sqrt());
            }
        }
        worst
    }
}

impl CsrMatrix<f64> {
    /// `y = A x` for a complex vector.
    pub fn apply_complex_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.dim) {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += x[self.cols[r] as usize] * self.vals[r];
            }
            *yi = acc;
        }
    }
}

/// One term `amplitude · b†_to b_from`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hop {
    pub to: usize,
    pub from: usize,
    pub amplitude: f64,
}

impl Hop {
    /// Hermitian adjoint of the term.
    pub fn adjoint(&self) -> Hop {
        Hop {
            to: self.from,
            from: self.to,
            amplitude: self.amplitude,
        }
    }

    /// Applies the term to a Fock state, writing the image into `out`.
    ///
    /// Returns the matrix element, or `None` if the state is annihilated.
    pub fn act(&self, state: &[u8], out: &mut [u8]) -> Option<f64> {
        let nf = state[self.from];
        if nf == 0 {
            return None;
        }
        out.copy_from_slice(state);
        if self.to == self.from {
            return Some(self.amplitude * nf as f64);
        }
        if state[self.to] == u8::MAX {
            return None;
        }
        out[self.from] -= 1;
        out[self.to] += 1;
        Some(self.amplitude * (nf as f64 * (state[self.to] as f64 + 1.0)).sqrt())
    }
}

/// Operator `Σ hops + diag(n)` on a fixed-particle-number space.
pub struct BosonOperator<'a> {
    pub hops: Vec<Hop>,
    pub diagonal: Box<dyn Fn(&[u8]) -> f64 + Sync + 'a>,
}

impl<'a> BosonOperator<'a> {
    /// Operator made of hops only.
    pub fn hopping(hops: Vec<Hop>) -> Self {
        BosonOperator {
            hops,
            diagonal: Box::new(|_| 0.0),
        }
    }

    /// Operator diagonal in the Fock basis.
    pub fn diagonal<F: Fn(&[u8]) -> f64 + Sync + 'a>(f: F) -> Self {
        BosonOperator {
            hops: Vec::new(),
            diagonal: Box::new(f),
        }
    }

    /// Real matrix in the plain Fock basis.
    pub fn fock_matrix(&self, basis: &FockBasis) -> CsrMatrix<f64> {
        let adjoint: Vec<Hop> = self.hops.iter().map(Hop::adjoint).collect();
        let mut buf = vec![0u8; basis.sites()];
        let rows = basis.states().enumerate().map(|(i, s)| {
            let mut row = Vec::with_capacity(adjoint.len() + 1);
            let d = (self.diagonal)(s);
            if d != 0.0 {
                row.push((i, d));
            }
            for h in &adjoint {
                if let Some(a) = h.act(s, &mut buf) {
                    row.push((basis.index_unchecked(&buf), a));
                }
            }
            row
        });
        CsrMatrix::from_rows(basis.dimension(), rows.collect::<Vec<_>>())
    }

    /// Matrix in a momentum sector. The operator must commute with
    /// translations of the chain.
    pub fn sector_matrix<T: Scalar>(
        &self,
        basis: &FockBasis,
        orbits: &TranslationOrbits,
        sector: &MomentumSector,
    ) -> CsrMatrix<T> {
        assert!(
            sector.is_real() || T::from_parts(0.0, 1.0) != T::zero(),
            "sector K = {} needs complex amplitudes",
            sector.k()
        );
        let adjoint: Vec<Hop> = self.hops.iter().map(Hop::adjoint).collect();
        let mut buf = vec![0u8; basis.sites()];
        let phases: Vec<T> = (0..basis.sites())
            .map(|l| {
                let p = sector.phase(l).conj();
                T::from_parts(p.re, p.im)
            })
            .collect();
        let rows: Vec<Vec<(usize, T)>> = (0..sector.dimension())
            .map(|i| {
                let s = basis.state(orbits.representative(sector.orbit(i)));
                let ra = sector.period(i) as f64;
                let mut row = Vec::with_capacity(adjoint.len() + 1);
                let d = (self.diagonal)(s);
                if d != 0.0 {
                    row.push((i, T::from_parts(d, 0.0)));
                }
                for h in &adjoint {
                    let Some(a) = h.act(s, &mut buf) else { continue };
                    let (orbit, l) = orbits.locate(basis.index_unchecked(&buf));
                    let Some(j) = sector.position(orbit) else { continue };
                    let scale = a * (ra / sector.period(j) as f64).sqrt();
                    row.push((j, phases[l] * scale));
                }
                row
            })
            .collect();
        CsrMatrix::from_rows(sector.dimension(), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hop_matrix_elements() {
        let h = Hop {
            to: 0,
            from: 1,
            amplitude: 2.0,
        };
        let mut out = [0u8; 2];
        assert_eq!(h.act(&[1, 2], &mut out), Some(2.0 * (2.0f64 * 2.0).sqrt()));
        assert_eq!(out, [2, 1]);
        assert_eq!(h.act(&[3, 0], &mut out), None);
        let n = Hop {
            to: 1,
            from: 1,
            amplitude: 0.5,
        };
        assert_eq!(n.act(&[0, 3], &mut out), Some(1.5));
        assert_eq!(out, [0, 3]);
    }

    #[test]
    fn csr_merges_and_applies() {
        let m = CsrMatrix::from_rows(2, vec![vec![(1, 1.0), (0, 2.0), (1, 0.5)], vec![(0, 1.5), (1, 0.0)]]);
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.get(0, 1), 1.5);
        assert_eq!(m.apply(&[1.0, 2.0]), vec![5.0, 1.5]);
        assert_eq!(m.hermiticity_defect(), 0.0);
        assert_abs_diff_eq!(m.expectation(&[1.0, 1.0]).re, 5.0);
    }

    #[test]
    fn fock_matrix_of_non_hermitian_term() {
        // b†_0 b_1 on two bosons: ⟨2,0|b†_0 b_1|1,1⟩ = √2
        let basis = FockBasis::new(2, 2).unwrap();
        let op = BosonOperator::hopping(vec![Hop {
            to: 0,
            from: 1,
            amplitude: 1.0,
        }]);
        let m = op.fock_matrix(&basis);
        let i20 = basis.index(&[2, 0]).unwrap();
        let i11 = basis.index(&[1, 1]).unwrap();
        assert_abs_diff_eq!(m.get(i20, i11), 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(m.get(i11, i20), 0.0);
    }
}
