//! Dense linear algebra helpers on top of `faer`.
//!
//! Only the handful of operations the crate needs are exposed, all in terms
//! of `num_complex::Complex64` and plain slices so that callers never touch
//! the backend types directly.

use faer::complex_native::c64;
use faer::{Mat, Side};
use num_complex::Complex64;

fn to_c64(z: Complex64) -> c64 {
    c64::new(z.re, z.im)
}

fn from_c64(z: c64) -> Complex64 {
    Complex64::new(z.re, z.im)
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Element access.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    /// Mutable element access.
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }

    /// Matrix product.
    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    *out.get_mut(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    fn to_faer(&self) -> Mat<c64> {
        Mat::from_fn(self.rows, self.cols, |i, j| to_c64(self.get(i, j)))
    }

    /// Determinant via LU factorisation.
    pub fn determinant(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        from_c64(self.to_faer().determinant())
    }

    /// Eigenvalues of a general square matrix, in unspecified order.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        assert_eq!(self.rows, self.cols, "eigenvalues need a square matrix");
        self.to_faer()
            .complex_eigenvalues()
            .into_iter()
            .map(from_c64)
            .collect()
    }
}

/// Eigenpairs of a Hermitian matrix with eigenvalues in ascending order.
///
/// `vectors[n]` holds the `n`-th eigenvector.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<T>>,
}

/// Full eigendecomposition of a real symmetric matrix given row-major.
pub fn symmetric_eigen(n: usize, a: &[f64], want_vectors: bool) -> HermitianEigen<f64> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let m = Mat::<f64>::from_fn(n, n, |i, j| a[i * n + j]);
    if !want_vectors {
        let mut values = m.selfadjoint_eigenvalues(Side::Lower);
        values.sort_by(f64::total_cmp);
        return HermitianEigen {
            values,
            vectors: Vec::new(),
        };
    }
    let e = m.selfadjoint_eigendecomposition(Side::Lower);
    let (s, u) = (e.s().column_vector(), e.u());
    let values = (0..n).map(|i| s.read(i)).collect();
    let vectors = (0..n)
        .map(|c| (0..n).map(|r| u.read(r, c)).collect())
        .collect();
    HermitianEigen { values, vectors }
}

/// Full eigendecomposition of a complex Hermitian matrix given row-major.
pub fn hermitian_eigen(n: usize, a: &[Complex64], want_vectors: bool) -> HermitianEigen<Complex64> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let m = Mat::<c64>::from_fn(n, n, |i, j| to_c64(a[i * n + j]));
    if !want_vectors {
        let mut values = m.selfadjoint_eigenvalues(Side::Lower);
        values.sort_by(f64::total_cmp);
        return HermitianEigen {
            values,
            vectors: Vec::new(),
        };
    }
    let e = m.selfadjoint_eigendecomposition(Side::Lower);
    let (s, u) = (e.s().column_vector(), e.u());
    let values = (0..n).map(|i| s.read(i).re).collect();
    let vectors = (0..n)
        .map(|c| (0..n).map(|r| from_c64(u.read(r, c))).collect())
        .collect();
    HermitianEigen { values, vectors }
}
