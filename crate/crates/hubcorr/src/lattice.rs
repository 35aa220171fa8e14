//! Hypercubic lattice geometry.
//!
//! A [`LatticeSpec`] fixes the dimension, the number of sites along each
//! axis, the hopping rate `J`, the on-site repulsion `U` and the boundary
//! condition. Nearest-neighbour hopping on a hypercubic lattice gives the
//! coordination number `Z = 2D` and the structure factor
//!
//! ```text
//! T_k = (1/D) Σ_i cos k_i
//! ```
//!
//! which is the only way the lattice enters the momentum-space equations of
//! motion. The real-space adjacency matrix `T_{μν}` is used by the exact
//! diagonalization engine and by real-space assemblies of correlators.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported lattice dimension.
pub const MAX_DIM: usize = 3;

/// A wavevector or displacement with up to [`MAX_DIM`] components.
///
/// Components beyond the lattice dimension are zero.
pub type Vector = [f64; MAX_DIM];

/// Integer displacement between two sites.
pub type Displacement = [i64; MAX_DIM];

/// Boundary condition of the finite lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Periodic,
    Open,
}

/// Geometry and couplings of a nearest-neighbour hypercubic lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    /// Spatial dimension `D`.
    pub dimension: usize,
    /// Number of sites along each axis.
    pub extent: Vec<usize>,
    /// Hopping rate `J`.
    #[serde(rename = "J")]
    pub j: f64,
    /// On-site interaction `U`.
    #[serde(rename = "U")]
    pub u: f64,
    /// Boundary condition.
    #[serde(default)]
    pub boundary: Boundary,
}

impl LatticeSpec {
    /// Builds and validates a lattice specification.
    pub fn new(
        dimension: usize,
        extent: Vec<usize>,
        j: f64,
        u: f64,
        boundary: Boundary,
    ) -> Result<Self> {
        let spec = LatticeSpec {
            dimension,
            extent,
            j,
            u,
            boundary,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Periodic lattice with the same number of sites along every axis.
    pub fn cubic(dimension: usize, length: usize, j: f64, u: f64) -> Result<Self> {
        Self::new(dimension, vec![length; dimension], j, u, Boundary::Periodic)
    }

    /// Periodic chain of `length` sites.
    pub fn chain(length: usize, j: f64, u: f64) -> Result<Self> {
        Self::cubic(1, length, j, u)
    }

    /// Checks the invariants of the specification.
    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.dimension > MAX_DIM {
            return Err(Error::config(
                "dimension",
                format!("must be between 1 and {MAX_DIM}, got {}", self.dimension),
            ));
        }
        if self.extent.len() != self.dimension {
            return Err(Error::config(
                "extent",
                format!(
                    "expected {} entries, got {}",
                    self.dimension,
                    self.extent.len()
                ),
            ));
        }
        if self.extent.iter().any(|&l| l == 0) {
            return Err(Error::config("extent", "every axis needs at least one site"));
        }
        if !(self.j.is_finite() && self.j >= 0.0) {
            return Err(Error::config("J", format!("must be finite and >= 0, got {}", self.j)));
        }
        if !(self.u.is_finite() && self.u > 0.0) {
            return Err(Error::config("U", format!("must be finite and > 0, got {}", self.u)));
        }
        Ok(())
    }

    /// Copy of the specification with a different hopping rate.
    pub fn with_j(&self, j: f64) -> Self {
        LatticeSpec { j, ..self.clone() }
    }

    /// Copy of the specification with a different extent on every axis.
    pub fn with_length(&self, length: usize) -> Self {
        LatticeSpec {
            extent: vec![length; self.dimension],
            ..self.clone()
        }
    }

    /// Coordination number `Z = 2D`.
    pub fn coordination(&self) -> usize {
        2 * self.dimension
    }

    /// Total number of sites `N`.
    pub fn sites(&self) -> usize {
        self.extent.iter().product()
    }

    /// Structure factor `T_k` of this lattice.
    pub fn structure_factor(&self, k: &Vector) -> f64 {
        structure_factor(self.dimension, k)
    }

    /// Stiffness `ξ` defined by `T_k = 1 − ξ|k|² + O(k⁴)`.
    pub fn stiffness(&self) -> f64 {
        0.5 / self.dimension as f64
    }

    /// Momentum grid of the periodic lattice.
    pub fn momentum_grid(&self) -> Result<MomentumGrid> {
        if self.boundary == Boundary::Open {
            return Err(Error::config(
                "boundary",
                "momentum grids require periodic boundaries",
            ));
        }
        Ok(MomentumGrid::new(self.dimension, self.extent.clone()))
    }

    /// Integer coordinates of a site index. Axis 0 varies fastest.
    pub fn coordinates(&self, site: usize) -> Displacement {
        let mut x = [0i64; MAX_DIM];
        let mut rest = site;
        for (axis, &l) in self.extent.iter().enumerate() {
            x[axis] = (rest % l) as i64;
            rest /= l;
        }
        x
    }

    /// Site index of integer coordinates, wrapping periodically.
    pub fn site_index(&self, x: &Displacement) -> usize {
        let mut index = 0;
        let mut stride = 1;
        for (axis, &l) in self.extent.iter().enumerate() {
            index += x[axis].rem_euclid(l as i64) as usize * stride;
            stride *= l;
        }
        index
    }

    /// Nearest neighbours of a site, each listed once.
    ///
    /// Axes of length one contribute no bonds, and an axis of length two
    /// under periodic boundaries contributes a single neighbour.
    pub fn neighbors(&self, site: usize) -> Vec<usize> {
        let x = self.coordinates(site);
        let mut out = Vec::with_capacity(self.coordination());
        for (axis, &l) in self.extent.iter().enumerate() {
            for step in [-1i64, 1] {
                let mut y = x;
                y[axis] += step;
                if self.boundary == Boundary::Open && !(0..l as i64).contains(&y[axis]) {
                    continue;
                }
                let other = self.site_index(&y);
                if other != site && !out.contains(&other) {
                    out.push(other);
                }
            }
        }
        out
    }

    /// Symmetric 0/1 adjacency matrix `T_{μν}`.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let n = self.sites();
        let mut t = vec![vec![0u8; n]; n];
        for (mu, row) in t.iter_mut().enumerate() {
            for nu in self.neighbors(mu) {
                row[nu] = 1;
            }
        }
        t
    }

    /// Sublattice label (`0` for A, `1` for B) from the coordinate parity.
    pub fn sublattice(&self, site: usize) -> u8 {
        let x = self.coordinates(site);
        (x.iter().sum::<i64>().rem_euclid(2)) as u8
    }

    /// Whether every bond connects the two sublattices.
    pub fn is_bipartite(&self) -> bool {
        (0..self.sites()).all(|mu| {
            self.neighbors(mu)
                .into_iter()
                .all(|nu| self.sublattice(mu) != self.sublattice(nu))
        })
    }
}

/// Structure factor `T_k = (1/D) Σ_{i<D} cos k_i`.
pub fn structure_factor(dimension: usize, k: &Vector) -> f64 {
    k.iter().take(dimension).map(|ki| ki.cos()).sum::<f64>() / dimension as f64
}

/// Gradient of the structure factor with respect to `k`.
pub fn structure_factor_gradient(dimension: usize, k: &Vector) -> Vector {
    let mut g = [0.0; MAX_DIM];
    for (gi, ki) in g.iter_mut().zip(k).take(dimension) {
        *gi = -ki.sin() / dimension as f64;
    }
    g
}

/// Γ-centred grid of allowed wavevectors `k_i = 2π m_i / L_i`.
///
/// Points are ordered lexicographically in the integer indices with the
/// first axis slowest, so a one-dimensional grid is simply `m = 0..L`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    dimension: usize,
    extent: Vec<usize>,
}

impl MomentumGrid {
    /// Grid for the given dimension and per-axis extents.
    pub fn new(dimension: usize, extent: Vec<usize>) -> Self {
        assert_eq!(extent.len(), dimension, "extent length must equal dimension");
        MomentumGrid { dimension, extent }
    }

    /// Dense cubic grid with `points_per_axis` points along every axis.
    pub fn dense(dimension: usize, points_per_axis: usize) -> Self {
        Self::new(dimension, vec![points_per_axis; dimension])
    }

    /// Dimension of the wavevectors.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Points per axis.
    pub fn extent(&self) -> &[usize] {
        &self.extent
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.extent.iter().product()
    }

    /// Whether the grid is empty. A validated grid never is.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quadrature weight `1/N` of every point.
    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Integer indices of point `i`.
    pub fn indices(&self, i: usize) -> [usize; MAX_DIM] {
        let mut m = [0usize; MAX_DIM];
        let mut rest = i;
        for axis in (0..self.dimension).rev() {
            m[axis] = rest % self.extent[axis];
            rest /= self.extent[axis];
        }
        m
    }

    /// Wavevector of point `i`.
    pub fn point(&self, i: usize) -> Vector {
        let m = self.indices(i);
        let mut k = [0.0; MAX_DIM];
        for axis in 0..self.dimension {
            k[axis] = 2.0 * PI * m[axis] as f64 / self.extent[axis] as f64;
        }
        k
    }

    /// Index of the point `−k` modulo 2π.
    pub fn negated(&self, i: usize) -> usize {
        let m = self.indices(i);
        let mut index = 0;
        for axis in 0..self.dimension {
            let l = self.extent[axis];
            index = index * l + (l - m[axis]) % l;
        }
        index
    }

    /// All wavevectors in grid order.
    pub fn points(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Structure factor at every grid point.
    pub fn structure_factors(&self) -> Vec<f64> {
        self.points()
            .map(|k| structure_factor(self.dimension, &k))
            .collect()
    }

    /// Grid average `(1/N) Σ_k g_k`.
    pub fn average<F: Fn(usize, &Vector) -> f64>(&self, g: F) -> f64 {
        let sum: f64 = (0..self.len()).map(|i| g(i, &self.point(i))).sum();
        sum * self.weight()
    }

    /// Inverse transform `(1/N) Σ_k f_k e^{ik·s}` at displacement `s`.
    pub fn fourier(&self, values: &[Complex64], s: &Displacement) -> Complex64 {
        assert_eq!(values.len(), self.len(), "one value per grid point");
        let sum: Complex64 = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let k = self.point(i);
                let phase: f64 = (0..self.dimension).map(|a| k[a] * s[a] as f64).sum();
                v * Complex64::from_polar(1.0, phase)
            })
            .sum();
        sum * self.weight()
    }

    /// Real inverse transform for real, inversion-symmetric data.
    pub fn fourier_real(&self, values: &[f64], s: &Displacement) -> f64 {
        assert_eq!(values.len(), self.len(), "one value per grid point");
        let sum: f64 = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let k = self.point(i);
                let phase: f64 = (0..self.dimension).map(|a| k[a] * s[a] as f64).sum();
                v * phase.cos()
            })
            .sum();
        sum * self.weight()
    }
}

/// Displacement along the first axis.
pub fn along_x(s: i64) -> Displacement {
    [s, 0, 0]
}

/// Displacement of two steps along two different axes when available,
/// otherwise two steps along the only axis. This is the closest
/// next-nearest-neighbour separation reachable by two hops.
pub fn next_nearest(dimension: usize) -> Displacement {
    if dimension >= 2 {
        [1, 1, 0]
    } else {
        [2, 0, 0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn structure_factor_examples() {
        for d in 1..=3 {
            assert_eq!(structure_factor(d, &[0.0; 3]), 1.0);
        }
        assert_abs_diff_eq!(structure_factor(1, &[PI, 0.0, 0.0]), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            structure_factor(2, &[PI / 2.0, PI / 2.0, 0.0]),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn stiffness_matches_taylor_expansion() {
        for (d, want) in [(1, 0.5), (2, 0.25), (3, 1.0 / 6.0)] {
            let spec = LatticeSpec::cubic(d, 4, 0.1, 1.0).unwrap();
            assert_abs_diff_eq!(spec.stiffness(), want, epsilon = 1e-15);
            let q = 1e-3;
            let k = [q / (d as f64).sqrt(); 3];
            let mut kk = [0.0; 3];
            kk[..d].copy_from_slice(&k[..d]);
            let t = spec.structure_factor(&kk);
            assert_abs_diff_eq!((1.0 - t) / (q * q), want, epsilon = 1e-6);
        }
    }

    #[test]
    fn momentum_grid_examples() {
        let g = MomentumGrid::new(1, vec![4]);
        let ks: Vec<f64> = g.points().map(|k| k[0]).collect();
        assert_eq!(ks, vec![0.0, PI / 2.0, PI, 3.0 * PI / 2.0]);
        let g = MomentumGrid::new(1, vec![2]);
        assert_eq!(g.points().map(|k| k[0]).collect::<Vec<_>>(), vec![0.0, PI]);
        assert_eq!(MomentumGrid::new(2, vec![2, 2]).len(), 4);
    }

    #[test]
    fn open_boundary_has_no_grid() {
        let spec = LatticeSpec::new(1, vec![4], 0.1, 1.0, Boundary::Open).unwrap();
        assert!(matches!(spec.momentum_grid(), Err(Error::Config { .. })));
    }

    #[test]
    fn adjacency_row_sums() {
        let ring = LatticeSpec::chain(3, 0.1, 1.0).unwrap();
        assert!(ring.adjacency().iter().all(|r| r.iter().map(|&x| x as u32).sum::<u32>() == 2));
        let open = LatticeSpec::new(1, vec![3], 0.1, 1.0, Boundary::Open).unwrap();
        let sums: Vec<u32> = open
            .adjacency()
            .iter()
            .map(|r| r.iter().map(|&x| x as u32).sum())
            .collect();
        assert_eq!(sums, vec![1, 2, 1]);
        let sq = LatticeSpec::cubic(2, 3, 0.1, 1.0).unwrap();
        assert!(sq.adjacency().iter().all(|r| r.iter().map(|&x| x as u32).sum::<u32>() == 4));
    }

    #[test]
    fn adjacency_fourier_reproduces_structure_factor() {
        for (d, l) in [(1usize, 5usize), (1, 8), (2, 4), (2, 6), (3, 3)] {
            let spec = LatticeSpec::cubic(d, l, 0.1, 1.0).unwrap();
            let t = spec.adjacency();
            let grid = spec.momentum_grid().unwrap();
            let z = spec.coordination() as f64;
            for (i, k) in grid.points().enumerate() {
                let mut sum = 0.0;
                for nu in 0..spec.sites() {
                    let x = spec.coordinates(nu);
                    let phase: f64 = (0..d).map(|a| k[a] * x[a] as f64).sum();
                    sum += t[0][nu] as f64 * phase.cos();
                }
                let tk = grid.structure_factors()[i];
                assert_abs_diff_eq!(sum, z * tk, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bipartite_needs_even_extent() {
        assert!(LatticeSpec::chain(4, 0.1, 1.0).unwrap().is_bipartite());
        assert!(!LatticeSpec::chain(5, 0.1, 1.0).unwrap().is_bipartite());
        assert!(LatticeSpec::cubic(2, 4, 0.1, 1.0).unwrap().is_bipartite());
    }

    #[test]
    fn invalid_specs_name_the_key() {
        let err = LatticeSpec::chain(4, 0.1, -1.0).unwrap_err();
        assert!(matches!(err, Error::Config { ref key, .. } if key == "U"));
        let err = LatticeSpec::new(2, vec![3], 0.1, 1.0, Boundary::Periodic).unwrap_err();
        assert!(matches!(err, Error::Config { ref key, .. } if key == "extent"));
    }

    proptest! {
        #[test]
        fn structure_factor_bounded_and_even(kx in -10.0f64..10.0, ky in -10.0f64..10.0, kz in -10.0f64..10.0, d in 1usize..=3) {
            let k = [kx, ky, kz];
            let t = structure_factor(d, &k);
            prop_assert!(t.abs() <= 1.0 + 1e-15);
            prop_assert_eq!(t, structure_factor(d, &[-kx, -ky, -kz]));
        }

        #[test]
        fn grid_properties(d in 1usize..=3, l in 2usize..7) {
            let g = MomentumGrid::dense(d, l);
            prop_assert_eq!(g.len(), l.pow(d as u32));
            let total: f64 = (0..g.len()).map(|_| g.weight()).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            let mean_t = g.average(|_, k| structure_factor(d, k));
            prop_assert!(mean_t.abs() < 1e-12);
            for i in 0..g.len() {
                let j = g.negated(i);
                let (a, b) = (g.point(i), g.point(j));
                for axis in 0..d {
                    let s = (a[axis] + b[axis]) / (2.0 * PI);
                    prop_assert!((s - s.round()).abs() < 1e-12);
                }
                let t = structure_factor(d, &a);
                if l > 2 && i != 0 {
                    prop_assert!(t < 1.0 - 1e-12);
                }
            }
        }

        #[test]
        fn adjacency_symmetric_zero_diagonal(d in 1usize..=2, l in 1usize..6, open in any::<bool>()) {
            let b = if open { Boundary::Open } else { Boundary::Periodic };
            let spec = LatticeSpec::new(d, vec![l; d], 0.1, 1.0, b).unwrap();
            let t = spec.adjacency();
            for mu in 0..spec.sites() {
                prop_assert_eq!(t[mu][mu], 0);
                for nu in 0..spec.sites() {
                    prop_assert_eq!(t[mu][nu], t[nu][mu]);
                }
            }
        }
    }
}
