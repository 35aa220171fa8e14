//! Occupation-number basis of `N` bosons on `L` sites.
//!
//! States are stored in descending lexicographic order, so that for
//! `N = L = 2` the basis reads `(2,0), (1,1), (0,2)`. The position of a
//! state is computed combinatorially from its occupations, without a hash
//! table: the number of states sharing a prefix and carrying a larger
//! occupation at the next site is a single binomial coefficient.

use crate::error::{Error, Result};

/// Default cap on the number of Fock states held in memory.
pub const DEFAULT_MAX_DIMENSION: usize = 25_000_000;

/// Number of ways to place `n` bosons on `sites` sites, if it fits in `u64`.
pub fn dimension(n: usize, sites: usize) -> Option<u64> {
    if sites == 0 {
        return Some(u64::from(n == 0));
    }
    // C(n + sites − 1, n), accumulated with exact intermediate divisions
    let k = n.min(sites - 1) as u64;
    let top = (n + sites - 1) as u64;
    let mut c: u64 = 1;
    for i in 0..k {
        c = c.checked_mul(top - i)? / (i + 1);
    }
    Some(c)
}

/// Complete Fock basis with a fixed particle number.
#[derive(Debug, Clone)]
pub struct FockBasis {
    particles: usize,
    sites: usize,
    occupations: Vec<u8>,
    /// `count[n][s]`: number of states of `n` bosons on `s` sites.
    count: Vec<Vec<u64>>,
}

impl FockBasis {
    /// Basis of `particles` bosons on `sites` sites with the default budget.
    pub fn new(particles: usize, sites: usize) -> Result<Self> {
        Self::with_budget(particles, sites, DEFAULT_MAX_DIMENSION)
    }

    /// Basis with an explicit cap on the dimension.
    pub fn with_budget(particles: usize, sites: usize, max_dimension: usize) -> Result<Self> {
        if sites == 0 {
            return Err(Error::config("L", "need at least one site"));
        }
        if particles == 0 {
            return Err(Error::config("N", "need at least one particle"));
        }
        if particles > u8::MAX as usize {
            return Err(Error::config("N", format!("at most {} particles supported", u8::MAX)));
        }
        let d = dimension(particles, sites).unwrap_or(u64::MAX);
        if d > max_dimension as u64 {
            return Err(Error::Budget {
                context: format!("Fock basis N={particles}, L={sites}"),
                requested: d.min(usize::MAX as u64) as usize,
                limit: max_dimension,
            });
        }
        let count = (0..=particles)
            .map(|n| (0..=sites).map(|s| dimension(n, s).unwrap_or(u64::MAX)).collect())
            .collect();
        let d = d as usize;
        let mut occupations = Vec::with_capacity(d * sites);
        let mut state = vec![0u8; sites];
        state[0] = particles as u8;
        loop {
            occupations.extend_from_slice(&state);
            if !next_descending(&mut state) {
                break;
            }
        }
        debug_assert_eq!(occupations.len(), d * sites);
        Ok(FockBasis {
            particles,
            sites,
            occupations,
            count,
        })
    }

    /// Number of particles `N`.
    pub fn particles(&self) -> usize {
        self.particles
    }

    /// Number of sites `L`.
    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Dimension `D`.
    pub fn dimension(&self) -> usize {
        self.occupations.len() / self.sites
    }

    /// Occupations of the state at position `i`.
    pub fn state(&self, i: usize) -> &[u8] {
        &self.occupations[i * self.sites..(i + 1) * self.sites]
    }

    /// Iterator over all states in basis order.
    pub fn states(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.occupations.chunks_exact(self.sites)
    }

    /// Position of a state, or `None` if it does not belong to the basis.
    pub fn index(&self, state: &[u8]) -> Option<usize> {
        if state.len() != self.sites
            || state.iter().map(|&n| n as usize).sum::<usize>() != self.particles
        {
            return None;
        }
        Some(self.index_unchecked(state))
    }

    /// Position of a state known to hold `N` particles on `L` sites.
    pub fn index_unchecked(&self, state: &[u8]) -> usize {
        let mut rank = 0u64;
        let mut remaining = self.particles;
        for (mu, &n) in state[..self.sites - 1].iter().enumerate() {
            let n = n as usize;
            if n < remaining {
                rank += self.count[remaining - n - 1][self.sites - mu];
            }
            remaining -= n;
        }
        rank as usize
    }

    /// Uniform state with `N/L` particles per site, if the filling is integer.
    pub fn uniform_state(&self) -> Option<Vec<u8>> {
        (self.particles % self.sites == 0).then(|| vec![(self.particles / self.sites) as u8; self.sites])
    }
}

/// Advances `state` to its successor in descending lexicographic order.
fn next_descending(state: &mut [u8]) -> bool {
    let l = state.len();
    let Some(i) = (0..l - 1).rev().find(|&i| state[i] > 0) else {
        return false;
    };
    let tail: u8 = state[i + 1..].iter().sum();
    state[i] -= 1;
    state[i + 1] = tail + 1;
    for n in &mut state[i + 2..] {
        *n = 0;
    }
    true
}
