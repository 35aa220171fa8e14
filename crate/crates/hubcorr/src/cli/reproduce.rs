//! Named figure datasets.

use std::f64::consts::PI;

use super::experiments::{analytic_tilt_rate, ed_model};
use super::table::{ResultSet, Table};
use crate::bose_z1::{j_critical, omega_bose};
use crate::bose_z2::pair_correlations;
use crate::error::{Error, Result};
use crate::exact_diag::{ground_state, tilt_evolution, TiltEdOptions};
use crate::lattice::{along_x, Boundary, LatticeSpec, MomentumGrid};

/// Catalog of figure identifiers with a one-line description.
pub const FIGURES: &[(&str, &str)] = &[
    ("dispersion-1d", "k against omega^2/U^2 on a chain for several J/U"),
    ("pexc-surface", "tilt excitation probability over (tau, E0): 1/Z result and exact chain"),
    ("parity-1d", "J/U against the parity correlation at s = 1, 2, 3 on a chain"),
];

/// Options of a reproduction run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReproduceOptions {
    /// Chain length of exact-diagonalization panels.
    pub ed_sites: usize,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions { ed_sites: 8 }
    }
}

/// Builds the dataset of figure `id`.
pub fn reproduce(id: &str, opts: &ReproduceOptions) -> Result<ResultSet> {
    let tables = match id {
        "dispersion-1d" => dispersion_1d()?,
        "pexc-surface" => pexc_surface(opts)?,
        "parity-1d" => parity_1d()?,
        _ => {
            let known: Vec<&str> = FIGURES.iter().map(|f| f.0).collect();
            return Err(Error::config(
                "figure",
                format!("unknown figure `{id}`; known: {}", known.join(", ")),
            ));
        }
    };
    let inputs = serde_json::json!({ "figure": id, "ed_sites": opts.ed_sites });
    Ok(ResultSet::new(inputs, tables))
}

fn dispersion_1d() -> Result<Vec<Table>> {
    let ratios = [0.05, 0.1, 0.15, j_critical(1.0)];
    let mut t = Table::new("dispersion", &["J/U", "k", "omega_sq/U^2"]);
    let n = 201;
    for &j in &ratios {
        for i in 0..n {
            let k = -PI + 2.0 * PI * i as f64 / (n - 1) as f64;
            let tk = 2.0 * k.cos();
            t.push(vec![j.into(), k.into(), omega_bose(j, 1.0, tk).omega_sq.into()]);
        }
    }
    Ok(vec![t])
}

fn pexc_surface(opts: &ReproduceOptions) -> Result<Vec<Table>> {
    let (j, u) = (0.1, 1.0);
    let open = LatticeSpec::new(1, vec![opts.ed_sites], j, u, Boundary::Open)?;
    let model = ed_model(&open)?;
    let g = ground_state(&model)?;
    let mut t = Table::new("surface", &["tau", "E0", "P_exc_analytic", "P_exc_ed"]);
    for &tau in &[0.5, 1.0, 2.0, 4.0, 8.0] {
        for &e0 in &[0.05, 0.1, 0.2, 0.3] {
            let analytic = analytic_tilt_rate(&open, opts.ed_sites, e0, tau, 256)?;
            let ed = tilt_evolution(&model, &g, e0, tau, &TiltEdOptions::for_u(u))?.p_exc;
            t.push(vec![tau.into(), e0.into(), analytic.into(), ed.into()]);
        }
    }
    Ok(vec![t])
}

fn parity_1d() -> Result<Vec<Table>> {
    let grid = MomentumGrid::dense(1, 512);
    let mut t = Table::new("parity", &["J/U", "F_parity_s1", "F_parity_s2", "F_parity_s3"]);
    let jc = j_critical(1.0);
    for i in 0..=40 {
        let j = 0.9 * jc * i as f64 / 40.0;
        let spec = LatticeSpec::chain(512, j, 1.0)?;
        let corr = crate::bose_z1::ground_correlators(&spec, &grid)?;
        let mut row = vec![j.into()];
        for s in 1..=3 {
            row.push(pair_correlations(&corr, &along_x(s))?.f_parity.into());
        }
        t.push(row);
    }
    Ok(vec![t])
}
