//! Experiment runners: each turns a [`RunConfig`] into result tables.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::{parse_range, Experiment, Model, RunConfig, Shape};
use super::report::ComparisonReport;
use super::table::{ResultSet, Table, Value};
use crate::bose_tilt::{
    effective_params, pair_creation_rate, sauter_beta_exact, static_beta_lattice, PulseProfile,
    PulseShape, TiltOptions,
};
use crate::bose_z1::{
    effective_temperature, ground_correlators, momentum_distribution, quasi_equilibrium, quench_correlators,
    BoseCorrelators,
};
use crate::bose_z2::{pair_correlations, parity_scan};
use crate::error::{Error, Result};
use crate::exact_diag::{
    band_edges, full_spectrum, ground_state, lowest_band_fit, quench_from_uniform, thermal_average, tilt_evolution,
    EdModel, SpectrumOptions, TiltEdOptions,
};
use crate::fermi::{
    dirac_pair_creation, fermi_tilt_options, ground_correlators_fermi, quench_average_fermi, quench_correlators_fermi,
    staggered_frequencies, FermiCorrelators, StaggeredField,
};
use crate::floquet::{
    fermi_monodromy_eigenvalues, first_resonance_prediction, resonance_scan, DeterminantOptions, FloquetDrive,
    DEFAULT_T_STEPS,
};
use crate::lattice::{along_x, Boundary, LatticeSpec, MomentumGrid};

/// Environment variable with the number of worker threads.
pub const THREADS_VAR: &str = "HUBCORR_THREADS";

/// Worker threads requested through [`THREADS_VAR`], default 1.
pub fn threads() -> Result<usize> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::config(THREADS_VAR, format!("must be a positive integer, got `{v}`"))),
        },
    }
}

/// Runs the experiment of `cfg` and returns its tables together with the
/// echoed configuration.
pub fn run(cfg: &RunConfig) -> Result<ResultSet> {
    cfg.validate()?;
    let spec = cfg.spec()?;
    let tables = match (cfg.model, cfg.experiment) {
        (Model::Bose, Experiment::Ground) => bose_ground(cfg, &spec)?,
        (Model::Bose, Experiment::Quench) => bose_quench(cfg, &spec)?,
        (Model::Bose, Experiment::Equilibrate) => bose_equilibrate(cfg, &spec)?,
        (Model::Bose, Experiment::Parity) => bose_parity(cfg, &spec)?,
        (Model::Bose, Experiment::Tilt) => bose_tilt(cfg, &spec)?,
        (Model::Bose, Experiment::Floquet) => bose_floquet(cfg, &spec)?,
        (Model::Fermi, Experiment::Ground) => fermi_ground(cfg, &spec)?,
        (Model::Fermi, Experiment::Quench) => fermi_quench(cfg, &spec)?,
        (Model::Fermi, Experiment::Equilibrate) => fermi_equilibrate(cfg, &spec)?,
        (Model::Fermi, Experiment::Tilt) => fermi_tilt(cfg, &spec)?,
        (Model::Fermi, Experiment::Staggered) => fermi_staggered(cfg, &spec)?,
        (Model::Fermi, Experiment::Floquet) => fermi_floquet(cfg, &spec)?,
        (_, Experiment::EdSpectrum) => ed_spectrum(&ed_model(&spec)?)?,
        (_, Experiment::EdGround) => ed_ground(&ed_model(&spec)?)?,
        (_, Experiment::EdThermal) => ed_thermal(cfg, &ed_model(&spec)?)?,
        (_, Experiment::EdQuench) => ed_quench(cfg, &ed_model(&spec)?)?,
        (_, Experiment::EdTilt) => ed_tilt(cfg, &spec)?,
        (_, Experiment::EdBand) => ed_band(&ed_model(&spec)?)?,
        (_, Experiment::CompareEdZ1) => vec![compare_ed_z1(&spec)?.to_table()],
        (model, experiment) => {
            return Err(Error::config(
                "experiment",
                format!("`{}` is not available for the {model:?} model", experiment.name()),
            ))
        }
    };
    let inputs = serde_json::to_value(cfg).map_err(|e| Error::Format(e.to_string()))?;
    Ok(ResultSet::new(inputs, tables))
}

fn grid(cfg: &RunConfig, spec: &LatticeSpec) -> Result<MomentumGrid> {
    if cfg.numeric.grid == 0 {
        spec.momentum_grid()
    } else {
        Ok(MomentumGrid::dense(spec.dimension, cfg.numeric.grid))
    }
}

fn times(cfg: &RunConfig) -> Vec<f64> {
    let n = cfg.numeric.samples;
    (0..n).map(|i| cfg.numeric.t_final * i as f64 / (n - 1) as f64).collect()
}

fn separations(spec: &LatticeSpec) -> i64 {
    (spec.extent[0] / 2).clamp(1, 16) as i64
}

fn momentum_columns(dimension: usize) -> Vec<&'static str> {
    ["kx", "ky", "kz"][..dimension].to_vec()
}

fn momentum_cells(grid: &MomentumGrid, i: usize) -> Vec<Value> {
    let k = grid.point(i);
    k[..grid.dimension()].iter().map(|&x| x.into()).collect()
}

fn summary(rows: &[(&str, f64)]) -> Table {
    let mut t = Table::new("summary", &["quantity", "value"]);
    for (name, v) in rows {
        t.push(vec![(*name).into(), (*v).into()]);
    }
    t
}

fn bose_modes(corr: &BoseCorrelators) -> Table {
    let d = corr.grid.dimension();
    let mut cols = momentum_columns(d);
    cols.extend(["T_k", "omega_sq", "f11", "Re f12", "Im f12", "Re f21", "Im f21", "f22"]);
    let mut t = Table::new("modes", &cols);
    let freqs = corr.frequencies();
    for (i, m) in corr.modes.iter().enumerate() {
        let mut row = momentum_cells(&corr.grid, i);
        row.extend([
            corr.structure[i].into(),
            freqs[i].omega_sq.into(),
            m.f11.re.into(),
            m.f12.re.into(),
            m.f12.im.into(),
            m.f21.re.into(),
            m.f21.im.into(),
            m.f22.re.into(),
        ]);
        t.push(row);
    }
    t
}

fn bose_real_space(corr: &BoseCorrelators, spec: &LatticeSpec) -> Table {
    let mut t = Table::new("real_space", &["s", "corr_hh", "corr_hp_re", "corr_hp_im", "obdm"]);
    for s in 1..=separations(spec) {
        let r = corr.real_space(&along_x(s));
        t.push(vec![s.into(), r.hh.into(), r.hp.re.into(), r.hp.im.into(), r.obdm.into()]);
    }
    t
}

fn bose_ground(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let corr = ground_correlators(spec, &grid(cfg, spec)?)?;
    Ok(vec![
        bose_modes(&corr),
        bose_real_space(&corr, spec),
        summary(&[("depletion", corr.depletion())]),
    ])
}

fn bose_quench(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let g = grid(cfg, spec)?;
    let mut series = Table::new("timeseries", &["t", "depletion", "obdm_s1", "obdm_s2", "F_n_s1", "F_parity_s1"]);
    let mut last = None;
    for t in times(cfg) {
        let c = quench_correlators(spec, &g, t);
        let pc = pair_correlations(&c, &along_x(1))?;
        series.push(vec![
            t.into(),
            c.depletion().into(),
            c.real_space(&along_x(1)).obdm.into(),
            c.real_space(&along_x(2)).obdm.into(),
            pc.f_n.into(),
            pc.f_parity.into(),
        ]);
        last = Some(c);
    }
    let last = last.ok_or_else(|| Error::config("samples", "no output times"))?;
    Ok(vec![series, bose_modes(&last), bose_real_space(&last, spec)])
}

fn bose_equilibrate(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let g = grid(cfg, spec)?;
    let eq = quasi_equilibrium(spec, &g)?;
    let d = eq.depletion();
    let mut rows = vec![("depletion", d)];
    if let Ok(t) = effective_temperature(spec.u, d) {
        rows.push(("effective_temperature", t));
    }
    Ok(vec![bose_modes(&eq), bose_real_space(&eq, spec), summary(&rows)])
}

fn bose_parity(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let g = grid(cfg, spec)?;
    let corr = ground_correlators(spec, &g)?;
    let mut table = Table::new("correlations", &["s", "F_n", "F_parity"]);
    for s in 1..=separations(spec) {
        let r = pair_correlations(&corr, &along_x(s))?;
        table.push(vec![s.into(), r.f_n.into(), r.f_parity.into()]);
    }
    let jc = crate::bose_z1::j_critical(spec.u);
    let n = cfg.numeric.samples;
    let js: Vec<f64> = (0..n).map(|i| 0.95 * jc * i as f64 / (n - 1) as f64).collect();
    let mut scan = Table::new("scan", &["J", "F_parity(s=1)"]);
    for (j, p) in parity_scan(spec, &g, &js, &along_x(1))? {
        scan.push(vec![j.into(), p.into()]);
    }
    Ok(vec![table, scan])
}

fn pulse(cfg: &RunConfig) -> PulseProfile {
    let n = &cfg.numeric;
    match n.shape {
        Shape::Window => PulseProfile::window(n.e0, n.tau),
        Shape::Sauter => PulseProfile::sauter(n.e0, n.tau),
        Shape::Constant => PulseProfile::along_x(PulseShape::Constant { e0: n.e0 }),
    }
}

fn tilt_options(cfg: &RunConfig, spec: &LatticeSpec) -> Result<TiltOptions> {
    Ok(TiltOptions {
        dt: cfg.numeric.dt / spec.u,
        ..TiltOptions::adiabatic(spec)?
    })
}

fn bose_tilt(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let g = grid(cfg, spec)?;
    let p = pulse(cfg);
    let mut modes = Table::new("modes", &["k", "|beta|^2", "method"]);
    let axis = |i: usize| g.point(i)[0];
    if cfg.numeric.shape == Shape::Constant {
        let b = static_beta_lattice(0.0, cfg.numeric.e0, spec)?;
        for i in 0..g.len() {
            modes.push(vec![axis(i).into(), b.into(), "static".into()]);
        }
        return Ok(vec![modes, summary(&[("beta_sq_static", b)])]);
    }
    let opts = tilt_options(cfg, spec)?;
    let rate = pair_creation_rate(spec, &p, &g, &opts)?;
    for (i, b) in rate.beta_sq.iter().enumerate() {
        modes.push(vec![axis(i).into(), (*b).into(), "ode".into()]);
    }
    if cfg.numeric.shape == Shape::Sauter {
        let params = effective_params(spec)?;
        for i in 0..g.len() {
            let k = g.point(i);
            let perp = k[1..].iter().map(|x| x * x).sum::<f64>();
            let b = sauter_beta_exact(k[0], perp, cfg.numeric.e0, cfg.numeric.tau, &params);
            modes.push(vec![k[0].into(), b.into(), "sauter".into()]);
        }
    }
    Ok(vec![
        modes,
        summary(&[
            ("P_exc", rate.p_exc),
            ("depletion", rate.depletion),
            ("max_residual", rate.max_residual),
        ]),
    ])
}

fn floquet_values(cfg: &RunConfig) -> Result<Vec<f64>> {
    let us = parse_range(&cfg.numeric.range)?;
    if us.iter().any(|&u| !(u > 0.0)) {
        return Err(Error::config("range", "interaction values must be positive"));
    }
    Ok(us)
}

fn bose_floquet(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let n = &cfg.numeric;
    let us = floquet_values(cfg)?;
    let drive = FloquetDrive::peierls_1d(n.e0.max(f64::MIN_POSITIVE), n.k, us[0], spec.j)?;
    let opts = DeterminantOptions {
        n_max: n.n_max,
        ..DeterminantOptions::default()
    };
    let scan = resonance_scan(&drive, &us, DEFAULT_T_STEPS, &opts)?;
    let mut points = Table::new("scan", &["U", "sin2_pinu_det", "sin2_pinu_mono", "Im_nu"]);
    for p in &scan.points {
        points.push(vec![p.u.into(), p.sin2_det.into(), p.sin2_mono.into(), p.im_nu.into()]);
    }
    let (c, w) = first_resonance_prediction(&drive);
    let mut bands = Table::new(
        "bands",
        &["lower", "upper", "center", "width", "max_Im_nu", "first_center_predicted", "first_width_predicted"],
    );
    for b in &scan.bands {
        bands.push(vec![
            b.lower.into(),
            b.upper.into(),
            b.center.into(),
            b.width.into(),
            b.max_im_nu.into(),
            c.into(),
            w.into(),
        ]);
    }
    Ok(vec![points, bands])
}

fn fermi_modes(corr: &FermiCorrelators) -> Table {
    let d = corr.grid.dimension();
    let mut cols = momentum_columns(d);
    cols.extend(["T_k", "omega", "f_1B1B", "Re f_1B0A", "Im f_1B0A"]);
    let mut t = Table::new("modes", &cols);
    let w = corr.frequencies();
    for (i, m) in corr.modes.iter().enumerate() {
        let mut row = momentum_cells(&corr.grid, i);
        row.extend([
            corr.structure[i].into(),
            w[i].into(),
            m.f11.into(),
            m.f10.re.into(),
            m.f10.im.into(),
        ]);
        t.push(row);
    }
    t
}

fn fermi_summary(corr: &FermiCorrelators) -> Table {
    summary(&[
        ("double_occupancy", corr.double_occupancy()),
        ("holon_density", corr.holon_density()),
    ])
}

fn fermi_ground(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let c = ground_correlators_fermi(spec, &grid(cfg, spec)?)?;
    Ok(vec![fermi_modes(&c), fermi_summary(&c)])
}

fn fermi_quench(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let g = grid(cfg, spec)?;
    let mut series = Table::new("timeseries", &["t", "double_occupancy"]);
    let mut last = None;
    for t in times(cfg) {
        let c = quench_correlators_fermi(spec, &g, t)?;
        series.push(vec![t.into(), c.double_occupancy().into()]);
        last = Some(c);
    }
    let last = last.ok_or_else(|| Error::config("samples", "no output times"))?;
    Ok(vec![series, fermi_modes(&last)])
}

fn fermi_equilibrate(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let c = quench_average_fermi(spec, &grid(cfg, spec)?)?;
    Ok(vec![fermi_modes(&c), fermi_summary(&c)])
}

fn fermi_tilt(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    if cfg.numeric.shape == Shape::Constant {
        return Err(Error::config("shape", "fermionic pair creation needs a pulse of finite duration"));
    }
    let g = grid(cfg, spec)?;
    let opts = TiltOptions {
        dt: cfg.numeric.dt / spec.u,
        ..fermi_tilt_options(spec.u)
    };
    let r = dirac_pair_creation(spec, &pulse(cfg), &g, &opts)?;
    let mut modes = Table::new("modes", &["k", "|beta|^2", "method"]);
    for (i, b) in r.beta_sq.iter().enumerate() {
        modes.push(vec![g.point(i)[0].into(), (*b).into(), "ode".into()]);
    }
    Ok(vec![
        modes,
        summary(&[("double_occupancy", r.double_occupancy), ("max_residual", r.max_residual)]),
    ])
}

fn fermi_staggered(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let field = StaggeredField::new(cfg.numeric.a, spec)?;
    let g = grid(cfg, spec)?;
    let mut cols = momentum_columns(spec.dimension);
    cols.extend(["T_k", "omega_soft_minus", "omega_soft_plus", "omega_charge"]);
    let mut t = Table::new("modes", &cols);
    for (i, tk) in g.structure_factors().into_iter().enumerate() {
        let f = staggered_frequencies(spec.j, spec.u, field.a, tk);
        let mut row = momentum_cells(&g, i);
        row.extend([tk.into(), f.soft.0.into(), f.soft.1.into(), f.charge.into()]);
        t.push(row);
    }
    Ok(vec![t])
}

fn fermi_floquet(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    let n = &cfg.numeric;
    let mut t = Table::new("scan", &["U", "max_abs_lambda"]);
    for u in floquet_values(cfg)? {
        let d = FloquetDrive::peierls_1d(n.e0, n.k, u, spec.j)?;
        let m = fermi_monodromy_eigenvalues(&d, DEFAULT_T_STEPS)?
            .iter()
            .map(|l| l.norm())
            .fold(0.0, f64::max);
        t.push(vec![u.into(), m.into()]);
    }
    Ok(vec![t])
}

/// Unit-filling chain for exact diagonalization.
pub fn ed_model(spec: &LatticeSpec) -> Result<EdModel> {
    if spec.dimension != 1 {
        return Err(Error::config("dimension", "exact diagonalization runs on chains (dimension = 1)"));
    }
    EdModel::unit_filling(spec)
}

fn ed_spectrum(model: &EdModel) -> Result<Vec<Table>> {
    let opts = SpectrumOptions {
        threads: threads()?,
        ..SpectrumOptions::default()
    };
    let s = full_spectrum(model, &opts)?;
    let mut t = Table::new("spectrum", &["K", "Omega", "E"]);
    for (k, o, e) in s.rows() {
        t.push(vec![k.into(), o.into(), e.into()]);
    }
    Ok(vec![t])
}

fn ed_observable_tables(o: &crate::exact_diag::StateObservables, periodic: bool) -> Vec<Table> {
    let mut occ = Table::new("occupation", &["n", "p"]);
    for (n, p) in o.occupation.iter().enumerate() {
        occ.push(vec![n.into(), (*p).into()]);
    }
    let mut corr = Table::new("correlations", &["s", "obdm_re", "obdm_im", "F_n", "F_parity"]);
    for s in 0..o.obdm.len() {
        corr.push(vec![
            s.into(),
            o.obdm[s].re.into(),
            o.obdm[s].im.into(),
            o.number_correlation(s).into(),
            o.parity_correlation(s).into(),
        ]);
    }
    let mut out = vec![occ, corr];
    if periodic {
        let mut mom = Table::new("momentum", &["q", "k", "P"]);
        let l = o.obdm.len();
        for (q, p) in o.momentum_distribution().into_iter().enumerate() {
            mom.push(vec![q.into(), (2.0 * PI * q as f64 / l as f64).into(), p.into()]);
        }
        out.push(mom);
    }
    out
}

fn ed_ground(model: &EdModel) -> Result<Vec<Table>> {
    let g = ground_state(model)?;
    let o = g.observables(model)?;
    let mut out = vec![summary(&[("energy", g.energy), ("residual", g.residual)])];
    out.extend(ed_observable_tables(&o, model.spec().boundary == Boundary::Periodic));
    Ok(out)
}

fn ed_thermal(cfg: &RunConfig, model: &EdModel) -> Result<Vec<Table>> {
    let ts = parse_range(&cfg.numeric.range)?;
    if ts.iter().any(|&t| t < 0.0) {
        return Err(Error::config("range", "temperatures must be >= 0"));
    }
    let opts = SpectrumOptions {
        observables: true,
        threads: threads()?,
        ..SpectrumOptions::default()
    };
    let s = full_spectrum(model, &opts)?;
    let mut t = Table::new("thermal", &["T", "energy", "p0", "p1", "p2", "obdm_s1", "F_n_s1", "F_parity_s1"]);
    for temp in ts {
        let th = thermal_average(&s, temp)?;
        let o = &th.observables;
        let p = |n: usize| o.occupation.get(n).copied().unwrap_or(0.0);
        t.push(vec![
            temp.into(),
            th.energy.into(),
            p(0).into(),
            p(1).into(),
            p(2).into(),
            o.obdm.get(1).map_or(0.0, |z| z.re).into(),
            o.number_correlation(1.min(o.obdm.len() - 1)).into(),
            o.parity_correlation(1.min(o.obdm.len() - 1)).into(),
        ]);
    }
    Ok(vec![t])
}

fn ed_quench(cfg: &RunConfig, model: &EdModel) -> Result<Vec<Table>> {
    let q = quench_from_uniform(model)?;
    let cols = ["t", "p0", "p1", "p2", "obdm_s1", "obdm_s2"];
    let row = |t: Value, o: &crate::exact_diag::StateObservables| -> Vec<Value> {
        let p = |n: usize| o.occupation.get(n).copied().unwrap_or(0.0);
        let ob = |s: usize| o.obdm.get(s).map_or(Complex64::new(0.0, 0.0), |z| *z).re;
        vec![t, p(0).into(), p(1).into(), p(2).into(), ob(1).into(), ob(2).into()]
    };
    let mut series = Table::new("timeseries", &cols);
    for t in times(cfg) {
        series.push(row(t.into(), &q.observables_at(t)));
    }
    let mut de = Table::new("diagonal_ensemble", &cols);
    let avg = q.diagonal_ensemble(crate::exact_diag::quench::DEGENERACY_TOLERANCE);
    de.push(row("inf".into(), &avg));
    Ok(vec![series, de, summary(&[("energy", q.energy())])])
}

fn ed_tilt(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Vec<Table>> {
    if spec.boundary != Boundary::Open {
        return Err(Error::config("boundary", "the exact tilt needs boundary = \"open\""));
    }
    let model = ed_model(spec)?;
    let n = &cfg.numeric;
    if n.shape != Shape::Window {
        return Err(Error::config("shape", "the exact tilt uses the window pulse"));
    }
    let g = ground_state(&model)?;
    let opts = TiltEdOptions {
        dt: n.dt / spec.u,
        ..TiltEdOptions::for_u(spec.u)
    };
    let r = tilt_evolution(&model, &g, n.e0, n.tau, &opts)?;
    let mut t = Table::new("tilt", &["tau", "E0", "P_exc", "survival", "norm_drift", "dt"]);
    t.push(vec![n.tau.into(), n.e0.into(), r.p_exc.into(), r.survival.into(), r.norm_drift.into(), r.dt.into()]);
    Ok(vec![t])
}

fn ed_band(model: &EdModel) -> Result<Vec<Table>> {
    let f = lowest_band_fit(model)?;
    let spec = model.spec();
    let mut edges = Table::new("edges", &["K", "lower", "upper"]);
    let l = model.sites();
    for q in 0..=l / 2 {
        let k = 2.0 * PI * q as f64 / l as f64;
        let (lo, hi) = band_edges(spec.j, spec.u, k, 2048)?;
        edges.push(vec![k.into(), lo.into(), hi.into()]);
    }
    Ok(vec![
        summary(&[
            ("E01", f.e01),
            ("E02", f.e02),
            ("E11", f.e11),
            ("gap", f.gap),
            ("velocity", f.velocity),
            ("velocity_analytic", f.analytic),
        ]),
        edges,
    ])
}

/// Relative tolerance of the momentum-distribution comparison.
pub const COMPARE_TOLERANCE: f64 = 0.2;

/// Ground-state `P(k)` of the exact chain against the first-order result
/// on the same momentum grid.
pub fn compare_ed_z1(spec: &LatticeSpec) -> Result<ComparisonReport> {
    let model = ed_model(spec)?;
    if spec.boundary != Boundary::Periodic {
        return Err(Error::config("boundary", "the comparison needs a periodic chain"));
    }
    let g = ground_state(&model)?;
    let ed = g.observables(&model)?.momentum_distribution();
    let z1 = momentum_distribution(&ground_correlators(spec, &spec.momentum_grid()?)?);
    let l = spec.extent[0];
    let mut report = ComparisonReport::new("P(k)");
    for (q, (a, b)) in z1.iter().zip(&ed).enumerate() {
        report.push(format!("q={q}/{l}"), *a, *b, COMPARE_TOLERANCE);
    }
    Ok(report)
}

/// Analytic excitation rate for the window pulse on an infinite chain,
/// normalised to `sites` sites.
pub fn analytic_tilt_rate(spec: &LatticeSpec, sites: usize, e0: f64, tau: f64, grid_points: usize) -> Result<f64> {
    let chain = LatticeSpec::chain(sites, spec.j, spec.u)?;
    let grid = MomentumGrid::dense(1, grid_points);
    let opts = TiltOptions::adiabatic(&chain)?;
    Ok(pair_creation_rate(&chain, &PulseProfile::window(e0, tau), &grid, &opts)?.p_exc)
}
