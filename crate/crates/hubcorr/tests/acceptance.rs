//! Acceptance suite.
//!
//! Every criterion prints one `PASS` or `FAIL` line with the numbers it
//! compared. A failing criterion only turns into a non-zero exit status
//! when the environment variable `HUBCORR_ACCEPTANCE_STRICT` is set, so
//! that the report never hides the remaining test targets.

use std::f64::consts::PI;
use std::time::Instant;

use hubcorr::bose_tilt::{
    effective_params, integrate_ph_modes, pair_creation_rate, sauter_beta_exact, sauter_infinite, static_beta,
    PulseProfile, TiltOptions,
};
use hubcorr::bose_z1::{
    evolve_z1, ground_correlators, j_critical, momentum_distribution, omega_bose, quasi_equilibrium,
    quench_correlators, BoseCorrelators, EvolveOptions,
};
use hubcorr::bose_z2::{parity_correlation, parity_series_coefficients};
use hubcorr::exact_diag::basis::dimension;
use hubcorr::exact_diag::{
    analytic_velocity, fit_temperature, full_spectrum, ground_state, lowest_band_fit, quench_from_uniform,
    thermal_average, tilt_evolution, EdModel, SpectralDecomposition, SpectrumOptions, TiltEdOptions,
};
use hubcorr::fermi::{evolve_charge_modes, quench_correlators_fermi, ChargeEvolveOptions, FermiCorrelators};
use hubcorr::floquet::{
    determinant_relation, fermi_monodromy_eigenvalues, first_resonance_prediction, monodromy_exponent,
    resonance_expansion, resonance_scan, DeterminantOptions, FloquetDrive, DEFAULT_POLE_MARGIN, DEFAULT_T_STEPS,
};
use hubcorr::lattice::{along_x, next_nearest, Boundary, LatticeSpec, MomentumGrid};

type Outcome = Result<String, String>;

const STRICT_VAR: &str = "HUBCORR_ACCEPTANCE_STRICT";

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

fn critical_coupling() -> Outcome {
    let jc = j_critical(1.0);
    let w = omega_bose(jc, 1.0, 1.0).omega().norm();
    check(
        (jc - 0.1715729).abs() <= 1e-6 && w <= 1e-8,
        format!("j_crit = {jc:.9}, omega(j_crit, T=1) = {w:.2e}"),
    )
}

fn conservation() -> Outcome {
    let spec = LatticeSpec::chain(64, 0.1, 1.0).map_err(fail)?;
    let grid = spec.momentum_grid().map_err(fail)?;
    let opts = EvolveOptions::default();
    let mott = BoseCorrelators::mott(&spec, &grid);
    let ramp = |t: f64| 0.1 * (t / 5.0).min(1.0);
    let mut worst: f64 = 0.0;
    let cases: [(&str, f64, Box<dyn Fn(f64) -> f64>); 4] = [
        ("Mott sudden", 20.0, Box::new(|_| 0.1)),
        ("Mott ramped", 20.0, Box::new(ramp)),
        ("superfluid sudden", 5.0, Box::new(|_| 0.2)),
        ("superfluid ramped", 8.0, Box::new(|t: f64| 0.2 * (t / 3.0).min(1.0))),
    ];
    let mut parts = Vec::new();
    for (name, t_end, j) in cases.iter() {
        let (_, drift) = evolve_z1(&mott, j, *t_end, &opts).map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{name} {drift:.1e}"));
        worst = worst.max(drift);
    }
    let neel = FermiCorrelators::neel(&spec, &grid);
    let copts = ChargeEvolveOptions::default();
    for (name, j) in [("fermi sudden", Box::new(|_: f64| 0.1) as Box<dyn Fn(f64) -> f64>), ("fermi ramped", Box::new(ramp))] {
        let ev = evolve_charge_modes(&spec, &neel, j, None, 20.0, &copts).map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{name} {:.1e}", ev.drift));
        worst = worst.max(ev.drift);
    }
    check(worst <= 1e-8, format!("max drift {worst:.2e} ({})", parts.join(", ")))
}

fn closed_form_vs_ode() -> Outcome {
    let spec = LatticeSpec::chain(64, 0.1, 1.0).map_err(fail)?;
    let grid = spec.momentum_grid().map_err(fail)?;
    let (ode, _) = evolve_z1(&BoseCorrelators::mott(&spec, &grid), |_| 0.1, 5.0, &EvolveOptions::default())
        .map_err(fail)?;
    let exact = quench_correlators(&spec, &grid, 5.0);
    let mut bose: f64 = 0.0;
    for (a, b) in ode.modes.iter().zip(&exact.modes) {
        bose = bose
            .max((a.f11 - b.f11).norm())
            .max((a.f12 - b.f12).norm())
            .max((a.f21 - b.f21).norm())
            .max((a.f22 - b.f22).norm());
    }
    let ev = evolve_charge_modes(
        &spec,
        &FermiCorrelators::neel(&spec, &grid),
        |_| 0.1,
        None,
        5.0,
        &ChargeEvolveOptions::default(),
    )
    .map_err(fail)?;
    let fexact = quench_correlators_fermi(&spec, &grid, 5.0).map_err(fail)?;
    let mut fermi: f64 = 0.0;
    for (a, b) in ev.correlators.modes.iter().zip(&fexact.modes) {
        fermi = fermi
            .max((a.f00 - b.f00).abs())
            .max((a.f01 - b.f01).norm())
            .max((a.f10 - b.f10).norm())
            .max((a.f11 - b.f11).abs());
    }
    check(
        bose <= 1e-6 && fermi <= 1e-6,
        format!("max |ODE - closed form|: bosons {bose:.1e}, fermions {fermi:.1e}"),
    )
}

fn factor_of_two() -> Outcome {
    let spec = LatticeSpec::cubic(3, 64, 1e-2, 1.0).map_err(fail)?;
    let grid = spec.momentum_grid().map_err(fail)?;
    let s = next_nearest(3);
    let eq = quasi_equilibrium(&spec, &grid).map_err(fail)?.real_space(&s).pp;
    let gs = ground_correlators(&spec, &grid).map_err(fail)?.real_space(&s).pp;
    let ratio = eq / gs;
    check(
        (ratio - 2.0).abs() <= 0.02,
        format!("<p†p>_equil / <p†p>_ground = {ratio:.5} ({eq:.3e} / {gs:.3e})"),
    )
}

fn sauter_chain() -> Outcome {
    let spec = LatticeSpec::chain(64, 0.1, 1.0).map_err(fail)?;
    let params = effective_params(&spec).map_err(fail)?;
    let mc2 = params.rest_energy();
    // field chosen so that the long-pulse exponent is about 5
    let e0 = PI * params.m_eff_c4 / (5.0 * params.c());
    let tau = 50.0 / mc2;
    let finite = sauter_beta_exact(0.0, 0.0, e0, tau, &params);
    let limit = sauter_infinite(0.0, e0, &params);
    let rel_limit = (finite / limit - 1.0).abs();
    let stat = static_beta(0.0, e0, &params, 0.0, spec.u);
    let rel_static = (stat - limit).abs() / limit;
    let weak = PulseProfile::sauter(0.02, 1.0);
    let span = weak.natural_span().map_err(fail)?;
    let opts = TiltOptions::adiabatic(&spec).map_err(fail)?;
    let ode = integrate_ph_modes(&spec, &weak, &[0.0; 3], span, &opts).map_err(fail)?.beta_sq();
    let analytic = sauter_beta_exact(0.0, 0.0, 0.02, 1.0, &params);
    let rel_ode = (ode / analytic - 1.0).abs();
    check(
        rel_limit <= 0.02 && rel_static <= 4.0 * f64::EPSILON && rel_ode <= 0.05,
        format!(
            "tau mc^2 = 50: rel. dev. {rel_limit:.2e}; static with xi = 0: {rel_static:.1e}; weak pulse ODE vs exact: {ode:.4e} vs {analytic:.4e} ({rel_ode:.2e})"
        ),
    )
}

fn ed_dimensions() -> Outcome {
    let d99 = dimension(9, 9).unwrap_or(0);
    if d99 != 24310 {
        return Err(format!("D(9,9) = {d99}"));
    }
    for l in 2..=9 {
        let m = EdModel::unit_filling(&LatticeSpec::chain(l, 0.0, 1.0).map_err(fail)?).map_err(fail)?;
        let total: usize = m.sectors().map_err(fail)?.iter().map(|s| s.dimension()).sum();
        if total != m.basis().dimension() {
            return Err(format!("L = {l}: sum of sector dimensions {total} != {}", m.basis().dimension()));
        }
    }
    for l in 2..=8 {
        let m = EdModel::unit_filling(&LatticeSpec::chain(l, 0.0, 1.0).map_err(fail)?).map_err(fail)?;
        let e = full_spectrum(&m, &SpectrumOptions::default()).map_err(fail)?.all_energies();
        let band = e.iter().filter(|&&x| (x - 1.0).abs() < 1e-12).count();
        let top = e[e.len() - 1];
        let want_top = (l * (l - 1)) as f64 / 2.0;
        if e[0] != 0.0 || e[1] != 1.0 || band != l * (l - 1) || top != want_top {
            return Err(format!(
                "L = {l}: E01 = {}, next = {}, band degeneracy {band}, top {top}",
                e[0], e[1]
            ));
        }
    }
    Ok("D(9,9) = 24310; sectors add up for L = 2..9; J = 0 spectra exact for L = 2..8".into())
}

fn effective_velocity() -> Outcome {
    let analytic = analytic_velocity(0.1, 1.0);
    let m = EdModel::unit_filling(&LatticeSpec::chain(9, 0.1, 1.0).map_err(fail)?).map_err(fail)?;
    let fit = lowest_band_fit(&m).map_err(fail)?;
    let rel = (fit.velocity / 0.269 - 1.0).abs();
    check(
        (analytic - 0.269).abs() <= 1e-3 && rel <= 0.1,
        format!(
            "analytic {analytic:.5}; ED fit {:.5} ({:.1}% off; E01 {:.6}, E02 {:.6}, E11 {:.6})",
            fit.velocity,
            100.0 * rel,
            fit.e01,
            fit.e02,
            fit.e11
        ),
    )
}

fn momentum_distribution_vs_first_order() -> Outcome {
    let spec = LatticeSpec::chain(10, 0.1, 1.0).map_err(fail)?;
    let m = EdModel::unit_filling(&spec).map_err(fail)?;
    let g = ground_state(&m).map_err(fail)?;
    let ed = g.observables(&m).map_err(fail)?.momentum_distribution();
    let grid = MomentumGrid::new(1, vec![10]);
    let z1 = momentum_distribution(&ground_correlators(&spec, &grid).map_err(fail)?);
    let mut worst: f64 = 0.0;
    for (a, b) in ed.iter().zip(&z1) {
        worst = worst.max((a - b).abs() / b.abs());
    }
    let show: Vec<String> = ed.iter().zip(&z1).take(6).map(|(a, b)| format!("{a:.4}/{b:.4}")).collect();
    check(
        worst <= 0.2,
        format!("max rel. deviation {:.1}% (ED/1/Z for q = 0..5: {})", 100.0 * worst, show.join(" ")),
    )
}

fn prethermalisation(spectrum: &SpectralDecomposition, m: &EdModel) -> Outcome {
    let q = quench_from_uniform(m).map_err(fail)?;
    let de = q.diagonal_ensemble(hubcorr::exact_diag::quench::DEGENERACY_TOLERANCE);
    let t_fit = fit_temperature(spectrum, 0, de.occupation[0], 1e-3, 5.0).map_err(fail)?;
    let th = thermal_average(spectrum, t_fit).map_err(fail)?.observables;
    let residual = (1..de.occupation.len())
        .map(|n| (de.occupation[n] - th.occupation[n]).abs())
        .fold(0.0, f64::max);
    let obdm_dev = (de.obdm[1].re - th.obdm[1].re).abs();
    check(
        t_fit > 0.0 && t_fit < 0.15 && obdm_dev > 3.0 * residual,
        format!(
            "T_fit = {t_fit:.5} U; p(n) residual {residual:.2e}; OBDM(1) DE {:.5} vs thermal {:.5} (dev {obdm_dev:.2e}, ratio {:.1})",
            de.obdm[1].re,
            th.obdm[1].re,
            obdm_dev / residual
        ),
    )
}

fn floquet_resonances() -> Outcome {
    let mut det_mono: f64 = 0.0;
    for j in [0.02, 0.05, 0.1] {
        for i in 0..=24 {
            let u = 0.3 + 0.1 * i as f64;
            let d = FloquetDrive::peierls_1d(1.0, 0.3, u, j).map_err(fail)?;
            let mono = monodromy_exponent(&d, DEFAULT_T_STEPS).map_err(fail)?;
            let det = determinant_relation(&d, &DeterminantOptions::default()).map_err(fail)?;
            det_mono = det_mono.max((mono.sin2_pi_nu - det.sin2_pi_nu).abs());
        }
    }
    let d = FloquetDrive::peierls_1d(1.0, 0.3, 1.0, 0.05).map_err(fail)?;
    let (c, w) = first_resonance_prediction(&d);
    let us: Vec<f64> = (0..=60).map(|i| 0.85 + 0.005 * i as f64).collect();
    let scan = resonance_scan(&d, &us, 1000, &DeterminantOptions::default()).map_err(fail)?;
    let band = scan.bands.first().ok_or("no resonance band found")?;
    let mut series: f64 = 0.0;
    for u in [0.3, 0.6, 1.4, 1.7, 2.4] {
        let d = FloquetDrive::peierls_1d(1.0, 0.3, u, 0.04).map_err(fail)?;
        let s = resonance_expansion(&d, DEFAULT_POLE_MARGIN).map_err(fail)?;
        let det = determinant_relation(&d, &DeterminantOptions::default()).map_err(fail)?.sin2_pi_nu;
        series = series.max(((s - det) / det).abs());
    }
    let mut fermi: f64 = 0.0;
    for i in 0..=24 {
        let d = FloquetDrive::peierls_1d(1.0, 0.3, 0.3 + 0.1 * i as f64, 0.1).map_err(fail)?;
        for l in fermi_monodromy_eigenvalues(&d, DEFAULT_T_STEPS).map_err(fail)? {
            fermi = fermi.max(l.norm());
        }
    }
    check(
        det_mono <= 1e-6
            && scan.bands.len() == 1
            && (band.center - 1.0).abs() <= 0.01
            && (band.width / w - 1.0).abs() <= 0.2
            && series <= 0.01
            && fermi <= 1.0 + 1e-8,
        format!(
            "det vs monodromy {det_mono:.1e}; band centre {:.4} (predicted {c}), width {:.5} vs {w:.5}; series rel. {series:.1e}; fermionic |lambda| max {fermi:.10}",
            band.center, band.width
        ),
    )
}

fn tilt_cross_check() -> Outcome {
    let l = 8;
    let open = LatticeSpec::new(1, vec![l], 0.1, 1.0, Boundary::Open).map_err(fail)?;
    let m = EdModel::unit_filling(&open).map_err(fail)?;
    let g = ground_state(&m).map_err(fail)?;
    let spec = LatticeSpec::chain(l, 0.1, 1.0).map_err(fail)?;
    let grid = MomentumGrid::dense(1, 256);
    let topts = TiltOptions::adiabatic(&spec).map_err(fail)?;
    let window = l as f64 / analytic_velocity(0.1, 1.0);
    let mut rows = Vec::new();
    let mut ok = true;
    for tau in [1.0, 2.0, 4.0] {
        if tau >= window {
            continue;
        }
        for e0 in [0.1, 0.2] {
            let ed = tilt_evolution(&m, &g, e0, tau, &TiltEdOptions::for_u(1.0)).map_err(fail)?.p_exc;
            let z1 = pair_creation_rate(&spec, &PulseProfile::window(e0, tau), &grid, &topts)
                .map_err(fail)?
                .p_exc;
            ok &= ed > 0.0 && ed < z1 && z1 / ed <= 3.0;
            rows.push(format!("tau {tau} E0 {e0}: {ed:.3e}/{z1:.3e}"));
        }
    }
    check(ok, format!("ED/analytic P_exc: {}", rows.join("; ")))
}

/// Least-squares `c4` of `F/x² = c2 + c4 x²`, returned as `(c2, c4)`.
fn quartic_fit(xs: &[f64], fs: &[f64]) -> (f64, f64) {
    let ys: Vec<f64> = xs.iter().zip(fs).map(|(x, f)| f / (x * x)).collect();
    let n = xs.len() as f64;
    let (sx, sy) = (xs.iter().map(|x| x * x).sum::<f64>(), ys.iter().sum::<f64>());
    let sxx = xs.iter().map(|x| x.powi(4)).sum::<f64>();
    let sxy = xs.iter().zip(&ys).map(|(x, y)| x * x * y).sum::<f64>();
    let c4 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    ((sy - c4 * sx) / n, c4)
}

fn parity_series() -> Outcome {
    let grid = MomentumGrid::dense(1, 1024);
    let first_order = |j: f64| -> Result<f64, String> {
        let spec = LatticeSpec::chain(1024, j, 1.0).map_err(fail)?;
        parity_correlation(&ground_correlators(&spec, &grid).map_err(fail)?, &along_x(1)).map_err(fail)
    };
    // the exact nearest-neighbour parity correlation of a ten-site ring is
    // free of finite-size corrections through fourth order in J
    let exact = |j: f64| -> Result<f64, String> {
        let m = EdModel::unit_filling(&LatticeSpec::chain(10, j, 1.0).map_err(fail)?).map_err(fail)?;
        let g = ground_state(&m).map_err(fail)?;
        Ok(g.observables(&m).map_err(fail)?.parity_correlation(1))
    };
    let j = 1e-3;
    let p = first_order(j)?;
    let want = 16.0 * (j / 2.0_f64).powi(2);
    let rel = (p / want - 1.0).abs();
    // x = J/ZU over a range where sixth-order terms stay below the fit noise
    let xs: Vec<f64> = (1..=6).map(|i| 0.005 * i as f64).collect();
    let fs_exact = xs.iter().map(|x| exact(2.0 * x)).collect::<Result<Vec<_>, _>>()?;
    let fs_first = xs.iter().map(|x| first_order(2.0 * x)).collect::<Result<Vec<_>, _>>()?;
    let (c2, c4) = quartic_fit(&xs, &fs_exact);
    let (_, c4_first) = quartic_fit(&xs, &fs_first);
    let (_, c4_series) = parity_series_coefficients(1, 2.0);
    check(
        rel <= 0.01 && c4 < 0.0,
        format!(
            "F_parity(1) = {p:.6e} vs 16(J/ZU)^2 = {want:.6e} ({rel:.2e} rel.); exact-chain fit c2 = {c2:.3}, c4 = {c4:.1} \
             (printed series {c4_series:.1}; first-order correlator fit {c4_first:.1})"
        ),
    )
}

fn main() {
    let mut failures = 0;
    let mut report = |id: usize, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS {id:>2} {name} [{secs:.1} s]: {d}"),
            Err(d) => {
                failures += 1;
                println!("FAIL {id:>2} {name} [{secs:.1} s]: {d}");
            }
        }
    };
    let t = Instant::now();
    report(1, "critical coupling", t, critical_coupling());
    let t = Instant::now();
    report(2, "conservation suite", t, conservation());
    let t = Instant::now();
    report(3, "closed form vs ODE", t, closed_form_vs_ode());
    let t = Instant::now();
    report(4, "factor of two", t, factor_of_two());
    let t = Instant::now();
    report(5, "Sauter limit chain", t, sauter_chain());
    let t = Instant::now();
    report(6, "ED dimensions and sectors", t, ed_dimensions());
    let t = Instant::now();
    report(7, "effective velocity", t, effective_velocity());
    let t = Instant::now();
    report(8, "ED vs first-order P(k)", t, momentum_distribution_vs_first_order());
    let t = Instant::now();
    let l9 = LatticeSpec::chain(9, 0.1, 1.0)
        .and_then(|s| EdModel::unit_filling(&s))
        .and_then(|m| {
            let opts = SpectrumOptions {
                observables: true,
                mirror: true,
                ..SpectrumOptions::default()
            };
            full_spectrum(&m, &opts).map(|s| (m, s))
        });
    let outcome = match &l9 {
        Ok((m, s)) => prethermalisation(s, m),
        Err(e) => Err(fail(e)),
    };
    report(9, "prethermalisation signature", t, outcome);
    let t = Instant::now();
    report(10, "Floquet resonances", t, floquet_resonances());
    let t = Instant::now();
    report(11, "tilt cross-check", t, tilt_cross_check());
    let t = Instant::now();
    report(12, "parity series", t, parity_series());
    if failures == 0 {
        println!("all criteria passed");
        return;
    }
    println!("{failures} criteria failed");
    if std::env::var_os(STRICT_VAR).is_some() {
        std::process::exit(1);
    }

}
