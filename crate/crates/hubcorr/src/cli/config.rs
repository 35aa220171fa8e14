//! Run configuration.
//!
//! A configuration is read from a TOML file and may be overridden key by
//! key from the command line:
//!
//! ```toml
//! model = "bose"
//! experiment = "quench"
//!
//! [lattice]
//! dimension = 1
//! extent = [64]
//! J = 0.1
//! U = 1.0
//! boundary = "periodic"
//!
//! [numeric]
//! t_final = 10.0
//! dt = 0.001
//!
//! [output]
//! path = "quench.csv"
//! format = "csv"
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeSpec};

/// Which correlation hierarchy an experiment uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[default]
    Bose,
    Fermi,
}

/// The experiments the front end can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Ground-state correlators.
    Ground,
    /// Sudden quench from the uncorrelated state.
    Quench,
    /// Long-time averages after the quench.
    Equilibrate,
    /// Number and parity correlations and a hopping scan.
    Parity,
    /// Pair creation by a tilt pulse.
    Tilt,
    /// Resonance scan under periodic driving.
    Floquet,
    /// Mode frequencies in a staggered field (fermions).
    Staggered,
    /// Exact spectrum of a chain by momentum sector.
    EdSpectrum,
    /// Exact ground state of a chain.
    EdGround,
    /// Canonical averages from the exact spectrum.
    EdThermal,
    /// Exact quench from the unit-filling state.
    EdQuench,
    /// Exact excitation probability under a tilt pulse.
    EdTilt,
    /// Exact lowest-branch velocity fit.
    EdBand,
    /// Exact versus first-order momentum distribution.
    CompareEdZ1,
}

impl Experiment {
    /// Name as written in configuration files.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Ground => "ground",
            Experiment::Quench => "quench",
            Experiment::Equilibrate => "equilibrate",
            Experiment::Parity => "parity",
            Experiment::Tilt => "tilt",
            Experiment::Floquet => "floquet",
            Experiment::Staggered => "staggered",
            Experiment::EdSpectrum => "ed-spectrum",
            Experiment::EdGround => "ed-ground",
            Experiment::EdThermal => "ed-thermal",
            Experiment::EdQuench => "ed-quench",
            Experiment::EdTilt => "ed-tilt",
            Experiment::EdBand => "ed-band",
            Experiment::CompareEdZ1 => "compare-ed-z1",
        }
    }
}

/// Temporal shape of a tilt pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    #[default]
    Window,
    Sauter,
    Constant,
}

/// Table encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Lattice section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    #[serde(default = "default_extent")]
    pub extent: Vec<usize>,
    #[serde(rename = "J", default = "default_j")]
    pub j: f64,
    #[serde(rename = "U", default = "default_u")]
    pub u: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

fn default_dimension() -> usize {
    1
}

fn default_extent() -> Vec<usize> {
    vec![64]
}

fn default_j() -> f64 {
    0.1
}

fn default_u() -> f64 {
    1.0
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig {
            dimension: default_dimension(),
            extent: default_extent(),
            j: default_j(),
            u: default_u(),
            boundary: Boundary::Periodic,
        }
    }
}

/// Numerical parameters. Keys that an experiment does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericConfig {
    /// End of time evolutions, in units of `1/U`.
    pub t_final: f64,
    /// Integration step.
    pub dt: f64,
    /// Number of output times of a time series.
    pub samples: usize,
    /// Points per axis of a dense momentum grid; `0` uses the lattice grid.
    pub grid: usize,
    /// Peak field.
    #[serde(rename = "E0")]
    pub e0: f64,
    /// Pulse width.
    pub tau: f64,
    pub shape: Shape,
    /// Staggered field amplitude.
    pub a: f64,
    /// Temperature of canonical averages.
    #[serde(rename = "T")]
    pub t: f64,
    /// Quasimomentum of a Floquet drive.
    pub k: f64,
    /// Scan range `start:stop:count`.
    pub range: String,
    /// Truncation of the Floquet determinant.
    pub n_max: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            t_final: 10.0,
            dt: 1e-3,
            samples: 101,
            grid: 0,
            e0: 0.1,
            tau: 1.0,
            shape: Shape::Window,
            a: 0.0,
            t: 0.1,
            k: 0.3,
            range: "0.5:1.5:21".into(),
            n_max: 8,
        }
    }
}

/// Output section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Destination; standard output when absent.
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: Model,
    pub experiment: Experiment,
    #[serde(default)]
    pub lattice: LatticeConfig,
    #[serde(default)]
    pub numeric: NumericConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    /// Default parameters for `experiment`.
    pub fn new(model: Model, experiment: Experiment) -> Self {
        RunConfig {
            model,
            experiment,
            lattice: LatticeConfig::default(),
            numeric: NumericConfig::default(),
            output: OutputConfig::default(),
        }
    }

    /// Parses TOML text. Errors carry the offending line and key.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::config("config", e.to_string().trim_end()))?;
        Ok(cfg)
    }

    /// Reads a TOML file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Serialises back to TOML.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }

    /// Lattice specification of the run.
    pub fn spec(&self) -> Result<LatticeSpec> {
        let l = &self.lattice;
        LatticeSpec::new(l.dimension, l.extent.clone(), l.j, l.u, l.boundary)
    }

    /// Checks every invariant that does not depend on the experiment.
    pub fn validate(&self) -> Result<()> {
        self.spec()?;
        let n = &self.numeric;
        let non_negative = [
            ("t_final", n.t_final),
            ("E0", n.e0),
            ("tau", n.tau),
            ("a", n.a),
            ("T", n.t),
        ];
        for (key, v) in non_negative {
            if !(v >= 0.0) {
                return Err(Error::config(key, format!("must be >= 0, got {v}")));
            }
        }
        if !(n.dt > 0.0) {
            return Err(Error::config("dt", format!("must be > 0, got {}", n.dt)));
        }
        if n.t_final > 0.0 && !(n.dt < n.t_final) {
            return Err(Error::config("dt", format!("must be smaller than t_final = {}", n.t_final)));
        }
        if n.samples < 2 {
            return Err(Error::config("samples", "need at least two output times"));
        }
        if !n.k.is_finite() {
            return Err(Error::config("k", "must be finite"));
        }
        parse_range(&n.range)?;
        Ok(())
    }
}

/// Parses `start:stop:count` into `count` evenly spaced values.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::config("range", format!("expected start:stop:count, got `{text}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) || n == 0 || (n > 1 && !(b > a)) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}
