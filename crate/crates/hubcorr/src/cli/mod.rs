//! Command-line front end.
//!
//! Every subcommand builds a [`RunConfig`], runs it through
//! [`experiments::run`] and writes the resulting tables as CSV or JSON.
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 exhausted budget.

pub mod config;
pub mod experiments;
pub mod report;
pub mod reproduce;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{Experiment, Format, Model, RunConfig, Shape};
pub use experiments::run;
pub use report::ComparisonReport;
pub use table::{ResultSet, Table, Value};

use crate::error::{Error, Result};
use crate::lattice::Boundary;

/// Correlation-hierarchy simulator for Hubbard models.
#[derive(Debug, Parser)]
#[command(name = "hubcorr", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Runs a configuration file, with flags overriding its keys.
    Run(Overrides),
    /// Bosonic experiments.
    Bose {
        #[arg(value_enum, value_name = "EXPERIMENT")]
        which: BoseExperiment,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Fermionic experiments.
    Fermi {
        #[arg(value_enum, value_name = "EXPERIMENT")]
        which: FermiExperiment,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Exact diagonalization of small chains.
    Ed {
        #[arg(value_enum, value_name = "EXPERIMENT")]
        which: EdExperiment,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Writes the dataset of a named figure.
    Reproduce {
        /// Figure identifier; see `--list`.
        figure: Option<String>,
        /// Lists the known figures.
        #[arg(long)]
        list: bool,
        /// Chain length of exact-diagonalization panels.
        #[arg(long = "ed-sites", default_value_t = 8)]
        ed_sites: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoseExperiment {
    Ground,
    Quench,
    Equilibrate,
    Parity,
    Tilt,
    Floquet,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FermiExperiment {
    Ground,
    Quench,
    Equilibrate,
    Tilt,
    Staggered,
    Floquet,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EdExperiment {
    Spectrum,
    Ground,
    Thermal,
    Quench,
    Tilt,
    Band,
    Compare,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundaryArg {
    Periodic,
    Open,
}

/// Keys that may override a configuration file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub experiment: Option<Experiment>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    #[arg(long)]
    pub dimension: Option<usize>,
    /// Linear extent of the lattice.
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: Option<f64>,
    #[arg(long = "U", allow_hyphen_values = true)]
    pub u: Option<f64>,
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
    #[arg(long = "t-final", allow_hyphen_values = true)]
    pub t_final: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Points per axis of a dense momentum grid.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long = "E0", allow_hyphen_values = true)]
    pub e0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    /// Staggered field amplitude.
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Quasimomentum of a Floquet drive.
    #[arg(long = "k", allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Scan range `start:stop:count`.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Scanned parameter; only `U` is supported.
    #[arg(long)]
    pub scan: Option<String>,
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Overrides {
    /// Configuration from the file (if any) with every given flag applied.
    pub fn resolve(&self, experiment: Option<Experiment>, model: Option<Model>) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => {
                let e = experiment
                    .or(self.experiment)
                    .ok_or_else(|| Error::config("experiment", "no experiment given"))?;
                RunConfig::new(model.or(self.model).unwrap_or_default(), e)
            }
        };
        if let Some(e) = experiment.or(self.experiment) {
            cfg.experiment = e;
        }
        if let Some(m) = model.or(self.model) {
            cfg.model = m;
        }
        let lat = &mut cfg.lattice;
        if let Some(d) = self.dimension {
            lat.dimension = d;
        }
        if self.dimension.is_some() || self.l.is_some() {
            let l = self.l.unwrap_or_else(|| lat.extent.first().copied().unwrap_or(0));
            lat.extent = vec![l; lat.dimension];
        }
        set(&mut lat.j, self.j);
        set(&mut lat.u, self.u);
        if let Some(b) = self.boundary {
            lat.boundary = match b {
                BoundaryArg::Periodic => Boundary::Periodic,
                BoundaryArg::Open => Boundary::Open,
            };
        }
        let n = &mut cfg.numeric;
        set(&mut n.t_final, self.t_final);
        set(&mut n.dt, self.dt);
        set(&mut n.samples, self.samples);
        set(&mut n.grid, self.grid);
        set(&mut n.e0, self.e0);
        set(&mut n.tau, self.tau);
        set(&mut n.shape, self.shape);
        set(&mut n.a, self.a);
        set(&mut n.t, self.t);
        set(&mut n.k, self.k);
        set(&mut n.range, self.range.clone());
        set(&mut n.n_max, self.n_max);
        if let Some(s) = &self.scan {
            if s != "U" {
                return Err(Error::config("scan", format!("only `U` can be scanned, got `{s}`")));
            }
        }
        if self.output.is_some() {
            cfg.output.path = self.output.clone();
        }
        set(&mut cfg.output.format, self.format);
        Ok(cfg)
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl BoseExperiment {
    fn experiment(self) -> Experiment {
        match self {
            BoseExperiment::Ground => Experiment::Ground,
            BoseExperiment::Quench => Experiment::Quench,
            BoseExperiment::Equilibrate => Experiment::Equilibrate,
            BoseExperiment::Parity => Experiment::Parity,
            BoseExperiment::Tilt => Experiment::Tilt,
            BoseExperiment::Floquet => Experiment::Floquet,
        }
    }
}

impl FermiExperiment {
    fn experiment(self) -> Experiment {
        match self {
            FermiExperiment::Ground => Experiment::Ground,
            FermiExperiment::Quench => Experiment::Quench,
            FermiExperiment::Equilibrate => Experiment::Equilibrate,
            FermiExperiment::Tilt => Experiment::Tilt,
            FermiExperiment::Staggered => Experiment::Staggered,
            FermiExperiment::Floquet => Experiment::Floquet,
        }
    }
}

impl EdExperiment {
    fn experiment(self) -> Experiment {
        match self {
            EdExperiment::Spectrum => Experiment::EdSpectrum,
            EdExperiment::Ground => Experiment::EdGround,
            EdExperiment::Thermal => Experiment::EdThermal,
            EdExperiment::Quench => Experiment::EdQuench,
            EdExperiment::Tilt => Experiment::EdTilt,
            EdExperiment::Band => Experiment::EdBand,
            EdExperiment::Compare => Experiment::CompareEdZ1,
        }
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<()> {
    let cfg = match &cli.command {
        Command::Run(o) => o.resolve(None, None)?,
        Command::Bose { which, overrides } => overrides.resolve(Some(which.experiment()), Some(Model::Bose))?,
        Command::Fermi { which, overrides } => {
            overrides.resolve(Some(which.experiment()), Some(Model::Fermi))?
        }
        Command::Ed { which, overrides } => overrides.resolve(Some(which.experiment()), None)?,
        Command::Reproduce {
            figure,
            list,
            ed_sites,
            output,
            format,
        } => {
            if *list {
                let mut out = std::io::stdout().lock();
                for (id, about) in reproduce::FIGURES {
                    writeln!(out, "{id}\t{about}")?;
                }
                return Ok(());
            }
            let id = figure
                .as_deref()
                .ok_or_else(|| Error::config("figure", "no figure id given"))?;
            let opts = reproduce::ReproduceOptions { ed_sites: *ed_sites };
            let result = reproduce::reproduce(id, &opts)?;
            report_files(&result.write(output.as_deref(), *format)?);
            return Ok(());
        }
    };
    let result = run(&cfg)?;
    report_files(&result.write(cfg.output.path.as_deref(), cfg.output.format)?);
    Ok(())
}

fn report_files(files: &[PathBuf]) {
    for f in files {
        eprintln!("wrote {}", f.display());
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
