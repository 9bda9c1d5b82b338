use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fht_core::WeightParam;

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "fht",
    version,
    about = "Spectral finite Hilbert transform and its cosh-weighted inversion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct IoArgs {
    /// Input CSV (`x,value` or `x,value,reference`) on the computation grid.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Output CSV on the computation grid.
    #[arg(long, short)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Resampled output on the evenly spaced display grid
    /// [default: <output>.uniform.csv].
    #[arg(long)]
    pub uniform: Option<PathBuf>,
    /// SVG plot of input, output and (with a reference column) the error.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// JSON report path [default: stdout].
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct WeightArgs {
    /// Real attenuation: kernel cosh(mu (s - t)) / (s - t).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eta")]
    pub mu: Option<f64>,
    /// Imaginary attenuation: kernel cos(eta (s - t)) / (s - t), |eta| < pi/4.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Flavor {
    /// f in L_d^2 on T-nodes, F on S-nodes.
    D,
    /// f in E_m^2 on S-nodes, F on U-nodes.
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Neumann,
    #[value(name = "mean_constrained", alias = "mean-constrained")]
    MeanConstrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// The function f.
    #[value(name = "f")]
    Function,
    /// Its transform F (or F_mu when a weight is given).
    #[value(name = "F")]
    Transform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    T,
    S,
    U,
    Uniform,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite Hilbert transform of grid samples.
    Forward {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value = "d")]
        flavor: Flavor,
    },
    /// Inverse finite Hilbert transform of grid samples.
    Invert {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value = "d")]
        flavor: Flavor,
    },
    /// Cosh- (or cos-) weighted transform of T-node samples.
    CoshForward {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Inversion of the weighted transform.
    CoshInvert {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        /// (1/2) int cosh(mu t) f(t) dt, required by mean_constrained.
        #[arg(long, allow_hyphen_values = true)]
        mean_fbar: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Runs the property suite at N = 64 and N = 256.
    Verify {
        #[command(flatten)]
        weight: WeightArgs,
        /// JSON summary path [default: stdout].
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Condition number of the weighted system against its bound.
    CondSweep {
        #[arg(
            long = "mu",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        mu_list: Vec<f64>,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Forward image norms of cos(mu w(t)) over grid sizes.
    NullExperiment {
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
        sizes: Vec<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Samples an analytic pair on a grid.
    Sample {
        /// `unit_circle` or `shifted`.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum, default_value = "f")]
        side: Side,
        #[arg(long, value_enum, default_value = "t")]
        grid: GridArg,
        /// Adds a `reference` column with the other side sampled on this grid.
        #[arg(long, value_enum)]
        reference_grid: Option<GridArg>,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[command(flatten)]
        weight: WeightArgs,
        /// Quadrature points for the weighted transform.
        #[arg(long, default_value_t = 8192)]
        oracle_points: usize,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Forward,
    Invert,
    CoshForward,
    CoshInvert,
}

/// Validated settings of the transform commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: usize,
    pub weight: Option<WeightParam>,
    pub flavor: Flavor,
    pub tol: f64,
    pub max_iter: usize,
    pub input_path: PathBuf,
    pub output_path: PathBuf,
    pub uniform_path: PathBuf,
    pub plot_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub method: Method,
    pub mean_fbar: Option<f64>,
}

pub const MIN_N: usize = 8;

pub fn weight_param(w: &WeightArgs) -> Result<Option<WeightParam>> {
    match (w.mu, w.eta) {
        (Some(mu), None) => Ok(Some(WeightParam::cosh(mu)?)),
        (None, Some(eta)) => Ok(Some(WeightParam::cos(eta)?)),
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(CliError::Parameter(
            "give only one of --mu and --eta".into(),
        )),
    }
}

pub fn require_weight(w: &WeightArgs) -> Result<WeightParam> {
    weight_param(w)?.ok_or_else(|| CliError::Parameter("one of --mu or --eta is required".into()))
}

pub fn check_n(n: usize) -> Result<()> {
    if n < MIN_N {
        return Err(CliError::Parameter(format!(
            "n = {n}: at least {MIN_N} required"
        )));
    }
    Ok(())
}

fn default_uniform(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    output.with_file_name(format!("{stem}.uniform.csv"))
}

impl RunConfig {
    fn base(command: CommandKind, io: &IoArgs) -> Result<Self> {
        check_n(io.n)?;
        Ok(Self {
            command,
            n: io.n,
            weight: None,
            flavor: Flavor::D,
            tol: 1e-10,
            max_iter: 10_000,
            input_path: io.input.clone(),
            output_path: io.output.clone(),
            uniform_path: io
                .uniform
                .clone()
                .unwrap_or_else(|| default_uniform(&io.output)),
            plot_path: io.plot.clone(),
            report_path: io.report.clone(),
            method: Method::Direct,
            mean_fbar: None,
        })
    }

    /// `None` for commands that do not read a sample file.
    pub fn from_command(cmd: &Command) -> Result<Option<Self>> {
        let cfg = match cmd {
            Command::Forward { io, flavor } => Self {
                flavor: *flavor,
                ..Self::base(CommandKind::Forward, io)?
            },
            Command::Invert { io, flavor } => Self {
                flavor: *flavor,
                ..Self::base(CommandKind::Invert, io)?
            },
            Command::CoshForward { io, weight } => Self {
                weight: Some(require_weight(weight)?),
                ..Self::base(CommandKind::CoshForward, io)?
            },
            Command::CoshInvert {
                io,
                weight,
                method,
                mean_fbar,
                tol,
                max_iter,
            } => {
                let needs_mean = *method == Method::MeanConstrained;
                if needs_mean != mean_fbar.is_some() {
                    return Err(CliError::Parameter(
                        "--mean-fbar is required with, and only with, --method mean_constrained"
                            .into(),
                    ));
                }
                if !(*tol > 0.0) {
                    return Err(CliError::Parameter(format!("--tol {tol} must be positive")));
                }
                Self {
                    weight: Some(require_weight(weight)?),
                    method: *method,
                    mean_fbar: *mean_fbar,
                    tol: *tol,
                    max_iter: *max_iter,
                    ..Self::base(CommandKind::CoshInvert, io)?
                }
            }
            _ => return Ok(None),
        };
        Ok(Some(cfg))
    }
}
