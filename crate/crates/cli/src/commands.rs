use std::path::Path;
use std::time::Instant;

use fht_core::cheb::{self, display_grid, weight};
use fht_core::cosh::{self, CoshOperator, SolveStatus};
use fht_core::oracle::{self, PvOracle};
use fht_core::{Grid, GridFn, GridKind, ResampleMode, Role, Spectral, WeightParam};

use crate::config::{self, Cli, Command, CommandKind, Flavor, GridArg, Method, RunConfig, Side};
use crate::csvio::{self, Samples};
use crate::error::{CliError, Result, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_SUITE_FAILED};
use crate::report::Report;
use crate::suite;
use crate::svg::{self, Series};

/// How grid samples extend to arbitrary points for the display grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interp {
    /// `sum a_n T_n` from S-node samples.
    TSeries,
    /// `w sum a_n U_{n-1}` from T-node samples.
    WUSeries,
    /// `sum d_n U_n` from U-node samples.
    USeries,
    /// `(sum a_n T_n) / w` from S-node samples.
    TOverW,
}

/// Evaluates the interpolant of `f` at `targets`.
pub fn interpolate(f: &GridFn, interp: Interp, targets: &[f64]) -> Result<Vec<f64>> {
    let sp = Spectral::shared(f.grid().n())?;
    let out = match interp {
        Interp::TSeries => cheb::resample(&sp.analyze_s(f)?, targets, ResampleMode::TSeries)?,
        Interp::WUSeries => cheb::resample(&sp.analyze_t(f)?, targets, ResampleMode::WUSeries)?,
        Interp::USeries => cheb::resample(&sp.analyze_u(f)?, targets, ResampleMode::USeries)?,
        Interp::TOverW => {
            let fw = f.map_with_nodes(Role::Plain, |x, v| v * weight(x).unwrap_or(0.0));
            let p = cheb::resample(&sp.analyze_s(&fw)?, targets, ResampleMode::TSeries)?;
            p.iter()
                .zip(targets)
                .map(|(v, &x)| Ok(v / weight(x)?))
                .collect::<fht_core::Result<Vec<f64>>>()?
        }
    };
    Ok(out)
}

pub fn grid_of(arg: GridArg, n: usize) -> Result<Vec<f64>> {
    let kind = match arg {
        GridArg::T => GridKind::TNodes,
        GridArg::S => GridKind::SNodes,
        GridArg::U => GridKind::UNodes,
        GridArg::Uniform => return Ok(display_grid(n)),
    };
    Ok(Grid::new(kind, n)?.nodes().to_vec())
}

/// Reads a sample file and checks it against the nodes of `grid`.
pub fn read_on_grid(path: &Path, grid: &Grid, role: Role) -> Result<(GridFn, Option<Vec<f64>>)> {
    let s = csvio::read_samples(path)?;
    if s.len() != grid.n() {
        return Err(CliError::Input(format!(
            "{}: {} rows, expected {} for {:?} with n = {}",
            path.display(),
            s.len(),
            grid.n(),
            grid.kind(),
            grid.n()
        )));
    }
    for (i, (x, node)) in s.x.iter().zip(grid.nodes()).enumerate() {
        if (x - node).abs() > 1e-12 {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: i as u64 + 2,
                msg: format!(
                    "x = {x} is not node {i} ({node}) of the {:?} grid",
                    grid.kind()
                ),
            });
        }
    }
    let f = GridFn::new(grid.clone(), s.value, role)?;
    Ok((f, s.reference))
}

fn write_report(report: &Report, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => csvio::write_text(p, &(report.to_json() + "\n")),
        None => {
            println!("{}", report.to_json());
            Ok(())
        }
    }
}

fn transform(cfg: &RunConfig) -> Result<i32> {
    let start = Instant::now();
    let n = cfg.n;
    let sp = Spectral::shared(n)?;
    let (in_grid, in_role) = match (cfg.command, cfg.flavor, cfg.method) {
        (CommandKind::Forward, Flavor::D, _) | (CommandKind::CoshForward, _, _) => {
            (sp.t_grid(), Role::Plain)
        }
        (CommandKind::Forward, Flavor::M, _) => (sp.s_grid(), Role::Plain),
        (CommandKind::Invert, Flavor::D, _) => (sp.s_grid(), Role::Transform),
        (CommandKind::Invert, Flavor::M, _)
        | (CommandKind::CoshInvert, _, Method::MeanConstrained) => (sp.u_grid(), Role::Transform),
        (CommandKind::CoshInvert, _, _) => (sp.s_grid(), Role::Transform),
    };
    let (input, reference) = read_on_grid(&cfg.input_path, in_grid, in_role)?;

    let name = match cfg.command {
        CommandKind::Forward => "forward",
        CommandKind::Invert => "invert",
        CommandKind::CoshForward => "cosh-forward",
        CommandKind::CoshInvert => "cosh-invert",
    };
    let mut report = Report::new(name, n);
    report.mu_or_eta = cfg.weight.map(|p| p.value());
    let mut code = EXIT_OK;

    let (output, interp) = match cfg.command {
        CommandKind::Forward => match cfg.flavor {
            Flavor::D => (sp.forward_d(&input)?, Interp::TSeries),
            Flavor::M => (sp.forward_m(&input)?, Interp::USeries),
        },
        CommandKind::Invert => match cfg.flavor {
            Flavor::D => (sp.inverse_d(&input)?, Interp::WUSeries),
            Flavor::M => (sp.inverse_m(&input)?, Interp::TOverW),
        },
        CommandKind::CoshForward => {
            let op = CoshOperator::new(n, weight_of(cfg)?)?;
            (op.forward(&input)?, Interp::TSeries)
        }
        CommandKind::CoshInvert => {
            let op = CoshOperator::new(n, weight_of(cfg)?)?;
            let (f, rep, interp) = match cfg.method {
                Method::Direct => {
                    let (f, r) = op.invert_direct(&input)?;
                    (f, r, Interp::WUSeries)
                }
                Method::Neumann => {
                    let (f, r) = op.invert_neumann(&input, cfg.tol, cfg.max_iter)?;
                    (f, r, Interp::WUSeries)
                }
                Method::MeanConstrained => {
                    let fbar = cfg.mean_fbar.expect("validated by RunConfig");
                    let (f, r) = op.invert_mean_constrained(&input, fbar, cfg.tol, cfg.max_iter)?;
                    (f, r, Interp::TOverW)
                }
            };
            if rep.status == SolveStatus::NotConverged {
                eprintln!(
                    "warning: no convergence after {} iterations (last difference {:.3e})",
                    rep.iterations,
                    rep.residual_history.last().copied().unwrap_or(f64::NAN)
                );
                code = EXIT_NOT_CONVERGED;
            }
            report = report.with_solve(&rep);
            (f, interp)
        }
    };

    let out_x = output.grid().nodes().to_vec();
    let mut samples = Samples::new(out_x.clone(), output.values().to_vec());
    let mut error = None;
    if let Some(r) = reference {
        let e: Vec<f64> = output.values().iter().zip(&r).map(|(a, b)| a - b).collect();
        report.max_error = Some(e.iter().fold(0.0, |m, v| f64::max(m, v.abs())));
        error = Some(e);
        samples = samples.with_reference(r);
    }
    csvio::write_samples(&cfg.output_path, &samples)?;

    let xs = display_grid(n);
    let uniform = interpolate(&output, interp, &xs)?;
    csvio::write_samples(&cfg.uniform_path, &Samples::new(xs, uniform))?;

    if let Some(plot) = &cfg.plot_path {
        let mut series = vec![
            Series::new("input", input.grid().nodes(), input.values()),
            Series::new("output", &out_x, output.values()),
        ];
        if let Some(e) = &error {
            series.push(Series::new("output - reference", &out_x, e));
        }
        csvio::write_text(plot, &svg::render(name, &series))?;
    }

    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    write_report(&report, cfg.report_path.as_deref())?;
    Ok(code)
}

fn weight_of(cfg: &RunConfig) -> Result<WeightParam> {
    cfg.weight
        .ok_or_else(|| CliError::Parameter("one of --mu or --eta is required".into()))
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => csvio::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cond_sweep(mu_list: &[f64], n: usize, output: Option<&Path>) -> Result<i32> {
    config::check_n(n)?;
    let mut text = String::from("mu,measured,bound\n");
    let mut ok = true;
    for &mu in mu_list {
        let est = cosh::condition_estimate(&WeightParam::cosh(mu)?, n)?;
        ok &= est.measured <= est.bound * (1.0 + 1e-12);
        text.push_str(&format!(
            "{mu:.16e},{:.16e},{:.16e}\n",
            est.measured, est.bound
        ));
    }
    emit(&text, output)?;
    Ok(if ok { EXIT_OK } else { EXIT_SUITE_FAILED })
}

fn null_experiment(mu: f64, sizes: &[usize], output: Option<&Path>) -> Result<i32> {
    for &n in sizes {
        config::check_n(n)?;
    }
    let rows = cosh::null_experiment(&WeightParam::cosh(mu)?, sizes)?;
    let mut text = String::from("n,norm_ld,norm_lm\n");
    for r in rows {
        text.push_str(&format!("{},{:.16e},{:.16e}\n", r.n, r.norm_ld, r.norm_lm));
    }
    emit(&text, output)?;
    Ok(EXIT_OK)
}

fn sample_side(
    pair: &oracle::AnalyticPair,
    side: Side,
    p: Option<WeightParam>,
    points: usize,
    xs: &[f64],
) -> Result<Vec<f64>> {
    match (side, p) {
        (Side::Function, _) => Ok(xs.iter().map(|&x| (pair.f)(x)).collect()),
        (Side::Transform, Some(p)) if !p.is_zero() => {
            let o = PvOracle::new(points).with_kinks(pair.kinks);
            xs.iter()
                .map(|&x| Ok(o.weighted_fht(&pair.f, x, &p)?.value))
                .collect()
        }
        (Side::Transform, _) => Ok(xs.iter().map(|&x| (pair.big_f)(x)).collect()),
    }
}

#[allow(clippy::too_many_arguments)]
fn sample(
    pair: &str,
    side: Side,
    grid: GridArg,
    reference_grid: Option<GridArg>,
    n: usize,
    p: Option<WeightParam>,
    points: usize,
    output: &Path,
) -> Result<i32> {
    config::check_n(n)?;
    let pair = oracle::pair(pair)?;
    let xs = grid_of(grid, n)?;
    let values = sample_side(&pair, side, p, points, &xs)?;
    let mut s = Samples::new(xs, values);
    if let Some(rg) = reference_grid {
        let other = match side {
            Side::Function => Side::Transform,
            Side::Transform => Side::Function,
        };
        s = s.with_reference(sample_side(&pair, other, p, points, &grid_of(rg, n)?)?);
    }
    csvio::write_samples(output, &s)?;
    Ok(EXIT_OK)
}

/// Runs one parsed command line and returns the process exit status.
pub fn run(cli: &Cli) -> Result<i32> {
    if let Some(cfg) = RunConfig::from_command(&cli.command)? {
        return transform(&cfg);
    }
    match &cli.command {
        Command::Verify { weight, report } => {
            let p = config::weight_param(weight)?;
            let summary = suite::verify(p);
            emit(&(summary.to_json() + "\n"), report.as_deref())?;
            Ok(if summary.passed {
                EXIT_OK
            } else {
                EXIT_SUITE_FAILED
            })
        }
        Command::CondSweep { mu_list, n, output } => cond_sweep(mu_list, *n, output.as_deref()),
        Command::NullExperiment { mu, sizes, output } => {
            null_experiment(*mu, sizes, output.as_deref())
        }
        Command::Sample {
            pair,
            side,
            grid,
            reference_grid,
            n,
            weight,
            oracle_points,
            output,
        } => sample(
            pair,
            *side,
            *grid,
            *reference_grid,
            *n,
            config::weight_param(weight)?,
            *oracle_points,
            output,
        ),
        _ => unreachable!("transform commands handled above"),
    }
}
