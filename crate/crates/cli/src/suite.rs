//! Property suite behind `fht verify`.

use std::time::Instant;

use serde::Serialize;

use fht_core::cheb::{self, weight};
use fht_core::cosh::{self, CoshOperator, KernelKind};
use fht_core::fht::{self, SpaceTag, Spectral};
use fht_core::oracle::{PvOracle, QuadRule};
use fht_core::{Grid, GridFn, GridKind, Role, Space, WeightParam};
use nalgebra::DMatrix;

pub const SIZES: [usize; 2] = [64, 256];

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

impl Summary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary is plain data")
    }
}

fn check(name: &str, n: usize, value: f64, limit: f64) -> Check {
    Check {
        name: name.to_string(),
        n,
        passed: value <= limit,
        detail: format!("{value:.3e} <= {limit:.1e}"),
    }
}

fn failed(name: &str, n: usize, err: impl std::fmt::Display) -> Check {
    Check {
        name: name.to_string(),
        n,
        passed: false,
        detail: err.to_string(),
    }
}

fn run_check(name: &str, n: usize, f: impl FnOnce() -> fht_core::Result<Check>) -> Check {
    f().unwrap_or_else(|e| failed(name, n, e))
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, b| f64::max(a, b.abs()))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
}

fn w(x: f64) -> f64 {
    weight(x).unwrap_or(0.0)
}

/// T-node samples of `sum c_k w U_k` for `k <= N - 2`.
fn wu_span(grid: &Grid, c: impl Fn(usize) -> f64) -> GridFn {
    let n = grid.n();
    let values = (0..n)
        .map(|m| {
            let th = grid.angle(m);
            (0..n - 1).map(|k| c(k) * ((k + 1) as f64 * th).sin()).sum()
        })
        .collect();
    GridFn::new(grid.clone(), values, Role::Plain).expect("length matches")
}

fn diff_norm(a: &GridFn, b: &GridFn, space: Space) -> fht_core::Result<f64> {
    let v = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x - y)
        .collect();
    cheb::norm(&GridFn::new(a.grid().clone(), v, Role::Plain)?, space)
}

fn transform_checks(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run_check("c3_orthogonality", n, || {
        let sp = Spectral::shared(n)?;
        let c = sp.c3().entries();
        Ok(check(
            "c3_orthogonality",
            n,
            max_abs(&(c.tr_mul(c) - DMatrix::identity(n, n))),
            1e-12,
        ))
    }));
    out.push(run_check("s1_orthogonality", n, || {
        let sp = Spectral::shared(n)?;
        let s = sp.s1().entries();
        let mut target = DMatrix::identity(n, n);
        target[(0, 0)] = 0.0;
        Ok(check(
            "s1_orthogonality",
            n,
            max_abs(&(s.tr_mul(s) - target)),
            1e-12,
        ))
    }));
    out
}

fn spectral_checks(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run_check("d_round_trip", n, || {
        let sp = Spectral::shared(n)?;
        let f = GridFn::sample(sp.t_grid(), Role::Plain, |t| (7.0 * t * t).sin() + t);
        let back = sp.inverse_d(&sp.forward_d(&f)?)?;
        Ok(check(
            "d_round_trip",
            n,
            max_diff(&back.values()[1..], &f.values()[1..]),
            1e-12,
        ))
    }));
    out.push(run_check("d_isometry", n, || {
        let sp = Spectral::shared(n)?;
        let f = wu_span(sp.t_grid(), |k| 1.0 / (k + 1) as f64);
        let big = sp.forward_d(&f)?;
        let d = (cheb::norm(&big, Space::Ld2)? - cheb::norm(&f, Space::Ld2)?).abs();
        Ok(check("d_isometry", n, d, 1e-10))
    }));
    out.push(run_check("range_defect_of_forward", n, || {
        let sp = Spectral::shared(n)?;
        let f = GridFn::sample(sp.t_grid(), Role::Plain, |t| t.exp() * w(t));
        Ok(check(
            "range_defect_of_forward",
            n,
            sp.range_defect(&sp.forward_d(&f)?)?.abs(),
            1e-12,
        ))
    }));
    out.push(run_check("m_isometry", n, || {
        let sp = Spectral::shared(n)?;
        let g = sp.s_grid();
        let values = (0..n)
            .map(|m| {
                let th = g.angle(m);
                (0..n - 1)
                    .map(|k| ((k + 1) as f64 * th).cos() / (k + 1) as f64)
                    .sum::<f64>()
                    / th.sin()
            })
            .collect();
        let f = GridFn::new(g.clone(), values, Role::Plain)?;
        let big = sp.forward_m(&f)?;
        let d = (cheb::norm(&big, Space::Lm2)? - cheb::norm(&f, Space::Lm2)?).abs();
        Ok(check("m_isometry", n, d, 1e-10))
    }));
    out.push(run_check("m_inverse_zero_mean", n, || {
        let sp = Spectral::shared(n)?;
        let big = GridFn::sample(sp.u_grid(), Role::Transform, |u| (2.0 * u).cos());
        Ok(check(
            "m_inverse_zero_mean",
            n,
            fht::mean_m(&sp.inverse_m(&big)?)?.abs(),
            1e-10,
        ))
    }));
    out.push(run_check("lemma2_inequality", n, || {
        let sp = Spectral::shared(n)?;
        let f = GridFn::sample(sp.s_grid(), Role::Plain, |t| (5.0 * t).cos() + 0.3);
        let lhs = cheb::norm(&sp.forward_m(&f)?, Space::Lm2)?.powi(2);
        let rhs = cheb::norm(&f, Space::Lm2)?.powi(2);
        Ok(check("lemma2_inequality", n, lhs - rhs, 1e-10))
    }));
    out.push(run_check("unit_circle_pair", n, || {
        let sp = Spectral::shared(n)?;
        let big = sp.forward_d(&GridFn::sample(sp.t_grid(), Role::Plain, w))?;
        Ok(check(
            "unit_circle_pair",
            n,
            max_diff(big.values(), sp.s_grid().nodes()),
            1e-12,
        ))
    }));
    out.push(run_check("plancherel_d", n, || {
        let sp = Spectral::shared(n)?;
        let mut worst = 0.0_f64;
        for k in 0..=30.min(n - 2) {
            let f = GridFn::sample(sp.t_grid(), Role::Plain, |t| {
                w(t) * cheb::cheb_eval(fht_core::Basis::SecondKindU, k, t).unwrap_or(0.0)
            });
            worst = worst.max(sp.plancherel_check(&f, SpaceTag::DFlavor)?.defect);
        }
        Ok(check("plancherel_d", n, worst, 1e-10))
    }));
    out.push(run_check("plancherel_m", n, || {
        let sp = Spectral::shared(n)?;
        let mut worst = 0.0_f64;
        for f in [
            w as fn(f64) -> f64,
            |t| w(t) * 4.0 * t * t,
            |t| 2.0 * t * w(t),
        ] {
            let g = GridFn::sample(sp.s_grid(), Role::Plain, f);
            worst = worst.max(sp.plancherel_check(&g, SpaceTag::MFlavor)?.defect);
        }
        Ok(check("plancherel_m", n, worst, 1e-10))
    }));
    out
}

fn cosh_checks(n: usize, extra: Option<WeightParam>) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run_check("degeneration_mu0", n, || {
        let op = CoshOperator::new(n, WeightParam::cosh(0.0)?)?;
        let sp = op.spectral();
        let f = GridFn::sample(sp.t_grid(), Role::Plain, |t| (3.0 * t).cos() * w(t));
        let a = op.forward(&f)?;
        let d1 = max_diff(a.values(), sp.forward_d(&f)?.values());
        let d2 = max_diff(op.invert_direct(&a)?.0.values(), sp.inverse_d(&a)?.values());
        Ok(check("degeneration_mu0", n, d1.max(d2), 1e-14))
    }));
    for mu in [0.5, 1.0, 2.0] {
        let name = format!("coercive_mu{mu}");
        out.push(run_check(&name, n, || {
            let p = WeightParam::cosh(mu)?;
            let op = CoshOperator::new(n, p)?;
            let mut min_ratio = f64::INFINITY;
            for k in 0..n - 1 {
                let f = GridFn::sample(op.spectral().t_grid(), Role::Plain, |t| {
                    w(t) * cheb::cheb_eval(fht_core::Basis::SecondKindU, k, t).unwrap_or(0.0)
                });
                let r = cheb::norm(&op.forward(&f)?, Space::Ld2)? / cheb::norm(&f, Space::Ld2)?;
                min_ratio = min_ratio.min(r);
            }
            let bound = p.coercive_const() - 1e-8;
            Ok(Check {
                name: name.clone(),
                n,
                passed: min_ratio >= bound,
                detail: format!("min ratio {min_ratio:.6} >= {bound:.6}"),
            })
        }));
    }
    let mut params = vec![
        WeightParam::cosh(0.5),
        WeightParam::cosh(1.0),
        WeightParam::cos(0.3),
        WeightParam::cos(0.5),
    ];
    if let Some(p) = extra {
        params.push(Ok(p));
    }
    for p in params {
        let p = match p {
            Ok(p) => p,
            Err(e) => {
                out.push(failed("contraction", n, e));
                continue;
            }
        };
        let tag = match p {
            WeightParam::CoshReal { mu } => format!("mu{mu}"),
            WeightParam::CosImaginary { eta } => format!("eta{eta}"),
        };
        out.push(run_check(&format!("contraction_{tag}"), n, || {
            let op = CoshOperator::new(n, p)?;
            let f = GridFn::sample(op.spectral().t_grid(), Role::Plain, |t| {
                w(t) * (1.0 + t + t * t)
            });
            let big = op.forward(&f)?;
            let (it, rep) = op.invert_neumann(&big, 1e-12, 100_000)?;
            let (direct, _) = op.invert_direct(&big)?;
            let agree = diff_norm(&it, &direct, Space::Ld2)?;
            let passed =
                rep.converged() && rep.measured_ratio <= rep.bound_ratio + 0.02 && agree < 1e-8;
            Ok(Check {
                name: format!("contraction_{tag}"),
                n,
                passed,
                detail: format!(
                    "ratio {:.4} (bound {:.4}), {} iterations, |direct - neumann| {agree:.2e}",
                    rep.measured_ratio, rep.bound_ratio, rep.iterations
                ),
            })
        }));
        if extra == Some(p) {
            out.push(run_check(&format!("condition_{tag}"), n, || {
                let est = cosh::condition_estimate(&p, n)?;
                Ok(Check {
                    name: format!("condition_{tag}"),
                    n,
                    passed: est.measured <= est.bound * (1.0 + 1e-6),
                    detail: format!("measured {:.4} <= bound {:.4}", est.measured, est.bound),
                })
            }));
            if matches!(p, WeightParam::CoshReal { mu } if mu.abs() == 4.0) {
                out.push(check(
                    "condition_bound_1490.5",
                    n,
                    (p.condition_bound() - 1490.5).abs(),
                    0.05,
                ));
            }
        }
    }
    out.push(run_check("condition_mu3", n, || {
        let est = cosh::condition_estimate(&WeightParam::cosh(3.0)?, n)?;
        Ok(Check {
            name: "condition_mu3".into(),
            n,
            passed: est.measured <= est.bound && (est.bound - 201.7).abs() < 0.05,
            detail: format!("measured {:.4} <= bound {:.4}", est.measured, est.bound),
        })
    }));
    out.push(run_check("kernel_even_symmetry", n, || {
        let p = WeightParam::cosh(1.0)?;
        let mut worst = 0.0_f64;
        for kind in [KernelKind::Kd, KernelKind::Km] {
            let k = cosh::kernel(kind, &p, &Grid::new(GridKind::SNodes, n)?)?;
            worst = worst.max((k.eval(0.5)? - k.eval(-0.5)?).abs());
        }
        Ok(check("kernel_even_symmetry", n, worst, 1e-10))
    }));
    out.push(run_check("kernel_kd_oracle", n, || {
        let p = WeightParam::cosh(1.0)?;
        let k = cosh::kernel(KernelKind::Kd, &p, &Grid::new(GridKind::SNodes, n)?)?;
        let o = PvOracle::new(8192)
            .fht_over_weight(&|s| s.tanh(), 0.3)?
            .value;
        Ok(check("kernel_kd_oracle", n, (k.eval(0.3)? + o).abs(), 1e-6))
    }));
    out.push(run_check("mean_constrained_round_trip", n, || {
        let p = WeightParam::cosh(0.5)?;
        let rel = mean_constrained_error(n, p)?;
        Ok(check("mean_constrained_round_trip", n, rel, 1e-6))
    }));
    out
}

/// Relative `L_m^2` error of the mean-constrained inversion of oracle data
/// for `f = 2t w(t)`.
pub fn mean_constrained_error(n: usize, p: WeightParam) -> fht_core::Result<f64> {
    let op = CoshOperator::new(n, p)?;
    let sp = op.spectral();
    let f = |t: f64| 2.0 * t * w(t);
    let o = PvOracle::new(8192).with_rule(QuadRule::CosineMidpoint);
    let big = sp
        .u_grid()
        .nodes()
        .iter()
        .map(|&s| o.weighted_fht(&f, s, &p).map(|v| v.value))
        .collect::<fht_core::Result<Vec<f64>>>()?;
    let big = GridFn::new(sp.u_grid().clone(), big, Role::Transform)?;
    let fbar = 0.5 * o.integrate(|t| p.scale(t) * f(t));
    let (got, rep) = op.invert_mean_constrained(&big, fbar, 1e-14, 500)?;
    if !rep.converged() || rep.measured_ratio > rep.bound_ratio + 0.02 {
        return Ok(f64::INFINITY);
    }
    let want = GridFn::sample(sp.s_grid(), Role::Plain, f);
    Ok(diff_norm(&got, &want, Space::Lm2)? / cheb::norm(&want, Space::Lm2)?)
}

/// Runs every check at `N = 64` and `N = 256`; `extra` adds round-trip and
/// condition checks for a user-chosen weight.
pub fn verify(extra: Option<WeightParam>) -> Summary {
    let start = Instant::now();
    let mut checks = Vec::new();
    for n in SIZES {
        checks.extend(transform_checks(n));
        checks.extend(spectral_checks(n));
        checks.extend(cosh_checks(n, extra));
    }
    Summary {
        passed: checks.iter().all(|c| c.passed),
        checks,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}
