//! The cosh-weighted transform
//!
//! ```text
//! F_mu(s) = (1/pi) PV int cosh(mu (s - t)) f(t) / (s - t) dt
//! ```
//!
//! and its cos-weighted sibling (`mu = i eta`), with direct and iterative
//! inversion.
//!
//! Splitting `cosh(mu(s-t)) = cosh(mu s) cosh(mu t) - sinh(mu s) sinh(mu t)`
//! and writing `f_hat = cosh(mu t) f`, `F_tilde = F_mu / cosh(mu s)` gives
//!
//! ```text
//! F_tilde = H f_hat - tanh(mu s) H[tanh(mu t) f_hat]
//! ```
//!
//! which on the collocation grids reads `F_tilde = [C3 S1^T - D_s C3 S1^T D_t] f_hat`
//! and inverts to `[I - S1 C3^T D_s C3 S1^T D_t] f_hat = S1 C3^T F_tilde`.
//! The coupling matrix `M = S1 C3^T D_s C3 S1^T D_t` has norm at most
//! `tanh^2(|mu|) < 1`, so the system is well posed and the Neumann series
//! converges at that rate. For the cos kernel `tanh -> tan` and the sign in
//! front of the coupling flips.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::cheb::{self, Basis, ChebCoeffs, Grid, GridFn, GridKind, ResampleMode, Role, Space};
use crate::error::{FhtError, Result};
use crate::fht::Spectral;
use crate::oracle::PvOracle;
use crate::param::WeightParam;

/// Diagonal weights on the division-flavor grids.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagWeights {
    /// `tanh(mu s_m)` on S-nodes.
    pub d_s: Vec<f64>,
    /// `tanh(mu t_m)` on T-nodes.
    pub d_t: Vec<f64>,
    /// `cosh(mu s_m)` on S-nodes.
    pub scale_s: Vec<f64>,
    /// `cosh(mu t_m)` on T-nodes.
    pub scale_t: Vec<f64>,
}

impl DiagWeights {
    pub fn new(sp: &Spectral, p: &WeightParam) -> Self {
        let on = |g: &Grid, h: &dyn Fn(f64) -> f64| g.nodes().iter().map(|&x| h(x)).collect();
        Self {
            d_s: on(sp.s_grid(), &|x| p.slope(x)),
            d_t: on(sp.t_grid(), &|x| p.slope(x)),
            scale_s: on(sp.s_grid(), &|x| p.scale(x)),
            scale_t: on(sp.t_grid(), &|x| p.scale(x)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Dense factorization, no iteration.
    Direct,
    Converged,
    /// `max_iter` exhausted before the tolerance was met.
    NotConverged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub iterations: usize,
    /// Norms of successive differences `||f^(k+1) - f^(k)||` in the flavor's
    /// own weighted norm.
    pub residual_history: Vec<f64>,
    /// Largest ratio of consecutive entries of `residual_history`, taken over
    /// entries above the round-off floor.
    pub measured_ratio: f64,
    /// Theoretical contraction factor `tanh^2(|mu|)` (or `tan^2(|eta|)`).
    pub bound_ratio: f64,
    pub coercive_const: f64,
    /// Weighted norm of the residual of the discrete system at the returned
    /// solution.
    pub final_defect: f64,
}

impl SolveReport {
    pub fn converged(&self) -> bool {
        self.status != SolveStatus::NotConverged
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionEstimate {
    pub measured: f64,
    pub bound: f64,
}

/// Discrete weighted transform for one size and weight parameter.
#[derive(Debug, Clone)]
pub struct CoshOperator {
    sp: Arc<Spectral>,
    p: WeightParam,
    diag: DiagWeights,
}

impl CoshOperator {
    pub fn new(n: usize, p: WeightParam) -> Result<Self> {
        p.validate()?;
        let sp = Spectral::shared(n)?;
        let diag = DiagWeights::new(&sp, &p);
        Ok(Self { sp, p, diag })
    }

    pub fn spectral(&self) -> &Spectral {
        &self.sp
    }

    pub fn param(&self) -> &WeightParam {
        &self.p
    }

    pub fn diag(&self) -> &DiagWeights {
        &self.diag
    }

    pub fn n(&self) -> usize {
        self.sp.n()
    }

    /// `M x = S1 C3^T D_s C3 S1^T D_t x`.
    pub fn apply_coupling(&self, x: &[f64]) -> Vec<f64> {
        let dt_x: Vec<f64> = x.iter().zip(&self.diag.d_t).map(|(a, b)| a * b).collect();
        let mut y = self.sp.apply_forward_d(&dt_x);
        for (v, d) in y.iter_mut().zip(&self.diag.d_s) {
            *v *= d;
        }
        self.sp.apply_inverse_d(&y)
    }

    /// The dense coupling matrix `M`.
    pub fn coupling_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let ds = DMatrix::from_diagonal(&DVector::from_column_slice(&self.diag.d_s));
        let dt = DMatrix::from_diagonal(&DVector::from_column_slice(&self.diag.d_t));
        let inner = ds * self.sp.forward_matrix() * dt;
        let m = self.sp.inverse_matrix() * inner;
        debug_assert_eq!(m.nrows(), n);
        m
    }

    /// `I + coupling * M`, i.e. `I - M` for the cosh kernel.
    pub fn system_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::identity(n, n) + self.coupling_matrix() * self.p.coupling()
    }

    fn system_apply(&self, x: &[f64]) -> Vec<f64> {
        let c = self.p.coupling();
        self.apply_coupling(x)
            .iter()
            .zip(x)
            .map(|(m, v)| v + c * m)
            .collect()
    }

    fn rhs(&self, f_mu: &GridFn) -> Result<Vec<f64>> {
        f_mu.grid().expect_kind(GridKind::SNodes)?;
        if f_mu.grid().n() != self.n() {
            return Err(FhtError::LengthMismatch {
                expected: self.n(),
                found: f_mu.grid().n(),
            });
        }
        let tilde: Vec<f64> = f_mu
            .values()
            .iter()
            .zip(&self.diag.scale_s)
            .map(|(v, c)| v / c)
            .collect();
        Ok(self.sp.apply_inverse_d(&tilde))
    }

    fn unweight(&self, f_hat: &[f64]) -> Result<GridFn> {
        let mut values: Vec<f64> = f_hat
            .iter()
            .zip(&self.diag.scale_t)
            .map(|(v, c)| v / c)
            .collect();
        values[0] = 0.0;
        GridFn::new(self.sp.t_grid().clone(), values, Role::Plain)
    }

    fn ld_norm_t(&self, x: &[f64]) -> f64 {
        ld_norm_t(x)
    }

    /// Forward transform: T-node samples of `f` to S-node samples of `F_mu`.
    pub fn forward(&self, f: &GridFn) -> Result<GridFn> {
        f.grid().expect_kind(GridKind::TNodes)?;
        if f.grid().n() != self.n() {
            return Err(FhtError::LengthMismatch {
                expected: self.n(),
                found: f.grid().n(),
            });
        }
        let f_hat: Vec<f64> = f
            .values()
            .iter()
            .zip(&self.diag.scale_t)
            .map(|(v, c)| v * c)
            .collect();
        let plain = self.sp.apply_forward_d(&f_hat);
        let dt_f: Vec<f64> = f_hat
            .iter()
            .zip(&self.diag.d_t)
            .map(|(a, b)| a * b)
            .collect();
        let coupled = self.sp.apply_forward_d(&dt_f);
        let c = self.p.coupling();
        let values = plain
            .iter()
            .zip(&coupled)
            .enumerate()
            .map(|(m, (a, b))| (a + c * self.diag.d_s[m] * b) * self.diag.scale_s[m])
            .collect();
        GridFn::new(self.sp.s_grid().clone(), values, Role::Transform)
    }

    /// Dense LU solve of the discrete system.
    pub fn invert_direct(&self, f_mu: &GridFn) -> Result<(GridFn, SolveReport)> {
        let b = self.rhs(f_mu)?;
        let lu = self.system_matrix().lu();
        let f_hat = lu
            .solve(&DVector::from_column_slice(&b))
            .ok_or_else(|| FhtError::Solver("singular system matrix".into()))?;
        let f_hat = f_hat.as_slice().to_vec();
        let defect = self.defect(&f_hat, &b);
        let report = SolveReport {
            status: SolveStatus::Direct,
            iterations: 0,
            residual_history: Vec::new(),
            measured_ratio: 0.0,
            bound_ratio: self.p.contraction(),
            coercive_const: self.p.coercive_const(),
            final_defect: defect,
        };
        Ok((self.unweight(&f_hat)?, report))
    }

    fn defect(&self, f_hat: &[f64], b: &[f64]) -> f64 {
        let r: Vec<f64> = self
            .system_apply(f_hat)
            .iter()
            .zip(b)
            .map(|(a, c)| a - c)
            .collect();
        self.ld_norm_t(&r)
    }

    /// Neumann iteration `f^(k+1) = f^(0) - coupling * M f^(k)`, stopped when
    /// the successive difference drops below `tol` in `L_d^2`.
    pub fn invert_neumann(
        &self,
        f_mu: &GridFn,
        tol: f64,
        max_iter: usize,
    ) -> Result<(GridFn, SolveReport)> {
        if !(tol > 0.0) {
            return Err(FhtError::InvalidParameter(format!(
                "tol = {tol} must be positive"
            )));
        }
        let b = self.rhs(f_mu)?;
        let c = self.p.coupling();
        let step = |x: &[f64]| -> Vec<f64> {
            self.apply_coupling(x)
                .iter()
                .zip(&b)
                .map(|(m, b0)| b0 - c * m)
                .collect()
        };
        let floor = round_off_floor(self.ld_norm_t(&b));
        let (f_hat, history, status) =
            fixed_point(b.clone(), step, |d| self.ld_norm_t(d), tol, max_iter);
        let report = SolveReport {
            status,
            iterations: history.len(),
            measured_ratio: max_ratio(&history, floor),
            residual_history: history,
            bound_ratio: self.p.contraction(),
            coercive_const: self.p.coercive_const(),
            final_defect: self.defect(&f_hat, &b),
        };
        Ok((self.unweight(&f_hat)?, report))
    }

    /// 2-norm condition number of the system matrix from its singular values.
    pub fn condition_estimate(&self) -> ConditionEstimate {
        let sv = self.system_matrix().singular_values();
        let max = sv.iter().cloned().fold(0.0_f64, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        ConditionEstimate {
            measured: max / min,
            bound: self.p.condition_bound(),
        }
    }

    /// Mean-constrained inversion on the multiplication-flavor grids.
    ///
    /// Given U-node samples of `F_mu` and `mean_fbar = (1/2) int cosh(mu t) f`,
    /// solves for `g = cosh(mu t) f` by iterating
    ///
    /// ```text
    /// g^(k+1) = g^(0) - coupling * H_m^{-1}[ slope(s) H[ slope(t) g^(k) ] ]
    /// g^(0)   = H_m^{-1}[ F_mu / cosh(mu s) ] + (2 mean_fbar / pi) / w
    /// ```
    ///
    /// `H_m^{-1}` drops exactly the `1/w` component, which `H` annihilates, so
    /// the mean enters as that component and no log-singular terms have to be
    /// sampled. Returns S-node samples of `f`.
    pub fn invert_mean_constrained(
        &self,
        f_mu: &GridFn,
        mean_fbar: f64,
        tol: f64,
        max_iter: usize,
    ) -> Result<(GridFn, SolveReport)> {
        if !(tol > 0.0) {
            return Err(FhtError::InvalidParameter(format!(
                "tol = {tol} must be positive"
            )));
        }
        f_mu.grid().expect_kind(GridKind::UNodes)?;
        if f_mu.grid().n() != self.n() {
            return Err(FhtError::LengthMismatch {
                expected: self.n(),
                found: f_mu.grid().n(),
            });
        }
        let sp = &*self.sp;
        let p = self.p;
        let u_nodes = sp.u_grid().nodes();
        let inv_w = |m: usize| 1.0 / sp.s_grid().weight_at(m);
        let scaled: Vec<f64> = f_mu
            .values()
            .iter()
            .zip(u_nodes)
            .map(|(v, &u)| v / p.scale(u))
            .collect();
        let mean_part = 2.0 * mean_fbar / std::f64::consts::PI;
        let g0: Vec<f64> = sp
            .apply_inverse_m(&scaled)
            .iter()
            .enumerate()
            .map(|(m, v)| v + mean_part * inv_w(m))
            .collect();

        let slope_s: Vec<f64> = sp.s_grid().nodes().iter().map(|&x| p.slope(x)).collect();
        let slope_u: Vec<f64> = u_nodes.iter().map(|&x| p.slope(x)).collect();
        let c = p.coupling();
        let coupling_m = |x: &[f64]| -> Vec<f64> {
            let a: Vec<f64> = x.iter().zip(&slope_s).map(|(v, d)| v * d).collect();
            let big: Vec<f64> = sp
                .apply_forward_m(&a)
                .iter()
                .zip(&slope_u)
                .map(|(v, d)| v * d)
                .collect();
            sp.apply_inverse_m(&big)
        };
        let step = |x: &[f64]| -> Vec<f64> {
            coupling_m(x)
                .iter()
                .zip(&g0)
                .map(|(m, a)| a - c * m)
                .collect()
        };
        let s_grid = sp.s_grid();
        let lm_norm = |x: &[f64]| lm_norm_s(s_grid, x);
        let floor = round_off_floor(lm_norm(&g0));
        let (g_hat, history, status) = fixed_point(g0.clone(), step, lm_norm, tol, max_iter);

        let residual: Vec<f64> = coupling_m(&g_hat)
            .iter()
            .zip(&g0)
            .zip(&g_hat)
            .map(|((m, a), x)| x + c * m - a)
            .collect();
        let report = SolveReport {
            status,
            iterations: history.len(),
            measured_ratio: max_ratio(&history, floor),
            residual_history: history,
            bound_ratio: p.contraction(),
            coercive_const: p.coercive_const(),
            final_defect: lm_norm(&residual),
        };
        let values = g_hat
            .iter()
            .zip(s_grid.nodes())
            .map(|(v, &x)| v / p.scale(x))
            .collect();
        Ok((GridFn::new(s_grid.clone(), values, Role::Plain)?, report))
    }
}

/// `(1/N) sum_{m >= 1} x_m^2`, the `L_d^2` rule on T-nodes.
fn ld_norm_t(x: &[f64]) -> f64 {
    (x.iter().skip(1).map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
}

/// `L_m^2` norm of S-node samples.
fn lm_norm_s(grid: &Grid, x: &[f64]) -> f64 {
    let n = x.len() as f64;
    (x.iter()
        .enumerate()
        .map(|(m, v)| (v * grid.weight_at(m)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt()
}

fn round_off_floor(scale: f64) -> f64 {
    64.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE)
}

/// Largest ratio `h[k+1] / h[k]` over pairs where both entries exceed `floor`.
fn max_ratio(history: &[f64], floor: f64) -> f64 {
    history
        .windows(2)
        .filter(|w| w[0] > floor && w[1] > floor)
        .map(|w| w[1] / w[0])
        .fold(0.0, f64::max)
}

/// Runs `x <- step(x)` from `x0` until the successive difference falls below
/// `tol`. Returns the last iterate, the difference norms and the status.
fn fixed_point(
    x0: Vec<f64>,
    step: impl Fn(&[f64]) -> Vec<f64>,
    norm: impl Fn(&[f64]) -> f64,
    tol: f64,
    max_iter: usize,
) -> (Vec<f64>, Vec<f64>, SolveStatus) {
    let mut x = x0;
    let mut history = Vec::new();
    for _ in 0..max_iter {
        let next = step(&x);
        let diff: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
        let d = norm(&diff);
        history.push(d);
        x = next;
        if d < tol {
            return (x, history, SolveStatus::Converged);
        }
    }
    (x, history, SolveStatus::NotConverged)
}

/// Chebyshev interpolant `slope(x) = sum c_n T_n(x)` at the S-nodes.
fn slope_t_series(sp: &Spectral, p: &WeightParam) -> Result<ChebCoeffs> {
    let samples = GridFn::sample(sp.s_grid(), Role::Plain, |x| p.slope(x));
    sp.analyze_s(&samples)
}

pub fn cosh_forward(f: &GridFn, p: &WeightParam) -> Result<GridFn> {
    CoshOperator::new(f.grid().n(), *p)?.forward(f)
}

pub fn cosh_invert_direct(f_mu: &GridFn, p: &WeightParam) -> Result<(GridFn, SolveReport)> {
    CoshOperator::new(f_mu.grid().n(), *p)?.invert_direct(f_mu)
}

pub fn cosh_invert_neumann(
    f_mu: &GridFn,
    p: &WeightParam,
    tol: f64,
    max_iter: usize,
) -> Result<(GridFn, SolveReport)> {
    CoshOperator::new(f_mu.grid().n(), *p)?.invert_neumann(f_mu, tol, max_iter)
}

pub fn cosh_invert_mean_constrained(
    f_mu: &GridFn,
    p: &WeightParam,
    mean_fbar: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(GridFn, SolveReport)> {
    CoshOperator::new(f_mu.grid().n(), *p)?.invert_mean_constrained(f_mu, mean_fbar, tol, max_iter)
}

pub fn condition_estimate(p: &WeightParam, n: usize) -> Result<ConditionEstimate> {
    Ok(CoshOperator::new(n, *p)?.condition_estimate())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `K_d(t) = (1/pi) int tanh(mu s) / ((s - t) w(s)) ds`
    Kd,
    /// `K_m(t) = (1/pi) int tanh(mu s) w(s) / (s - t) ds`
    Km,
}

/// A kernel sampled on a grid together with its generating series.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelFn {
    pub kind: KernelKind,
    pub grid: Grid,
    pub values: Vec<f64>,
    /// Interpolant of `tanh(mu .)`: T-basis for `Kd`, U-basis for `Km`.
    pub series: ChebCoeffs,
}

impl KernelFn {
    /// Evaluates the kernel at any `x` in `[-1, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        kernel_from_series(self.kind, &self.series, x)
    }
}

fn kernel_from_series(kind: KernelKind, series: &ChebCoeffs, x: f64) -> Result<f64> {
    match kind {
        // sum_{n >= 1} c_n U_{n-1}(x)
        KernelKind::Kd => {
            let tail = ChebCoeffs::new(Basis::SecondKindU, series.coeffs[1..].to_vec());
            Ok(cheb::resample(&tail, &[x], ResampleMode::USeries)?[0])
        }
        // -sum_n d_n T_{n+1}(x)
        KernelKind::Km => {
            let mut shifted = Vec::with_capacity(series.len() + 1);
            shifted.push(0.0);
            shifted.extend(series.coeffs.iter().map(|d| -d));
            let t = ChebCoeffs::new(Basis::FirstKindT, shifted);
            Ok(cheb::resample(&t, &[x], ResampleMode::TSeries)?[0])
        }
    }
}

/// Samples `K_d` or `K_m` on `eval_grid`, expanding `tanh(mu .)` with
/// `eval_grid.n()` terms.
pub fn kernel(kind: KernelKind, p: &WeightParam, eval_grid: &Grid) -> Result<KernelFn> {
    p.validate()?;
    let sp = Spectral::shared(eval_grid.n())?;
    let series = match kind {
        KernelKind::Kd => slope_t_series(&sp, p)?,
        KernelKind::Km => {
            let samples = GridFn::sample(sp.u_grid(), Role::Plain, |x| p.slope(x));
            sp.analyze_u(&samples)?
        }
    };
    let values = eval_grid
        .nodes()
        .iter()
        .map(|&x| kernel_from_series(kind, &series, x))
        .collect::<Result<Vec<f64>>>()?;
    Ok(KernelFn {
        kind,
        grid: eval_grid.clone(),
        values,
        series,
    })
}

/// One-dimensional form of the coupling operator on T-nodes:
///
/// ```text
/// (M f)(t) = tanh^2(mu t) f(t) + w(t) int [K_d(t) - K_d(u)] / (pi (t - u)) tanh(mu u) f(u) du
/// ```
///
/// with the regular `u`-integral done by `quad`. Node `t_0 = 1` is set to 0.
pub fn kernel_form_d(
    p: &WeightParam,
    n: usize,
    f: &dyn Fn(f64) -> f64,
    quad: &PvOracle,
) -> Result<GridFn> {
    let t_grid = Grid::new(GridKind::TNodes, n)?;
    let k = kernel(KernelKind::Kd, p, &t_grid)?;
    let kernel_form = |t: f64, kt: f64| -> Result<f64> {
        let integral = quad.integrate(|u| {
            if u == t {
                return 0.0;
            }
            let ku = k.eval(u).expect("u in [-1, 1]");
            (kt - ku) / (std::f64::consts::PI * (t - u)) * p.slope(u) * f(u)
        });
        Ok(p.slope(t).powi(2) * f(t) + cheb::weight(t)? * integral)
    };
    let mut values = vec![0.0; n];
    for (m, v) in values.iter_mut().enumerate().skip(1) {
        *v = kernel_form(t_grid.nodes()[m], k.values[m])?;
    }
    GridFn::new(t_grid, values, Role::HatMu)
}

/// One-dimensional form of the multiplication-flavor coupling operator on
/// S-nodes:
///
/// ```text
/// (M_m f)(t) = tanh^2(mu t) f(t) + (1/w(t)) int [K_m(t) - K_m(u)] / (pi (t - u)) tanh(mu u) f(u) du
/// ```
pub fn kernel_form_m(
    p: &WeightParam,
    n: usize,
    f: &dyn Fn(f64) -> f64,
    quad: &PvOracle,
) -> Result<GridFn> {
    let s_grid = Grid::new(GridKind::SNodes, n)?;
    let k = kernel(KernelKind::Km, p, &s_grid)?;
    let values = s_grid
        .nodes()
        .iter()
        .zip(&k.values)
        .enumerate()
        .map(|(m, (&t, &kt))| {
            let integral = quad.integrate(|u| {
                if u == t {
                    return 0.0;
                }
                let ku = k.eval(u).expect("u in [-1, 1]");
                (kt - ku) / (std::f64::consts::PI * (t - u)) * p.slope(u) * f(u)
            });
            p.slope(t).powi(2) * f(t) + integral / s_grid.weight_at(m)
        })
        .collect();
    GridFn::new(s_grid, values, Role::HatMu)
}

/// Composite multiplication-flavor coupling `H_m^{-1}[slope H[slope f]]` on
/// S-node samples.
pub fn coupling_m(sp: &Spectral, p: &WeightParam, f: &GridFn) -> Result<GridFn> {
    f.grid().expect_kind(GridKind::SNodes)?;
    let a = f.map_with_nodes(Role::Plain, |x, v| p.slope(x) * v);
    let big = sp
        .forward_m(&a)?
        .map_with_nodes(Role::Transform, |x, v| p.slope(x) * v);
    Ok(sp.inverse_m(&big)?.with_role(Role::HatMu))
}

/// One row of the null-function experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullRow {
    pub n: usize,
    pub norm_ld: f64,
    pub norm_lm: f64,
}

/// Applies the forward operator to samples of `cos(mu w(t))` for each size
/// and reports the `L_d^2` and `L_m^2` norms of the image. The value 1 at
/// `t_0 = 1` is not seen by the scheme.
pub fn null_experiment(p: &WeightParam, sizes: &[usize]) -> Result<Vec<NullRow>> {
    let mu = match *p {
        WeightParam::CoshReal { mu } if mu != 0.0 => mu,
        WeightParam::CoshReal { .. } => {
            return Err(FhtError::InvalidParameter(
                "the null-function experiment needs mu != 0".into(),
            ))
        }
        WeightParam::CosImaginary { .. } => {
            return Err(FhtError::InvalidParameter(
                "the null-function experiment is defined for the cosh kernel".into(),
            ))
        }
    };
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FhtError::InvalidParameter(
            "sizes must be strictly increasing".into(),
        ));
    }
    sizes
        .iter()
        .map(|&n| {
            let op = CoshOperator::new(n, *p)?;
            let f = GridFn::sample(op.spectral().t_grid(), Role::Plain, |t| {
                (mu * ((1.0 - t) * (1.0 + t)).max(0.0).sqrt()).cos()
            });
            let big = op.forward(&f)?;
            Ok(NullRow {
                n,
                norm_ld: cheb::norm(&big, Space::Ld2)?,
                norm_lm: cheb::norm(&big, Space::Lm2)?,
            })
        })
        .collect()
}
