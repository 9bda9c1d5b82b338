//! Forward and inverse finite Hilbert transform
//!
//! ```text
//! F(s) = (1/pi) PV int_{-1}^{1} f(t) / (s - t) dt
//! ```
//!
//! in the two weighted flavors.
//!
//! *Division flavor* (`f` in `L_d^2`, `F` in `E_d^2`): `f` lives on T-nodes,
//! `F` on S-nodes. With `f(cos th) = sum a_n sin(n th)` the transform is
//! `F(cos th) = sum a_n cos(n th)`, i.e. `F = C3 S1^T f` and `f = S1 C3^T F`.
//! The inverse silently drops the `T_0` part of `F`, which is the component
//! violating the range condition.
//!
//! *Multiplication flavor* (`f` in `E_m^2`, `F` in `L_m^2`): `f` lives on
//! S-nodes, `F` on U-nodes. With `f w = c_0 + sum d_n T_{n+1}` the transform
//! is `F = -sum d_n U_n`; the `c_0 / w` part maps to zero.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::cheb;
use crate::cheb::{Basis, ChebCoeffs, Grid, GridFn, GridKind, Role, Space};
use crate::error::Result;
use crate::transforms::{TransformKind, TransformMatrix};

/// Which pair of weighted spaces a transform is taken between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTag {
    /// `L_d^2 -> E_d^2`: T-node samples of `f`, S-node samples of `F`.
    DFlavor,
    /// `E_m^2 -> L_m^2`: S-node samples of `f`, U-node samples of `F`.
    MFlavor,
}

/// Grids and transform matrices for one size `N`. Immutable once built.
#[derive(Debug)]
pub struct Spectral {
    s_grid: Grid,
    t_grid: Grid,
    u_grid: Grid,
    c3: TransformMatrix,
    s1: TransformMatrix,
    m_cos: TransformMatrix,
    m_sin: TransformMatrix,
    forward_d: DMatrix<f64>,
    inverse_d: DMatrix<f64>,
}

impl Spectral {
    pub fn new(n: usize) -> Result<Self> {
        let c3 = TransformMatrix::build(TransformKind::C3, n)?;
        let s1 = TransformMatrix::build(TransformKind::S1, n)?;
        let forward_d = c3.entries() * s1.entries().transpose();
        let inverse_d = s1.entries() * c3.entries().transpose();
        Ok(Self {
            s_grid: Grid::new(GridKind::SNodes, n)?,
            t_grid: Grid::new(GridKind::TNodes, n)?,
            u_grid: Grid::new(GridKind::UNodes, n)?,
            m_cos: TransformMatrix::build(TransformKind::MAnalysisCos, n)?,
            m_sin: TransformMatrix::build(TransformKind::MSynthesisSin, n)?,
            c3,
            s1,
            forward_d,
            inverse_d,
        })
    }

    /// Process-wide cached instance for size `n`.
    pub fn shared(n: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Spectral>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().expect("spectral cache poisoned").get(&n) {
            return Ok(Arc::clone(hit));
        }
        // Built outside the lock; a racing builder just overwrites an equal value.
        let built = Arc::new(Self::new(n)?);
        cache
            .lock()
            .expect("spectral cache poisoned")
            .insert(n, Arc::clone(&built));
        Ok(built)
    }

    pub fn n(&self) -> usize {
        self.s_grid.n()
    }

    pub fn s_grid(&self) -> &Grid {
        &self.s_grid
    }

    pub fn t_grid(&self) -> &Grid {
        &self.t_grid
    }

    pub fn u_grid(&self) -> &Grid {
        &self.u_grid
    }

    pub fn c3(&self) -> &TransformMatrix {
        &self.c3
    }

    pub fn s1(&self) -> &TransformMatrix {
        &self.s1
    }

    /// `C3 S1^T`.
    pub fn forward_matrix(&self) -> &DMatrix<f64> {
        &self.forward_d
    }

    /// `S1 C3^T`.
    pub fn inverse_matrix(&self) -> &DMatrix<f64> {
        &self.inverse_d
    }

    fn check(&self, f: &GridFn, kind: GridKind) -> Result<()> {
        f.grid().expect_kind(kind)?;
        if f.grid().n() != self.n() {
            return Err(crate::error::FhtError::LengthMismatch {
                expected: self.n(),
                found: f.grid().n(),
            });
        }
        Ok(())
    }

    pub(crate) fn apply_forward_d(&self, values: &[f64]) -> Vec<f64> {
        mat_vec(&self.forward_d, values)
    }

    pub(crate) fn apply_inverse_d(&self, values: &[f64]) -> Vec<f64> {
        mat_vec(&self.inverse_d, values)
    }

    /// Division-flavor forward transform, T-nodes to S-nodes. The sample at
    /// `t_0 = 1` is never read.
    pub fn forward_d(&self, f: &GridFn) -> Result<GridFn> {
        self.check(f, GridKind::TNodes)?;
        GridFn::new(
            self.s_grid.clone(),
            self.apply_forward_d(f.values()),
            Role::Transform,
        )
    }

    /// Division-flavor inverse, S-nodes to T-nodes. The constant component of
    /// `F` is annihilated and the result vanishes at `t_0 = 1`.
    pub fn inverse_d(&self, big_f: &GridFn) -> Result<GridFn> {
        self.check(big_f, GridKind::SNodes)?;
        let mut values = self.apply_inverse_d(big_f.values());
        values[0] = 0.0;
        GridFn::new(self.t_grid.clone(), values, Role::Plain)
    }

    pub(crate) fn apply_forward_m(&self, values: &[f64]) -> Vec<f64> {
        let n = self.n();
        let fw: Vec<f64> = values
            .iter()
            .enumerate()
            .map(|(m, v)| v * self.s_grid.weight_at(m))
            .collect();
        let d = self.m_cos.apply(&fw, false).expect("size checked");
        // sum_n d_n sin((n+1) phi_j) = (N+1) / (2 sin phi_j) * (M_sin^T d)_j
        let folded = self.m_sin.apply(&d, true).expect("size checked");
        let half = 0.5 * (n + 1) as f64;
        folded
            .iter()
            .enumerate()
            .map(|(j, v)| -half * v / self.u_grid.weight_at(j).powi(2))
            .collect()
    }

    pub(crate) fn apply_inverse_m(&self, values: &[f64]) -> Vec<f64> {
        let n = self.n();
        let d = self.m_sin.apply(values, false).expect("size checked");
        // sum_n d_n cos((n+1) th_m) = N / 2 * (M_cos^T d)_m
        let folded = self.m_cos.apply(&d, true).expect("size checked");
        let half = 0.5 * n as f64;
        folded
            .iter()
            .enumerate()
            .map(|(m, v)| -half * v / self.s_grid.weight_at(m))
            .collect()
    }

    /// Multiplication-flavor forward transform, S-nodes to U-nodes.
    pub fn forward_m(&self, f: &GridFn) -> Result<GridFn> {
        self.check(f, GridKind::SNodes)?;
        GridFn::new(
            self.u_grid.clone(),
            self.apply_forward_m(f.values()),
            Role::Transform,
        )
    }

    /// Multiplication-flavor inverse, U-nodes to S-nodes. The result has zero
    /// mean, `<f, 1/w>_m = 0`.
    pub fn inverse_m(&self, big_f: &GridFn) -> Result<GridFn> {
        self.check(big_f, GridKind::UNodes)?;
        GridFn::new(
            self.s_grid.clone(),
            self.apply_inverse_m(big_f.values()),
            Role::Plain,
        )
    }

    /// Component 0 of `C3^T F`, i.e. `(1/sqrt N) sum F(s_m)`. Zero exactly when
    /// `F` passes the discrete range condition.
    pub fn range_defect(&self, big_f: &GridFn) -> Result<f64> {
        self.check(big_f, GridKind::SNodes)?;
        let scale = 1.0 / (self.n() as f64).sqrt();
        Ok(scale * big_f.values().iter().sum::<f64>())
    }

    /// Coefficients `a_n` with `f = w sum a_n U_{n-1}` from T-node samples.
    /// `a_0` is exactly zero.
    pub fn analyze_t(&self, f: &GridFn) -> Result<ChebCoeffs> {
        self.check(f, GridKind::TNodes)?;
        let scale = (2.0 / self.n() as f64).sqrt();
        let mut a: Vec<f64> = self
            .s1
            .apply(f.values(), true)?
            .into_iter()
            .map(|v| scale * v)
            .collect();
        a[0] = 0.0;
        Ok(ChebCoeffs::new(Basis::FirstKindT, a))
    }

    /// Coefficients `a_n` with `F = sum a_n T_n` from S-node samples.
    pub fn analyze_s(&self, big_f: &GridFn) -> Result<ChebCoeffs> {
        self.check(big_f, GridKind::SNodes)?;
        let n = self.n() as f64;
        let mut a: Vec<f64> = self
            .c3
            .apply(big_f.values(), true)?
            .into_iter()
            .map(|v| (2.0 / n).sqrt() * v)
            .collect();
        a[0] /= 2.0_f64.sqrt();
        Ok(ChebCoeffs::new(Basis::FirstKindT, a))
    }

    /// Coefficients `d_n` with `F = sum d_n U_n` from U-node samples.
    pub fn analyze_u(&self, big_f: &GridFn) -> Result<ChebCoeffs> {
        self.check(big_f, GridKind::UNodes)?;
        Ok(ChebCoeffs::new(
            Basis::SecondKindU,
            self.m_sin.apply(big_f.values(), false)?,
        ))
    }

    pub fn plancherel_check(&self, f: &GridFn, space: SpaceTag) -> Result<PlancherelReport> {
        let (lhs, rhs) = match space {
            SpaceTag::DFlavor => {
                let big_f = self.forward_d(f)?;
                (
                    cheb::norm(&big_f, Space::Ld2)?.powi(2),
                    cheb::norm(f, Space::Ld2)?.powi(2),
                )
            }
            SpaceTag::MFlavor => {
                let big_f = self.forward_m(f)?;
                let mean = mean_m(f)?;
                (
                    cheb::norm(&big_f, Space::Lm2)?.powi(2),
                    cheb::norm(f, Space::Lm2)?.powi(2) - mean * mean,
                )
            }
        };
        Ok(PlancherelReport {
            lhs,
            rhs,
            defect: (lhs - rhs).abs(),
        })
    }
}

/// `<f, 1/w>_m = (1/pi) int f dt` from S-node samples, by the first-kind
/// Gauss rule applied to `f w`.
pub fn mean_m(f: &GridFn) -> Result<f64> {
    f.grid().expect_kind(GridKind::SNodes)?;
    let n = f.grid().n();
    Ok(f.values()
        .iter()
        .enumerate()
        .map(|(m, v)| v * f.grid().weight_at(m))
        .sum::<f64>()
        / n as f64)
}

/// Finite Hilbert transform of `sum a_n T_n` at an interior point `s`, from
/// the closed forms `Q_n(s) = (1/pi) PV int T_n(t) / (s - t) dt`:
///
/// ```text
/// Q_0 = (1/pi) ln((1 + s) / (1 - s)),  Q_1 = s Q_0 - 2/pi,
/// Q_{n+1} = 2 s Q_n - Q_{n-1} - (2/pi) int T_n
/// ```
pub fn t_series_transform(series: &ChebCoeffs, s: f64) -> f64 {
    let q0 = ((1.0 + s) / (1.0 - s)).ln() / PI;
    let q1 = s * q0 - 2.0 / PI;
    let (mut prev, mut cur) = (q0, q1);
    let mut acc = 0.0;
    for (n, &a) in series.coeffs.iter().enumerate() {
        match n {
            0 => acc += a * q0,
            1 => acc += a * q1,
            _ => {
                let k = n - 1;
                let int_tk = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (1.0 - (k * k) as f64)
                };
                let next = 2.0 * s * cur - prev - 2.0 / PI * int_tk;
                prev = cur;
                cur = next;
                acc += a * cur;
            }
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelReport {
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
}

pub(crate) fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    let x = DVector::from_column_slice(v);
    (m * x).as_slice().to_vec()
}

pub fn fht_forward_d(f: &GridFn) -> Result<GridFn> {
    Spectral::shared(f.grid().n())?.forward_d(f)
}

pub fn fht_inverse_d(big_f: &GridFn) -> Result<GridFn> {
    Spectral::shared(big_f.grid().n())?.inverse_d(big_f)
}

pub fn fht_forward_m(f: &GridFn) -> Result<GridFn> {
    Spectral::shared(f.grid().n())?.forward_m(f)
}

pub fn fht_inverse_m(big_f: &GridFn) -> Result<GridFn> {
    Spectral::shared(big_f.grid().n())?.inverse_m(big_f)
}

/// Division-flavor forward transform of T-node samples, evaluated at
/// arbitrary points of `[-1, 1]` without building the transform matrices.
///
/// The DST-I analysis is summed directly, so the cost is `O(N^2)` in time
/// and `O(N)` in memory; use it for sizes where `Spectral::new` is too heavy.
pub fn fht_forward_d_at(f: &GridFn, points: &[f64]) -> Result<Vec<f64>> {
    f.grid().expect_kind(GridKind::TNodes)?;
    let n = f.grid().n();
    let nf = n as f64;
    let mut a = vec![0.0; n];
    for (k, ak) in a.iter_mut().enumerate().skip(1) {
        *ak = 2.0 / nf
            * f.values()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, v)| v * (((k * m) % (2 * n)) as f64 * PI / nf).sin())
                .sum::<f64>();
    }
    cheb::resample(
        &ChebCoeffs::new(Basis::FirstKindT, a),
        points,
        cheb::ResampleMode::TSeries,
    )
}

pub fn range_defect(big_f: &GridFn) -> Result<f64> {
    Spectral::shared(big_f.grid().n())?.range_defect(big_f)
}

pub fn plancherel_check(f: &GridFn, space: SpaceTag) -> Result<PlancherelReport> {
    Spectral::shared(f.grid().n())?.plancherel_check(f, space)
}
