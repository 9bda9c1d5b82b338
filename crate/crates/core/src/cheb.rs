//! Chebyshev polynomials, collocation grids, the weight `w(t) = sqrt(1 - t^2)`
//! and the weighted inner products of the two spaces `L_d^2` and `L_m^2`.
//!
//! Three node families are used throughout the crate, all cosines of
//! equispaced angles:
//!
//! ```text
//! S-nodes  s_m = cos((m + 1/2) pi / N),   m = 0..N-1
//! T-nodes  t_m = cos(m pi / N),           m = 0..N-1   (t_0 = 1)
//! U-nodes  u_j = cos(j pi / (N + 1)),     j = 1..N
//! ```
//!
//! Inner products carry the `1/pi` normalization, so `||1||_d = 1` and
//! `||1/w||_m = 1` in the continuum.

use std::f64::consts::PI;

use crate::error::{FhtError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    SNodes,
    TNodes,
    UNodes,
}

/// Collocation nodes of one kind. Nodes are always recomputed from the closed
/// form, never accumulated.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    kind: GridKind,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(kind: GridKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(FhtError::InvalidSize { n, min: 2 });
        }
        let nodes = (0..n).map(|i| node_angle(kind, n, i).cos()).collect();
        Ok(Self { kind, nodes })
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Angle `theta_i` with `nodes[i] = cos(theta_i)`.
    pub fn angle(&self, i: usize) -> f64 {
        node_angle(self.kind, self.n(), i)
    }

    /// `w(node_i) = sin(theta_i)`, evaluated from the angle to avoid the
    /// cancellation in `1 - t^2` near the endpoints.
    pub fn weight_at(&self, i: usize) -> f64 {
        self.angle(i).sin()
    }

    pub(crate) fn expect_kind(&self, kind: GridKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(FhtError::GridMismatch {
                expected: kind,
                found: self.kind,
            })
        }
    }
}

fn node_angle(kind: GridKind, n: usize, i: usize) -> f64 {
    match kind {
        GridKind::SNodes => (i as f64 + 0.5) * PI / n as f64,
        GridKind::TNodes => i as f64 * PI / n as f64,
        GridKind::UNodes => (i + 1) as f64 * PI / (n + 1) as f64,
    }
}

pub fn cgl_nodes(kind: GridKind, n: usize) -> Result<Grid> {
    Grid::new(kind, n)
}

/// Semantic tag of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// A plain function `f`.
    Plain,
    /// The weighted unknown `cosh(mu t) f(t)` (or `cos(eta t) f(t)`).
    HatMu,
    /// A transform `F`.
    Transform,
    /// The normalized transform `F_mu(s) / cosh(mu s)`.
    TildeMu,
}

/// Samples of a function on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    grid: Grid,
    values: Vec<f64>,
    role: Role,
}

impl GridFn {
    pub fn new(grid: Grid, values: Vec<f64>, role: Role) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(FhtError::LengthMismatch {
                expected: grid.n(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values, role })
    }

    pub fn sample(grid: &Grid, role: Role, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self {
            grid: grid.clone(),
            values,
            role,
        }
    }

    pub fn zeros(grid: &Grid, role: Role) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.n()],
            role,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    /// Pointwise map `v_i -> g(node_i, v_i)` keeping the grid.
    pub fn map_with_nodes(&self, role: Role, g: impl Fn(f64, f64) -> f64) -> Self {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| g(x, v))
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
            role,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    FirstKindT,
    SecondKindU,
}

/// Coefficients `a_0 .. a_{N-1}` of a Chebyshev series.
///
/// For `FirstKindT` the same vector describes the pair `F = sum a_n T_n` and
/// `f = w sum a_n U_{n-1}`; for `SecondKindU` it is `sum a_n U_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebCoeffs {
    pub basis: Basis,
    pub coeffs: Vec<f64>,
}

impl ChebCoeffs {
    pub fn new(basis: Basis, coeffs: Vec<f64>) -> Self {
        Self { basis, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

fn check_unit(x: f64) -> Result<()> {
    if x.abs() <= 1.0 {
        Ok(())
    } else {
        Err(FhtError::Domain { x })
    }
}

/// `T_n(x)` or `U_n(x)` by the three-term recurrence.
pub fn cheb_eval(basis: Basis, n: usize, x: f64) -> Result<f64> {
    check_unit(x)?;
    let (mut prev, mut cur) = match basis {
        Basis::FirstKindT => (1.0, x),
        Basis::SecondKindU => (1.0, 2.0 * x),
    };
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `w(t) = sqrt(1 - t^2)`.
pub fn weight(t: f64) -> Result<f64> {
    check_unit(t)?;
    Ok(((1.0 - t) * (1.0 + t)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `<f, g>_d = (1/pi) int f g / w`
    Ld2,
    /// `<f, g>_m = (1/pi) int f g w`
    Lm2,
}

/// Quadrature weights (already divided by pi) realizing `space` on `grid`.
///
/// * `Ld2` on S-nodes: first-kind Gauss-Chebyshev, `1/N`.
/// * `Ld2` on T-nodes: the DST-I isometry rule, `1/N` for `m >= 1`; node
///   `t_0 = 1` carries no weight.
/// * `Lm2` on U-nodes: second-kind Gauss-Chebyshev, `sin^2(j pi/(N+1))/(N+1)`.
/// * `Lm2` on S-nodes: first-kind rule applied to `f g w^2`.
/// * `Lm2` on T-nodes: trapezoid in `theta`, `sin^2(m pi / N) / N`.
pub fn quadrature_weights(grid: &Grid, space: Space) -> Result<Vec<f64>> {
    let n = grid.n();
    let inv_n = 1.0 / n as f64;
    let weights = match (space, grid.kind()) {
        (Space::Ld2, GridKind::SNodes) => vec![inv_n; n],
        (Space::Ld2, GridKind::TNodes) => {
            let mut w = vec![inv_n; n];
            w[0] = 0.0;
            w
        }
        (Space::Ld2, GridKind::UNodes) => {
            return Err(FhtError::GridMismatch {
                expected: GridKind::SNodes,
                found: GridKind::UNodes,
            })
        }
        (Space::Lm2, GridKind::UNodes) => {
            let scale = 1.0 / (n + 1) as f64;
            (0..n).map(|j| scale * grid.weight_at(j).powi(2)).collect()
        }
        (Space::Lm2, GridKind::SNodes | GridKind::TNodes) => {
            (0..n).map(|m| inv_n * grid.weight_at(m).powi(2)).collect()
        }
    };
    Ok(weights)
}

pub fn inner_product(f: &GridFn, g: &GridFn, space: Space) -> Result<f64> {
    if f.grid().kind() != g.grid().kind() {
        return Err(FhtError::GridMismatch {
            expected: f.grid().kind(),
            found: g.grid().kind(),
        });
    }
    if f.grid().n() != g.grid().n() {
        return Err(FhtError::LengthMismatch {
            expected: f.grid().n(),
            found: g.grid().n(),
        });
    }
    let weights = quadrature_weights(f.grid(), space)?;
    Ok(weights
        .iter()
        .zip(f.values().iter().zip(g.values()))
        .map(|(w, (a, b))| w * a * b)
        .sum())
}

pub fn norm(f: &GridFn, space: Space) -> Result<f64> {
    Ok(inner_product(f, f, space)?.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResampleMode {
    /// `sum a_n T_n(x)`
    TSeries,
    /// `w(x) sum a_n U_{n-1}(x)`, with `U_{-1} = 0`
    WUSeries,
    /// `sum a_n U_n(x)`
    USeries,
}

/// Evaluates a Chebyshev series at arbitrary points by the recurrences
/// `T_{n+1} = 2x T_n - T_{n-1}` and `U_{n+1} = 2x U_n - U_{n-1}`.
pub fn resample(coeffs: &ChebCoeffs, targets: &[f64], mode: ResampleMode) -> Result<Vec<f64>> {
    targets
        .iter()
        .map(|&x| {
            check_unit(x)?;
            Ok(match mode {
                ResampleMode::TSeries => sum_series(&coeffs.coeffs, x, 1.0, x),
                ResampleMode::USeries => sum_series(&coeffs.coeffs, x, 1.0, 2.0 * x),
                ResampleMode::WUSeries => {
                    // a_0 multiplies U_{-1} = 0
                    let tail = coeffs.coeffs.get(1..).unwrap_or(&[]);
                    weight(x)? * sum_series(tail, x, 1.0, 2.0 * x)
                }
            })
        })
        .collect()
}

/// `sum c_k P_k(x)` for a three-term family seeded with `P_0 = p0`, `P_1 = p1`.
fn sum_series(c: &[f64], x: f64, p0: f64, p1: f64) -> f64 {
    let (mut prev, mut cur) = (p0, p1);
    let mut acc = 0.0;
    for (k, &ck) in c.iter().enumerate() {
        match k {
            0 => acc += ck * p0,
            1 => acc += ck * p1,
            _ => {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
                acc += ck * cur;
            }
        }
    }
    acc
}

/// Evenly spaced display points `x_k = (2k + 1 - N) / N`.
pub fn display_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (2.0 * k as f64 + 1.0 - n as f64) / n as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn s_nodes_n4() {
        let g = cgl_nodes(GridKind::SNodes, 4).unwrap();
        let want = [0.923880, 0.382683, -0.382683, -0.923880];
        for (a, b) in g.nodes().iter().zip(want) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-6);
        }
        assert!(g.nodes().windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn t_nodes_n4() {
        let g = cgl_nodes(GridKind::TNodes, 4).unwrap();
        assert_eq!(g.nodes()[0], 1.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [1.0, h, 0.0, -h];
        for (a, b) in g.nodes().iter().zip(want) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-6);
        }
    }

    #[test]
    fn u_nodes_n3() {
        let g = cgl_nodes(GridKind::UNodes, 3).unwrap();
        let want = [(PI / 4.0).cos(), (PI / 2.0).cos(), (3.0 * PI / 4.0).cos()];
        for (a, b) in g.nodes().iter().zip(want) {
            assert_eq!(*a, b);
        }
    }

    #[test]
    fn nodes_match_closed_form_bitwise() {
        for n in [2, 7, 64, 511, 4096] {
            let s = cgl_nodes(GridKind::SNodes, n).unwrap();
            let t = cgl_nodes(GridKind::TNodes, n).unwrap();
            let u = cgl_nodes(GridKind::UNodes, n).unwrap();
            for m in 0..n {
                assert_eq!(s.nodes()[m], ((m as f64 + 0.5) * PI / n as f64).cos());
                assert_eq!(t.nodes()[m], (m as f64 * PI / n as f64).cos());
                assert_eq!(u.nodes()[m], ((m + 1) as f64 * PI / (n + 1) as f64).cos());
            }
        }
    }

    #[test]
    fn too_small_grid() {
        assert_eq!(
            cgl_nodes(GridKind::SNodes, 1),
            Err(FhtError::InvalidSize { n: 1, min: 2 })
        );
    }

    #[test]
    fn cheb_eval_examples() {
        assert_abs_diff_eq!(
            cheb_eval(Basis::FirstKindT, 2, 0.5).unwrap(),
            -0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            cheb_eval(Basis::SecondKindU, 1, 0.5).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            cheb_eval(Basis::FirstKindT, 3, 0.9).unwrap(),
            0.216,
            epsilon = 1e-14
        );
        assert!(matches!(
            cheb_eval(Basis::FirstKindT, 2, 1.5),
            Err(FhtError::Domain { .. })
        ));
    }

    #[test]
    fn cheb_eval_trig_identities() {
        for theta in [0.1_f64, 0.7, 2.5] {
            for n in 0..=64 {
                let t = cheb_eval(Basis::FirstKindT, n, theta.cos()).unwrap();
                assert_abs_diff_eq!(t, (n as f64 * theta).cos(), epsilon = 1e-12);
                let u = cheb_eval(Basis::SecondKindU, n, theta.cos()).unwrap();
                assert_abs_diff_eq!(
                    u * theta.sin(),
                    ((n + 1) as f64 * theta).sin(),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(0.0).unwrap(), 1.0);
        assert_eq!(weight(1.0).unwrap(), 0.0);
        assert_eq!(weight(-1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(weight(0.6).unwrap(), 0.8, epsilon = 1e-15);
        assert!(weight(-1.01).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let s = cgl_nodes(GridKind::SNodes, 8).unwrap();
        let one = GridFn::sample(&s, Role::Plain, |_| 1.0);
        assert_abs_diff_eq!(
            inner_product(&one, &one, Space::Ld2).unwrap(),
            1.0,
            epsilon = 1e-15
        );

        let t1 = GridFn::sample(&s, Role::Plain, |x| x);
        let t2 = GridFn::sample(&s, Role::Plain, |x| 2.0 * x * x - 1.0);
        assert_abs_diff_eq!(
            inner_product(&t1, &t2, Space::Ld2).unwrap(),
            0.0,
            epsilon = 1e-14
        );

        let u = cgl_nodes(GridKind::UNodes, 5).unwrap();
        let u0 = GridFn::sample(&u, Role::Plain, |_| 1.0);
        assert_abs_diff_eq!(
            inner_product(&u0, &u0, Space::Lm2).unwrap(),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn inner_product_grid_mismatch() {
        let s = cgl_nodes(GridKind::SNodes, 8).unwrap();
        let u = cgl_nodes(GridKind::UNodes, 8).unwrap();
        let a = GridFn::zeros(&s, Role::Plain);
        let b = GridFn::zeros(&u, Role::Plain);
        assert!(matches!(
            inner_product(&a, &b, Space::Ld2),
            Err(FhtError::GridMismatch { .. })
        ));
        assert!(matches!(
            inner_product(&b, &b, Space::Ld2),
            Err(FhtError::GridMismatch { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        let s = cgl_nodes(GridKind::SNodes, 16).unwrap();
        let one = GridFn::sample(&s, Role::Plain, |_| 1.0);
        assert_abs_diff_eq!(norm(&one, Space::Ld2).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(
            norm(&GridFn::zeros(&s, Role::Plain), Space::Ld2).unwrap(),
            0.0
        );

        // 1/w is not polynomial: the second-kind rule gives N/(N+1) for ||1/w||^2.
        for n in [4, 64, 4096] {
            let u = cgl_nodes(GridKind::UNodes, n).unwrap();
            let inv_w = GridFn::sample(&u, Role::Plain, |x| 1.0 / weight(x).unwrap());
            let sq = norm(&inv_w, Space::Lm2).unwrap().powi(2);
            assert_abs_diff_eq!(sq, n as f64 / (n + 1) as f64, epsilon = 1e-13);
        }
        // On S-nodes, where 1/w * w is polynomial, the value is exact.
        let inv_w = GridFn::sample(&s, Role::Plain, |x| 1.0 / weight(x).unwrap());
        assert_abs_diff_eq!(norm(&inv_w, Space::Lm2).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn gauss_chebyshev_exactness() {
        let n = 12;
        let s = cgl_nodes(GridKind::SNodes, n).unwrap();
        let u = cgl_nodes(GridKind::UNodes, n).unwrap();
        let t_fn = |k: usize| {
            GridFn::sample(&s, Role::Plain, move |x| {
                cheb_eval(Basis::FirstKindT, k, x).unwrap()
            })
        };
        let u_fn = |k: usize| {
            GridFn::sample(&u, Role::Plain, move |x| {
                cheb_eval(Basis::SecondKindU, k, x).unwrap()
            })
        };
        for i in 0..2 * n {
            for j in 0..2 * n {
                if i + j > 2 * n - 1 {
                    continue;
                }
                let want_t = match (i, j) {
                    (0, 0) => 1.0,
                    _ if i == j => 0.5,
                    _ => 0.0,
                };
                let got = inner_product(&t_fn(i), &t_fn(j), Space::Ld2).unwrap();
                assert_abs_diff_eq!(got, want_t, epsilon = 1e-13);
                let want_u = if i == j { 0.5 } else { 0.0 };
                let got = inner_product(&u_fn(i), &u_fn(j), Space::Lm2).unwrap();
                assert_abs_diff_eq!(got, want_u, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn resample_examples() {
        let a = ChebCoeffs::new(Basis::FirstKindT, vec![0.0, 1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(
            resample(&a, &[0.3], ResampleMode::TSeries).unwrap()[0],
            0.3,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            resample(&a, &[0.6], ResampleMode::WUSeries).unwrap()[0],
            0.8,
            epsilon = 1e-15
        );
        let b = ChebCoeffs::new(Basis::FirstKindT, vec![0.0, 0.0, 1.0, 0.0]);
        assert_abs_diff_eq!(
            resample(&b, &[0.5], ResampleMode::WUSeries).unwrap()[0],
            0.866025,
            epsilon = 1e-6
        );
        assert!(resample(&b, &[1.2], ResampleMode::TSeries).is_err());
    }

    #[test]
    fn display_grid_is_symmetric() {
        let g = display_grid(4);
        assert_eq!(g, vec![-0.75, -0.25, 0.25, 0.75]);
    }
}
