//! Brute-force principal-value quadrature and closed-form transform pairs.
//!
//! Nothing here touches the spectral machinery: the oracle evaluates
//!
//! ```text
//! (1/pi) PV int_{-1}^{1} f(t) / (s - t) dt
//!   = (1/pi) [ int (f(t) - f(s)) / (s - t) dt + f(s) ln((1 + s) / (1 - s)) ]
//! ```
//!
//! with the regular integral done by a composite midpoint rule, either in `t`
//! or in `theta` after `t = cos(theta)`. The second rule absorbs square-root
//! endpoint behaviour such as `f = w g`.

use std::f64::consts::PI;

use crate::error::{FhtError, Result};
use crate::param::WeightParam;

pub const MIN_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    /// Composite midpoint in `t`.
    Midpoint,
    /// Composite midpoint in `theta`, `t = cos(theta)`.
    CosineMidpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvValue {
    pub value: f64,
    /// `s` sits within one panel of a declared kink of `f`.
    pub near_kink: bool,
}

/// Quadrature settings for the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct PvOracle {
    pub m_points: usize,
    pub rule: QuadRule,
    pub kinks: Vec<f64>,
}

impl PvOracle {
    pub fn new(m_points: usize) -> Self {
        Self {
            m_points,
            rule: QuadRule::Midpoint,
            kinks: Vec::new(),
        }
    }

    pub fn with_rule(mut self, rule: QuadRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_kinks(mut self, kinks: &[f64]) -> Self {
        self.kinks = kinks.to_vec();
        self
    }

    fn check(&self, s: f64) -> Result<()> {
        if self.m_points < MIN_POINTS {
            return Err(FhtError::InvalidSize {
                n: self.m_points,
                min: MIN_POINTS,
            });
        }
        if !(s.abs() < 1.0) {
            return Err(FhtError::Domain { x: s });
        }
        Ok(())
    }

    fn near_kink(&self, s: f64) -> bool {
        let h = 2.0 / self.m_points as f64;
        self.kinks.iter().any(|k| (s - k).abs() <= h)
    }

    /// `int_{-1}^{1} g(t) dt` by the configured rule.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        let m = self.m_points;
        match self.rule {
            QuadRule::Midpoint => {
                let h = 2.0 / m as f64;
                (0..m).map(|i| g(-1.0 + h * (i as f64 + 0.5))).sum::<f64>() * h
            }
            QuadRule::CosineMidpoint => {
                let h = PI / m as f64;
                (0..m)
                    .map(|i| {
                        let th = h * (i as f64 + 0.5);
                        g(th.cos()) * th.sin()
                    })
                    .sum::<f64>()
                    * h
            }
        }
    }

    /// The finite Hilbert transform of `f` at `s`.
    pub fn fht(&self, f: &dyn Fn(f64) -> f64, s: f64) -> Result<PvValue> {
        self.check(s)?;
        let fs = f(s);
        let regular = self.integrate(|t| {
            let d = s - t;
            if d == 0.0 {
                0.0
            } else {
                (f(t) - fs) / d
            }
        });
        let log_part = fs * ((1.0 + s) / (1.0 - s)).ln();
        Ok(PvValue {
            value: (regular + log_part) / PI,
            near_kink: self.near_kink(s),
        })
    }

    /// The weighted transform `(1/pi) PV int k(s - t) f(t) / (s - t) dt`, split
    /// as the plain transform plus the regular `(k(s - t) - 1) / (s - t)` part.
    pub fn weighted_fht(&self, f: &dyn Fn(f64) -> f64, s: f64, p: &WeightParam) -> Result<PvValue> {
        let plain = self.fht(f, s)?;
        if p.is_zero() {
            return Ok(plain);
        }
        let extra = self.integrate(|t| {
            let d = s - t;
            if d == 0.0 {
                0.0
            } else {
                (p.kernel_weight(d) - 1.0) / d * f(t)
            }
        });
        Ok(PvValue {
            value: plain.value + extra / PI,
            near_kink: plain.near_kink,
        })
    }

    /// Transform of `g(t) / w(t)`, computed entirely in `theta`:
    /// `(1/pi) PV int_0^pi g(cos th) / (s - cos th) d th`. The pole at
    /// `th0 = acos(s)` is removed by subtracting `g(s) / (sin th0 (th0 - th))`
    /// and adding its closed-form principal value.
    pub fn fht_over_weight(&self, g: &dyn Fn(f64) -> f64, s: f64) -> Result<PvValue> {
        self.check(s)?;
        let m = self.m_points;
        let th0 = s.acos();
        let sin0 = th0.sin();
        let gs = g(s);
        let h = PI / m as f64;
        let regular: f64 = (0..m)
            .map(|i| {
                let th = h * (i as f64 + 0.5);
                let d = s - th.cos();
                if d == 0.0 || th == th0 {
                    0.0
                } else {
                    g(th.cos()) / d - gs / (sin0 * (th - th0))
                }
            })
            .sum::<f64>()
            * h;
        // PV int_0^pi d th / (th - th0) = ln((pi - th0) / th0)
        let log_part = gs / sin0 * ((PI - th0) / th0).ln();
        Ok(PvValue {
            value: (regular + log_part) / PI,
            near_kink: self.near_kink(s),
        })
    }
}

/// Midpoint-rule transform of `f` at `s`.
pub fn pv_fht(f: &dyn Fn(f64) -> f64, s: f64, m_points: usize) -> Result<PvValue> {
    PvOracle::new(m_points).fht(f, s)
}

/// Midpoint-rule cosh- or cos-weighted transform of `f` at `s`.
pub fn cosh_pv_forward(
    f: &dyn Fn(f64) -> f64,
    s: f64,
    p: &WeightParam,
    m_points: usize,
) -> Result<PvValue> {
    PvOracle::new(m_points).weighted_fht(f, s, p)
}

/// A function with a closed-form finite Hilbert transform.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticPair {
    pub name: &'static str,
    pub f: fn(f64) -> f64,
    pub big_f: fn(f64) -> f64,
    pub kinks: &'static [f64],
    pub smoothness_notes: &'static str,
}

fn unit_circle_f(t: f64) -> f64 {
    if t.abs() <= 1.0 {
        ((1.0 - t) * (1.0 + t)).sqrt()
    } else {
        0.0
    }
}

fn unit_circle_big_f(s: f64) -> f64 {
    if s.abs() <= 1.0 {
        s
    } else {
        s - s.signum() * (s * s - 1.0).sqrt()
    }
}

fn shifted_f(t: f64) -> f64 {
    if (-0.9..=0.7).contains(&t) {
        let x = t + 0.1;
        (0.64 - x * x).max(0.0).sqrt()
    } else {
        0.0
    }
}

fn shifted_big_f(s: f64) -> f64 {
    let x = s + 0.1;
    if (-0.9..=0.7).contains(&s) {
        x
    } else {
        x - x.signum() * (x * x - 0.64).sqrt()
    }
}

pub fn pair(name: &str) -> Result<AnalyticPair> {
    match name {
        "unit_circle" => Ok(AnalyticPair {
            name: "unit_circle",
            f: unit_circle_f,
            big_f: unit_circle_big_f,
            kinks: &[-1.0, 1.0],
            smoothness_notes: "square-root behaviour at t = -1 and t = 1",
        }),
        "shifted" => Ok(AnalyticPair {
            name: "shifted",
            f: shifted_f,
            big_f: shifted_big_f,
            kinks: &[-0.9, 0.7],
            smoothness_notes: "f and F are continuous but not differentiable at -0.9 and 0.7",
        }),
        other => Err(FhtError::UnknownPair(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn w(t: f64) -> f64 {
        ((1.0 - t) * (1.0 + t)).max(0.0).sqrt()
    }

    #[test]
    fn unit_circle_at_half() {
        let v = pv_fht(&w, 0.5, 4096).unwrap();
        assert_abs_diff_eq!(v.value, 0.5, epsilon = 1e-6);
    }

    #[test]
    fn constant_function() {
        let one = |_: f64| 1.0;
        assert_abs_diff_eq!(
            pv_fht(&one, 0.5, 64).unwrap().value,
            3.0_f64.ln() / PI,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(pv_fht(&one, 0.0, 64).unwrap().value, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let one = |_: f64| 1.0;
        assert!(matches!(
            pv_fht(&one, 1.0, 128),
            Err(FhtError::Domain { .. })
        ));
        assert!(matches!(
            pv_fht(&one, 0.0, 16),
            Err(FhtError::InvalidSize { .. })
        ));
    }

    #[test]
    fn kink_warning() {
        let p = pair("shifted").unwrap();
        let o = PvOracle::new(1024).with_kinks(p.kinks);
        assert!(o.fht(&p.f, 0.7).unwrap().near_kink);
        assert!(!o.fht(&p.f, 0.3).unwrap().near_kink);
    }

    #[test]
    fn zero_weight_equals_plain() {
        let p = WeightParam::cosh(0.0).unwrap();
        let a = cosh_pv_forward(&w, 0.3, &p, 512).unwrap();
        let b = pv_fht(&w, 0.3, 512).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn pair_examples() {
        let p = pair("shifted").unwrap();
        assert_abs_diff_eq!((p.big_f)(0.0), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!((p.big_f)(0.9), 0.4, epsilon = 1e-14);
        assert_eq!((p.f)(-0.9), 0.0);
        assert_abs_diff_eq!((p.f)(0.7), 0.0, epsilon = 1e-7);
        let u = pair("unit_circle").unwrap();
        assert_eq!((u.big_f)(0.25), 0.25);
        assert!(matches!(pair("nope"), Err(FhtError::UnknownPair(_))));
    }

    #[test]
    fn shifted_pair_self_consistency() {
        let p = pair("shifted").unwrap();
        for s in [-0.5, 0.0, 0.3, 0.85] {
            let v = pv_fht(&p.f, s, 8192).unwrap();
            assert!(!v.near_kink);
            assert_abs_diff_eq!(v.value, (p.big_f)(s), epsilon = 1e-5);
        }
    }

    #[test]
    fn richardson_convergence_smooth() {
        // F[t^3](s) = (1/pi) [s^3 ln((1+s)/(1-s)) - 2/3 - 2 s^2]
        let cube = |t: f64| t * t * t;
        for s in [-0.6_f64, 0.1, 0.45] {
            let exact = (s * s * s * ((1.0 + s) / (1.0 - s)).ln() - 2.0 / 3.0 - 2.0 * s * s) / PI;
            let mut prev = f64::INFINITY;
            for m in [64, 128, 256, 512] {
                let err = (pv_fht(&cube, s, m).unwrap().value - exact).abs();
                if prev.is_finite() {
                    assert!(prev / err >= 3.0, "s={s} m={m} ratio {}", prev / err);
                }
                prev = err;
            }
        }
    }

    #[test]
    fn inverse_weight_has_zero_transform() {
        let o = PvOracle::new(4096);
        for s in [0.2, 0.6] {
            assert!(o.fht_over_weight(&|_| 1.0, s).unwrap().value.abs() < 1e-4);
        }
    }

    #[test]
    fn t1_over_weight_maps_to_minus_one() {
        let o = PvOracle::new(4096);
        for s in [-0.7, 0.1, 0.55] {
            assert_abs_diff_eq!(
                o.fht_over_weight(&|t| t, s).unwrap().value,
                -1.0,
                epsilon = 1e-5
            );
        }
    }

    #[test]
    fn cosine_rule_beats_midpoint_near_endpoint() {
        let s = 0.998;
        let exact = s;
        let mid = pv_fht(&w, s, 8192).unwrap().value;
        let cos = PvOracle::new(8192)
            .with_rule(QuadRule::CosineMidpoint)
            .fht(&w, s)
            .unwrap()
            .value;
        assert!((cos - exact).abs() < (mid - exact).abs());
        assert_abs_diff_eq!(cos, exact, epsilon = 1e-6);
    }
}
