//! Dense trigonometric transform matrices on the collocation grids.
//!
//! `C3` is the orthogonal DCT-III mapping Chebyshev coefficients to S-node
//! samples, `S1` the DST-I mapping coefficients of the sine series to T-node
//! samples. Row and column 0 of `S1` vanish, so `S1^T S1 = diag(0, 1, .., 1)`.
//! The two `M*` kinds are the analysis matrices of the multiplication-weight
//! flavor and are not orthogonal.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{FhtError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// `sqrt(2/N) * (1/sqrt 2 | cos((m + 1/2) n pi / N))`, rows on S-nodes.
    C3,
    /// `sqrt(2/N) * sin(m n pi / N)`, rows on T-nodes.
    S1,
    /// `(2/N) cos((n + 1)(m + 1/2) pi / N)`: coefficients of `T_{n+1}` from
    /// S-node samples.
    MAnalysisCos,
    /// `(2/(N+1)) sin((n + 1) j pi/(N+1)) sin(j pi/(N+1))`: coefficients of
    /// `U_n` from U-node samples.
    MSynthesisSin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    kind: TransformKind,
    entries: DMatrix<f64>,
}

impl TransformMatrix {
    pub fn build(kind: TransformKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(FhtError::InvalidSize { n, min: 2 });
        }
        let nf = n as f64;
        let entries = match kind {
            TransformKind::C3 => {
                let scale = (2.0 / nf).sqrt();
                let first = (1.0 / nf).sqrt();
                DMatrix::from_fn(n, n, |m, k| {
                    if k == 0 {
                        first
                    } else {
                        scale * ((m as f64 + 0.5) * k as f64 * PI / nf).cos()
                    }
                })
            }
            TransformKind::S1 => {
                let scale = (2.0 / nf).sqrt();
                DMatrix::from_fn(n, n, |m, k| scale * ((m * k) as f64 * PI / nf).sin())
            }
            TransformKind::MAnalysisCos => DMatrix::from_fn(n, n, |k, m| {
                2.0 / nf * ((k + 1) as f64 * (m as f64 + 0.5) * PI / nf).cos()
            }),
            TransformKind::MSynthesisSin => {
                let np1 = (n + 1) as f64;
                DMatrix::from_fn(n, n, |k, col| {
                    let j = (col + 1) as f64;
                    2.0 / np1 * ((k + 1) as f64 * j * PI / np1).sin() * (j * PI / np1).sin()
                })
            }
        };
        Ok(Self { kind, entries })
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn apply(&self, v: &[f64], transposed: bool) -> Result<Vec<f64>> {
        if v.len() != self.n() {
            return Err(FhtError::LengthMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        let x = DVector::from_column_slice(v);
        let y = if transposed {
            self.entries.tr_mul(&x)
        } else {
            &self.entries * x
        };
        Ok(y.as_slice().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0_f64, |a, b| a.max(b.abs()))
    }

    #[test]
    fn c3_n2() {
        let c = TransformMatrix::build(TransformKind::C3, 2).unwrap();
        let h = 0.5_f64.sqrt();
        let want = [[h, h], [h, -h]];
        for (m, row) in want.iter().enumerate() {
            for (k, w) in row.iter().enumerate() {
                assert_abs_diff_eq!(c.entries()[(m, k)], *w, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn s1_small() {
        let s = TransformMatrix::build(TransformKind::S1, 2).unwrap();
        assert_abs_diff_eq!(s.entries()[(0, 0)], 0.0);
        assert_abs_diff_eq!(s.entries()[(0, 1)], 0.0);
        assert_abs_diff_eq!(s.entries()[(1, 0)], 0.0);
        assert_abs_diff_eq!(s.entries()[(1, 1)], 1.0, epsilon = 1e-15);

        let s = TransformMatrix::build(TransformKind::S1, 4).unwrap();
        let want = [0.0, 0.5, 0.5_f64.sqrt(), 0.5];
        for (k, w) in want.iter().enumerate() {
            assert_abs_diff_eq!(s.entries()[(1, k)], *w, epsilon = 1e-15);
        }
    }

    #[test]
    fn invalid_size() {
        assert!(matches!(
            TransformMatrix::build(TransformKind::C3, 1),
            Err(FhtError::InvalidSize { .. })
        ));
    }

    #[test]
    fn orthogonality_residuals() {
        for n in [8, 64, 256] {
            let c = TransformMatrix::build(TransformKind::C3, n).unwrap();
            let ctc = c.entries().tr_mul(c.entries());
            assert!(max_abs(&(ctc - DMatrix::identity(n, n))) < 1e-12);

            let s = TransformMatrix::build(TransformKind::S1, n).unwrap();
            let sts = s.entries().tr_mul(s.entries());
            let mut target = DMatrix::identity(n, n);
            target[(0, 0)] = 0.0;
            assert!(max_abs(&(sts - target)) < 1e-12);
        }
    }

    #[test]
    fn apply_examples() {
        let n = 16;
        let c = TransformMatrix::build(TransformKind::C3, n).unwrap();
        let mut e0 = vec![0.0; n];
        e0[0] = 1.0;
        for v in c.apply(&e0, false).unwrap() {
            assert_abs_diff_eq!(v, (1.0 / n as f64).sqrt(), epsilon = 1e-15);
        }

        let a: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin() + 0.2).collect();
        let back = c.apply(&c.apply(&a, false).unwrap(), true).unwrap();
        for (x, y) in a.iter().zip(&back) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }

        let s = TransformMatrix::build(TransformKind::S1, n).unwrap();
        let back = s.apply(&s.apply(&a, false).unwrap(), true).unwrap();
        assert_abs_diff_eq!(back[0], 0.0, epsilon = 1e-14);
        for (x, y) in a.iter().zip(&back).skip(1) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }

        assert!(matches!(
            s.apply(&a[..3], false),
            Err(FhtError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn m_analysis_round_trip() {
        for n in [8, 64, 256] {
            let analysis = TransformMatrix::build(TransformKind::MAnalysisCos, n).unwrap();
            // d_{N-1} multiplies T_N, which vanishes on the S-nodes.
            let d: Vec<f64> = (0..n)
                .map(|k| {
                    if k + 1 < n {
                        ((k * 7 % 11) as f64 - 5.0) / (k + 1) as f64
                    } else {
                        0.0
                    }
                })
                .collect();
            let samples: Vec<f64> = (0..n)
                .map(|m| {
                    let theta = (m as f64 + 0.5) * PI / n as f64;
                    // (sum d_k T_{k+1} / w) * w at s_m
                    d.iter()
                        .enumerate()
                        .map(|(k, dk)| dk * ((k + 1) as f64 * theta).cos())
                        .sum()
                })
                .collect();
            let got = analysis.apply(&samples, false).unwrap();
            for (x, y) in d.iter().zip(&got) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn m_synthesis_recovers_u_coefficients() {
        let n = 32;
        let analysis = TransformMatrix::build(TransformKind::MSynthesisSin, n).unwrap();
        let d: Vec<f64> = (0..n).map(|k| 1.0 / (1.0 + k as f64)).collect();
        let np1 = (n + 1) as f64;
        let samples: Vec<f64> = (1..=n)
            .map(|j| {
                let phi = j as f64 * PI / np1;
                d.iter()
                    .enumerate()
                    .map(|(k, dk)| dk * ((k + 1) as f64 * phi).sin() / phi.sin())
                    .sum()
            })
            .collect();
        let got = analysis.apply(&samples, false).unwrap();
        for (x, y) in d.iter().zip(&got) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }
}
