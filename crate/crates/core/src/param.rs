use std::f64::consts::FRAC_PI_4;

use crate::error::{FhtError, Result};

/// Weight of the kernel `k(mu (s - t)) / (s - t)`.
///
/// `CoshReal` is the SPECT kernel `cosh(mu (s - t))`; `CosImaginary` is the
/// same kernel at `mu = i eta`, i.e. `cos(eta (s - t))`. Both split as
/// `k(s - t) = k(s) k(t) + coupling * k(s) k(t) slope(s) slope(t)` with
/// `slope = tanh` (coupling -1) or `slope = tan` (coupling +1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightParam {
    CoshReal { mu: f64 },
    CosImaginary { eta: f64 },
}

impl WeightParam {
    pub fn cosh(mu: f64) -> Result<Self> {
        let p = Self::CoshReal { mu };
        p.validate()?;
        Ok(p)
    }

    pub fn cos(eta: f64) -> Result<Self> {
        let p = Self::CosImaginary { eta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::CoshReal { mu } => {
                if !mu.is_finite() {
                    return Err(FhtError::InvalidParameter(format!(
                        "mu = {mu} is not finite"
                    )));
                }
                if mu.abs().tanh() >= 1.0 {
                    return Err(FhtError::InvalidParameter(format!(
                        "mu = {mu}: tanh(|mu|) rounds to 1, no contraction"
                    )));
                }
            }
            Self::CosImaginary { eta } => {
                if !eta.is_finite() || eta.abs() >= FRAC_PI_4 {
                    return Err(FhtError::InvalidParameter(format!(
                        "eta = {eta}: |eta| must be below pi/4"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `cosh(mu x)` or `cos(eta x)`.
    pub fn scale(&self, x: f64) -> f64 {
        match *self {
            Self::CoshReal { mu } => (mu * x).cosh(),
            Self::CosImaginary { eta } => (eta * x).cos(),
        }
    }

    /// `tanh(mu x)` or `tan(eta x)`.
    pub fn slope(&self, x: f64) -> f64 {
        match *self {
            Self::CoshReal { mu } => (mu * x).tanh(),
            Self::CosImaginary { eta } => (eta * x).tan(),
        }
    }

    /// Sign in front of the `slope(s) slope(t)` term of the kernel split.
    pub fn coupling(&self) -> f64 {
        match self {
            Self::CoshReal { .. } => -1.0,
            Self::CosImaginary { .. } => 1.0,
        }
    }

    /// `tanh^2(|mu|)` or `tan^2(|eta|)`.
    pub fn contraction(&self) -> f64 {
        self.slope_bound().powi(2)
    }

    /// `sup_{|x| <= 1} |slope(x)|`.
    pub fn slope_bound(&self) -> f64 {
        match *self {
            Self::CoshReal { mu } => mu.abs().tanh(),
            Self::CosImaginary { eta } => eta.abs().tan(),
        }
    }

    /// Lower bound `1 - contraction` of the coercive estimate.
    pub fn coercive_const(&self) -> f64 {
        1.0 - self.contraction()
    }

    /// Upper bound `(1 + c) / (1 - c)` on the condition number of the
    /// discrete system.
    pub fn condition_bound(&self) -> f64 {
        let c = self.contraction();
        (1.0 + c) / (1.0 - c)
    }

    pub fn value(&self) -> f64 {
        match *self {
            Self::CoshReal { mu } => mu,
            Self::CosImaginary { eta } => eta,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value() == 0.0
    }

    /// The kernel weight `cosh(mu d)` or `cos(eta d)` at offset `d = s - t`.
    pub fn kernel_weight(&self, d: f64) -> f64 {
        self.scale(d)
    }
}
