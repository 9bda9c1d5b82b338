//! Finite Hilbert transform on `[-1, 1]` by Chebyshev collocation, and the
//! cosh-weighted variant that appears in SPECT reconstruction.
//!
//! ```
//! use fht_core::{Grid, GridFn, GridKind, Role, Spectral};
//!
//! let sp = Spectral::new(16).unwrap();
//! // f = sqrt(1 - t^2) transforms to F = s
//! let f = GridFn::sample(sp.t_grid(), Role::Plain, |t| (1.0 - t * t).sqrt());
//! let big = sp.forward_d(&f).unwrap();
//! for (s, v) in sp.s_grid().nodes().iter().zip(big.values()) {
//!     assert!((s - v).abs() < 1e-13);
//! }
//! # let _ = Grid::new(GridKind::SNodes, 4);
//! ```

pub mod cheb;
pub mod cosh;
pub mod error;
pub mod fht;
pub mod oracle;
pub mod param;
pub mod transforms;

pub use cheb::{Basis, ChebCoeffs, Grid, GridFn, GridKind, ResampleMode, Role, Space};
pub use cosh::{CoshOperator, KernelKind, SolveReport, SolveStatus};
pub use error::{FhtError, Result};
pub use fht::{SpaceTag, Spectral};
pub use oracle::{AnalyticPair, PvOracle, QuadRule};
pub use param::WeightParam;
pub use transforms::{TransformKind, TransformMatrix};
