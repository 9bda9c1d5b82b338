use serde::Serialize;

use fht_core::SolveReport;

/// Flat JSON run summary.
#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub n: usize,
    pub mu_or_eta: Option<f64>,
    pub iterations: Option<usize>,
    pub residual_history: Vec<f64>,
    pub measured_ratio: Option<f64>,
    pub bound_ratio: Option<f64>,
    pub coercive_const: Option<f64>,
    pub max_error: Option<f64>,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(command: &str, n: usize) -> Self {
        Self {
            command: command.to_string(),
            n,
            ..Self::default()
        }
    }

    pub fn with_solve(mut self, r: &SolveReport) -> Self {
        self.iterations = Some(r.iterations);
        self.residual_history = r.residual_history.clone();
        self.measured_ratio = Some(r.measured_ratio);
        self.bound_ratio = Some(r.bound_ratio);
        self.coercive_const = Some(r.coercive_const);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}
