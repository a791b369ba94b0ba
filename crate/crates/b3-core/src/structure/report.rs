use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct Grid {
    pub per_axis: usize,
    pub fd_fraction: f64,
}

/// How the reported residual compares against its tolerance for a pass.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub enum Comparison {
    /// Pass when residual < tolerance (error-like quantities).
    Below,
    /// Pass when residual > tolerance (lower-bounded quantities such as the
    /// nondegeneracy value or the minimal pairing magnitude).
    Above,
}

/// Per-check verdict with the worst sampled point. Residuals are
/// dimensionless, normalized by the field magnitude where applicable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub worst_point: [f64; 3],
    pub grid: Grid,
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn below(
        name: impl Into<String>,
        worst_residual: f64,
        tolerance: f64,
        worst_point: [f64; 3],
        grid: Grid,
    ) -> Self {
        CheckReport {
            name: name.into(),
            pass: worst_residual < tolerance,
            worst_residual,
            tolerance,
            comparison: Comparison::Below,
            worst_point,
            grid,
            detail: None,
        }
    }

    pub fn above(
        name: impl Into<String>,
        worst_residual: f64,
        tolerance: f64,
        worst_point: [f64; 3],
        grid: Grid,
    ) -> Self {
        CheckReport {
            name: name.into(),
            pass: worst_residual > tolerance,
            worst_residual,
            tolerance,
            comparison: Comparison::Above,
            worst_point,
            grid,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>, grid: Grid) -> Self {
        CheckReport {
            name: name.into(),
            pass: false,
            worst_residual: f64::INFINITY,
            tolerance: 0.0,
            comparison: Comparison::Below,
            worst_point: [f64::NAN; 3],
            grid,
            detail: Some(detail.into()),
        }
    }
}
