//! Structure checkers: purity, real index zero, type, integrability
//! witnesses (plain and twisted), normalized-closed representatives,
//! explicit degreewise 3-manifold conditions, stability and the type-change
//! locus, and chart-overlap consistency.

mod checks;
mod explicit;
mod locus;
mod report;
mod spinor_structure;
mod twist;
mod witness;

pub use checks::{
    annihilator_basis, check_pure, check_real_index_zero, check_real_index_zero_in, compute_type,
    purity_defect,
};
pub use explicit::{
    check_degreewise_conditions, check_normalized_closed, degreewise_residuals,
    normalized_closed_residual, DegreewiseResiduals,
};
pub use locus::{locus_for_field, locus_for_structure, LocusReport};
pub use report::{CheckReport, Grid};
pub use spinor_structure::{Chart, Overlap, SpinorStructure};
pub use twist::TwistData;
pub use witness::{
    integrability_witness, integrability_witness_at, solve_witness, WitnessResult,
};

use crate::tolerances as tol;

/// Resolution, steps and thresholds for a check run. Tolerances default to
/// the pinned constants in [`crate::tolerances`].
#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub grid: usize,
    pub fd_fraction: f64,
    pub richardson: bool,
    pub quad_grid: usize,
    pub tol_rank: f64,
    pub tol_type: f64,
    pub min_real_index: f64,
    pub tol_witness: f64,
    pub tol_degreewise: f64,
    pub min_degreewise_b: f64,
    pub tol_closed: f64,
    pub rho0_cutoff: f64,
    pub tol_overlap: f64,
    pub tol_glue: f64,
    pub tol_period_abs: f64,
    pub tol_f_probe: f64,
    pub min_locus_grad: f64,
    pub min_locus_area: f64,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            grid: tol::DEFAULT_GRID,
            fd_fraction: tol::FD_STEP_FRACTION,
            richardson: false,
            quad_grid: tol::QUAD_GRID,
            tol_rank: tol::RANK_REL_CUTOFF,
            tol_type: tol::TYPE_REL_CUTOFF,
            min_real_index: tol::REAL_INDEX_MIN,
            tol_witness: tol::WITNESS_RESIDUAL,
            tol_degreewise: tol::DEGREEWISE_RESIDUAL,
            min_degreewise_b: tol::DEGREEWISE_B_MIN,
            tol_closed: tol::NORMALIZED_CLOSED_RESIDUAL,
            rho0_cutoff: tol::RHO0_CUTOFF,
            tol_overlap: tol::OVERLAP_RESIDUAL,
            tol_glue: tol::GLUE_RESIDUAL,
            tol_period_abs: tol::PERIOD_ABS,
            tol_f_probe: tol::F_PROBE_ABS,
            min_locus_grad: tol::LOCUS_GRAD_MIN,
            min_locus_area: tol::LOCUS_AREA_MIN,
            seed: 0xB3,
        }
    }
}

impl CheckConfig {
    pub fn with_grid(mut self, n: usize) -> Self {
        self.grid = n;
        self
    }

    pub fn fd_options(&self, domain: &crate::calculus::ChartDomain) -> crate::calculus::FdOptions {
        crate::calculus::FdOptions::relative(domain, self.fd_fraction)
            .with_richardson(self.richardson)
    }
}

/// Deterministic parallel maximum of a pointwise residual over a grid:
/// ties break toward the lower flat index, so reports do not depend on the
/// scheduling of worker threads.
pub(crate) fn sweep_max<F>(points: &[[f64; 3]], residual: F) -> (f64, [f64; 3])
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    use rayon::prelude::*;
    let best = points
        .par_iter()
        .enumerate()
        .map(|(i, &p)| (residual(p), i))
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    if best.1 == usize::MAX {
        (0.0, [f64::NAN; 3])
    } else {
        (best.0, points[best.1])
    }
}

/// Deterministic parallel minimum, same tie-breaking scheme.
pub(crate) fn sweep_min<F>(points: &[[f64; 3]], value: F) -> (f64, [f64; 3])
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    let (neg, p) = sweep_max(points, |p| -value(p));
    (-neg, p)
}
