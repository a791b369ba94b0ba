use crate::algebra::MixedForm;
use crate::calculus::FormField;
use crate::structure::{CheckConfig, CheckReport, Grid};

/// Twisting data: a real closed 2-form `F` and a real 3-form `H` with
/// `dH + F∧F = 0`. Twisted integrability replaces `d` by
/// `d + F∧(grade involution) + H∧`.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub f: FormField,
    pub h: FormField,
}

impl TwistData {
    pub fn new(f: FormField, h: FormField) -> Self {
        TwistData { f, h }
    }

    pub fn zero(domain: crate::calculus::ChartDomain) -> Self {
        TwistData {
            f: FormField::zero(domain.clone()),
            h: FormField::zero(domain),
        }
    }

    /// The twisting summand of the derivative: `F∧τρ + H∧ρ` at a point.
    pub fn twisted_term(&self, point: [f64; 3], rho: &MixedForm) -> MixedForm {
        self.f.at(point).wedge(&rho.grade_involution()) + self.h.at(point).wedge(rho)
    }

    /// Verifies the compatibility `dH + F∧F = 0` and `dF = 0` on the grid.
    /// In three variables `F∧F` and `dH` vanish identically in exact
    /// arithmetic; the check guards against malformed inputs and FD noise.
    pub fn validate(&self, cfg: &CheckConfig) -> CheckReport {
        let opts = cfg.fd_options(&self.f.domain);
        let grid = self.f.domain.grid(cfg.grid.min(16));
        let f = self.f.clone();
        let h = self.h.clone();
        let scale_ref = 1.0f64.max(sample_scale(&f, &grid.points)) ;
        let (worst, at) = super::sweep_max(&grid.points, |p| {
            let df = crate::calculus::ext_d_value(&f, p, &opts);
            let dh = crate::calculus::ext_d_value(&h, p, &opts);
            let ff = f.at(p).wedge(&f.at(p));
            (dh + ff).norm().max(df.norm()) / scale_ref
        });
        CheckReport::below(
            "twist_compatibility",
            worst,
            cfg.tol_witness.max(opts.steps[0]),
            at,
            Grid {
                per_axis: cfg.grid.min(16),
                fd_fraction: cfg.fd_fraction,
            },
        )
    }
}

fn sample_scale(f: &FormField, points: &[[f64; 3]]) -> f64 {
    points
        .iter()
        .step_by((points.len() / 32).max(1))
        .map(|&p| f.at(p).norm())
        .fold(0.0f64, f64::max)
}
