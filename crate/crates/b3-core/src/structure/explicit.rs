use crate::calculus::{ext_d_value, FdOptions, FormField};
use crate::structure::{CheckConfig, CheckReport, Grid};

/// Normalized residuals of the degreewise conditions for a line of spinors
/// `ρ = ρ₀ + ρ₁ + ρ₂ + ρ₃` on a 3-chart:
///
/// (a) `ρ₀ρ₃ = ρ₁∧ρ₂`
/// (b) `Re(ρ₀·conj(ρ₃) − ρ₁∧conj(ρ₂)) ≠ 0` (value reported, lower-bounded)
/// (c) `ρ₀·dρ₁ = dρ₀∧ρ₁`
/// (d) `ρ₀·dρ₂ = dρ₀∧ρ₂`
///
/// All four are well-defined at points where ρ₀ vanishes.
#[derive(Clone, Copy, Debug)]
pub struct DegreewiseResiduals {
    pub a: f64,
    pub b_value: f64,
    pub c: f64,
    pub d: f64,
}

pub fn degreewise_residuals(
    field: &FormField,
    point: [f64; 3],
    opts: &FdOptions,
) -> DegreewiseResiduals {
    let rho = field.at(point);
    let scale2 = rho.norm_sqr().max(1e-300);

    let r0 = rho.get(0);
    let r1 = rho.degree_part(1);
    let r2 = rho.degree_part(2);
    let r3 = rho.degree_part(3);

    let a = (r3.scale(r0) - r1.wedge(&r2)).norm() / scale2;
    let b_value = (r0 * r3.conj().top() - r1.wedge(&r2.conj()).top()).re.abs() / scale2;

    let dr0 = {
        let f0 = field.degree_part(0);
        ext_d_value(&f0, point, opts)
    };
    let dr1 = {
        let f1 = field.degree_part(1);
        ext_d_value(&f1, point, opts)
    };
    let dr2 = {
        let f2 = field.degree_part(2);
        ext_d_value(&f2, point, opts)
    };

    // Scale carrying one derivative: ||ρ||·(||dρ0|| + ||dρ1|| + ||dρ2||) plus
    // a length-scale floor so constant fields normalize to zero cleanly.
    let l = field.domain.length_scale().max(1e-8);
    let rho_norm = scale2.sqrt();
    let deriv_scale = rho_norm * (dr0.norm() + dr1.norm() + dr2.norm()) + scale2 / l;

    let c_res = (dr1.scale(r0) - dr0.wedge(&r1)).norm() / deriv_scale;
    let d_res = (dr2.scale(r0) - dr0.wedge(&r2)).norm() / deriv_scale;

    DegreewiseResiduals {
        a,
        b_value,
        c: c_res,
        d: d_res,
    }
}

/// Grid sweep of the four degreewise conditions; returns one report per
/// condition, (b) as a lower-bounded value.
pub fn check_degreewise_conditions(field: &FormField, cfg: &CheckConfig) -> Vec<CheckReport> {
    let opts = cfg.fd_options(&field.domain);
    let grid_meta = Grid {
        per_axis: cfg.grid,
        fd_fraction: cfg.fd_fraction,
    };
    let grid = field.domain.grid(cfg.grid);

    let (a, at_a) = super::sweep_max(&grid.points, |p| degreewise_residuals(field, p, &opts).a);
    let (b, at_b) =
        super::sweep_min(&grid.points, |p| degreewise_residuals(field, p, &opts).b_value);
    let (c, at_c) = super::sweep_max(&grid.points, |p| degreewise_residuals(field, p, &opts).c);
    let (d, at_d) = super::sweep_max(&grid.points, |p| degreewise_residuals(field, p, &opts).d);

    vec![
        CheckReport::below("degreewise_a", a, cfg.tol_degreewise, at_a, grid_meta),
        CheckReport::above("degreewise_b", b, cfg.min_degreewise_b, at_b, grid_meta),
        CheckReport::below("degreewise_c", c, cfg.tol_degreewise, at_c, grid_meta),
        CheckReport::below("degreewise_d", d, cfg.tol_degreewise, at_d, grid_meta),
    ]
}

/// Residual of `d(ρ/ρ₀) = 0` at one point, or `None` where `|ρ₀|` is below
/// the cutoff (those points are handled by the type-1 local checks).
///
/// The step adapts to the distance from the zero set of ρ₀ estimated as
/// `|ρ₀| / ||dρ₀||`: the normalized field has coefficients of size 1/δ with
/// k-th derivatives of size δ^{-k-1}, so a fixed step cannot reach the
/// target accuracy close to the cutoff.
pub fn normalized_closed_residual(
    field: &FormField,
    point: [f64; 3],
    cfg: &CheckConfig,
) -> Option<f64> {
    let rho = field.at(point);
    let r0 = rho.get(0);
    if r0.norm() <= cfg.rho0_cutoff {
        return None;
    }
    let base = cfg.fd_options(&field.domain);
    let l = field.domain.length_scale();

    // Distance estimate to {ρ₀ = 0} via a cheap first derivative.
    let f0 = field.degree_part(0);
    let dr0 = ext_d_value(&f0, point, &base).norm();
    let dist = r0.norm() / dr0.max(r0.norm() / l);

    const KAPPA: f64 = 2e-5;
    let h = (KAPPA * dist).clamp(1e-7 * l, base.steps[0].max(base.steps[1]).max(base.steps[2]));
    let opts = FdOptions::uniform(h).with_richardson(base.richardson);

    let g = field.divide_by_degree0();
    let dg = ext_d_value(&g, point, &opts);
    Some(dg.norm() / g.at(point).norm())
}

/// Grid sweep of the normalized-closed check over the region
/// `{|ρ₀| > cutoff}`.
pub fn check_normalized_closed(field: &FormField, cfg: &CheckConfig) -> CheckReport {
    let grid = field.domain.grid(cfg.grid);
    let grid_meta = Grid {
        per_axis: cfg.grid,
        fd_fraction: cfg.fd_fraction,
    };
    use rayon::prelude::*;
    let qualifying: Vec<[f64; 3]> = grid
        .points
        .par_iter()
        .filter(|&&p| field.at(p).get(0).norm() > cfg.rho0_cutoff)
        .cloned()
        .collect();
    if qualifying.is_empty() {
        return CheckReport::below("normalized_closed", 0.0, cfg.tol_closed, [f64::NAN; 3], grid_meta)
            .with_detail("no points with |rho0| above cutoff");
    }
    let (worst, at) = super::sweep_max(&qualifying, |p| {
        normalized_closed_residual(field, p, cfg).unwrap_or(0.0)
    });
    CheckReport::below("normalized_closed", worst, cfg.tol_closed, at, grid_meta)
        .with_detail(format!("region |rho0| > {}", cfg.rho0_cutoff))
}
