use std::sync::Arc;

use num_complex::Complex64;

use crate::calculus::{pullback_value, ChartDomain, ChartMap, FormField};
use crate::structure::{CheckConfig, CheckReport, Grid};

/// One chart of an atlas with its local spinor field.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub field: FormField,
}

impl Chart {
    pub fn new(name: impl Into<String>, field: FormField) -> Self {
        Chart {
            name: name.into(),
            field,
        }
    }
}

type TransitionFn = dyn Fn([f64; 3]) -> Complex64 + Send + Sync;

/// Overlap relation between two charts: on the sampling region,
/// `ρ_source = transition · (pullback of ρ_target along map)` with a nowhere
/// vanishing complex transition function.
#[derive(Clone)]
pub struct Overlap {
    pub source: usize,
    pub target: usize,
    /// Parameter domain for sampling the overlap.
    pub region: ChartDomain,
    /// Optional embedding of the sampling region into source-chart
    /// coordinates (identity when the region is already in chart coords).
    pub embed: Option<ChartMap>,
    /// Map from source-chart coordinates into the target chart.
    pub map: ChartMap,
    transition: Arc<TransitionFn>,
}

impl Overlap {
    pub fn new(
        source: usize,
        target: usize,
        region: ChartDomain,
        embed: Option<ChartMap>,
        map: ChartMap,
        transition: impl Fn([f64; 3]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Overlap {
            source,
            target,
            region,
            embed,
            map,
            transition: Arc::new(transition),
        }
    }

    pub fn transition_at(&self, p: [f64; 3]) -> Complex64 {
        (self.transition)(p)
    }
}

impl std::fmt::Debug for Overlap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Overlap")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish_non_exhaustive()
    }
}

/// An atlas of charts with local spinor fields and overlap relations:
/// the computational stand-in for a line subbundle of the complex exterior
/// algebra bundle.
#[derive(Clone, Debug, Default)]
pub struct SpinorStructure {
    pub charts: Vec<Chart>,
    pub overlaps: Vec<Overlap>,
}

impl SpinorStructure {
    pub fn single_chart(name: impl Into<String>, field: FormField) -> Self {
        SpinorStructure {
            charts: vec![Chart::new(name, field)],
            overlaps: Vec::new(),
        }
    }

    /// Residual of the overlap relation on each sampled overlap:
    /// `||ρ_i − t · pullback(ρ_j)|| / ||ρ_i||`, maximized over the region.
    pub fn check_overlaps(&self, cfg: &CheckConfig) -> Vec<CheckReport> {
        let grid_meta = Grid {
            per_axis: cfg.grid,
            fd_fraction: cfg.fd_fraction,
        };
        self.overlaps
            .iter()
            .enumerate()
            .map(|(k, ov)| {
                let src = &self.charts[ov.source].field;
                let tgt = &self.charts[ov.target].field;
                let grid = ov.region.grid(cfg.grid);
                let (worst, at) = super::sweep_max(&grid.points, |u| {
                    let x = match &ov.embed {
                        Some(e) => e.apply(u),
                        None => u,
                    };
                    let lhs = src.at(x);
                    let t = ov.transition_at(x);
                    if t.norm() < 1e-300 {
                        return f64::INFINITY;
                    }
                    let y = ov.map.apply(x);
                    let rhs = pullback_value(&ov.map.jacobian(x), &tgt.at(y)).scale(t);
                    (lhs - rhs).norm() / lhs.norm().max(1e-300)
                });
                CheckReport::below(
                    format!(
                        "overlap_{}_{}_{}",
                        k, self.charts[ov.source].name, self.charts[ov.target].name
                    ),
                    worst,
                    cfg.tol_overlap,
                    at,
                    grid_meta,
                )
            })
            .collect()
    }
}
