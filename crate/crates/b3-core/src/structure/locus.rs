use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::calculus::{ext_d_value, FormField};
use crate::structure::{CheckConfig, SpinorStructure};

/// Result of the type-change locus scan of one chart (or an atlas).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocusReport {
    /// Refined zeros of ρ₀, one per detected cell, in chart coordinates.
    pub points: Vec<[f64; 3]>,
    /// Connected components of the detected cells (26-cell adjacency with
    /// periodic wrap), i.e. the number of locus curves.
    pub component_count: usize,
    /// Minimal ||dρ₀|| over the refined zeros (infinite when none).
    pub min_grad: f64,
    /// Minimal ||Re dρ₀ ∧ Im dρ₀|| over the refined zeros: the complex
    /// coordinate criterion transverse to the locus.
    pub min_area: f64,
    /// Every located zero vanishes transversally.
    pub stable: bool,
    /// ρ₀ is numerically zero on a large region: no transversal structure.
    pub degenerate: bool,
}

impl LocusReport {
    fn empty() -> Self {
        LocusReport {
            points: Vec::new(),
            component_count: 0,
            min_grad: f64::INFINITY,
            min_area: f64::INFINITY,
            stable: true,
            degenerate: false,
        }
    }

    fn degenerate() -> Self {
        LocusReport {
            points: Vec::new(),
            component_count: 0,
            min_grad: 0.0,
            min_area: 0.0,
            stable: false,
            degenerate: true,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Deterministic: smaller root wins.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Scans a chart for zeros of the degree-0 component: marks grid cells whose
/// corners change sign in both real and imaginary part, refines one zero per
/// cell by a damped Gauss-Newton iteration, checks transversality
/// (`||dρ₀||` and the wedge of the real and imaginary differentials) at each
/// zero, and groups cells into curves by adjacency.
pub fn locus_for_field(field: &FormField, cfg: &CheckConfig) -> LocusReport {
    let n = cfg.grid;
    let domain = &field.domain;
    let (nodes, steps) = domain.lattice(n);
    let counts = [nodes[0].len(), nodes[1].len(), nodes[2].len()];

    // ρ₀ on the lattice; None outside masked domains.
    let mut values: Vec<Option<Complex64>> =
        Vec::with_capacity(counts[0] * counts[1] * counts[2]);
    let mut field_scale = 0.0f64;
    for i in 0..counts[0] {
        for j in 0..counts[1] {
            for k in 0..counts[2] {
                let p = [nodes[0][i], nodes[1][j], nodes[2][k]];
                if domain.contains(p, 0.0) {
                    let v = field.at(p);
                    field_scale = field_scale.max(v.norm());
                    values.push(Some(v.get(0)));
                } else {
                    values.push(None);
                }
            }
        }
    }
    let idx = |i: usize, j: usize, k: usize| (i * counts[1] + j) * counts[2] + k;

    let r0_scale = values
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    if field_scale < 1e-300 {
        return LocusReport::empty();
    }
    if r0_scale < 1e-12 * field_scale {
        // Degree-0 part vanishes identically: no transversal zero set.
        return LocusReport::degenerate();
    }

    // Cells per axis: periodic axes wrap, bounded axes stop one short.
    let cells_along = |axis: usize| {
        if domain.periodic[axis] {
            counts[axis]
        } else {
            counts[axis].saturating_sub(1)
        }
    };
    let (ci, cj, ck) = (cells_along(0), cells_along(1), cells_along(2));
    let band = 1e-12 * r0_scale;

    let mut marked: Vec<[usize; 3]> = Vec::new();
    let mut near_zero_nodes = 0usize;
    let mut total_nodes = 0usize;
    for v in values.iter().flatten() {
        total_nodes += 1;
        if v.norm() < 1e-9 * r0_scale {
            near_zero_nodes += 1;
        }
    }
    if total_nodes == 0 {
        return LocusReport::empty();
    }
    if near_zero_nodes * 3 > total_nodes {
        return LocusReport::degenerate();
    }

    'cells: for i in 0..ci {
        for j in 0..cj {
            for k in 0..ck {
                let mut re_min = f64::INFINITY;
                let mut re_max = f64::NEG_INFINITY;
                let mut im_min = f64::INFINITY;
                let mut im_max = f64::NEG_INFINITY;
                for di in 0..2usize {
                    for dj in 0..2usize {
                        for dk in 0..2usize {
                            let ii = (i + di) % counts[0];
                            let jj = (j + dj) % counts[1];
                            let kk = (k + dk) % counts[2];
                            match values[idx(ii, jj, kk)] {
                                Some(z) => {
                                    re_min = re_min.min(z.re);
                                    re_max = re_max.max(z.re);
                                    im_min = im_min.min(z.im);
                                    im_max = im_max.max(z.im);
                                }
                                None => continue 'cells,
                            }
                        }
                    }
                }
                if re_min <= band && re_max >= -band && im_min <= band && im_max >= -band {
                    marked.push([i, j, k]);
                }
            }
        }
    }

    if marked.is_empty() {
        return LocusReport::empty();
    }

    // Refine one zero per marked cell by Gauss-Newton on (Re ρ₀, Im ρ₀).
    let cell_diag = (steps[0].powi(2) + steps[1].powi(2) + steps[2].powi(2)).sqrt();
    let fd = cfg.fd_options(domain);
    let mut points = Vec::new();
    let mut kept_cells = Vec::new();
    let mut min_grad = f64::INFINITY;
    let mut min_area = f64::INFINITY;

    for cell in &marked {
        let center = [
            nodes[0][cell[0]] + 0.5 * steps[0],
            nodes[1][cell[1]] + 0.5 * steps[1],
            nodes[2][cell[2]] + 0.5 * steps[2],
        ];
        if let Some(zero) = refine_zero(field, center, cell_diag, r0_scale) {
            let d0 = {
                let f0 = field.degree_part(0);
                ext_d_value(&f0, zero, &fd)
            };
            let comps = [d0.get(0b001), d0.get(0b010), d0.get(0b100)];
            let grad = comps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let re: Vec<f64> = comps.iter().map(|z| z.re).collect();
            let im: Vec<f64> = comps.iter().map(|z| z.im).collect();
            let cross = [
                re[0] * im[1] - re[1] * im[0],
                re[0] * im[2] - re[2] * im[0],
                re[1] * im[2] - re[2] * im[1],
            ];
            let area = cross.iter().map(|x| x * x).sum::<f64>().sqrt();
            min_grad = min_grad.min(grad);
            min_area = min_area.min(area);
            points.push(zero);
            kept_cells.push(*cell);
        }
    }

    if points.is_empty() {
        return LocusReport::empty();
    }

    // Components by 26-adjacency over kept cells, periodic wrap included.
    let mut uf = UnionFind::new(kept_cells.len());
    let wrap_delta = |a: i64, axis: usize, cells: usize| -> i64 {
        if domain.periodic[axis] && cells > 0 {
            let c = cells as i64;
            let mut d = a.rem_euclid(c);
            if d > c / 2 {
                d -= c;
            }
            d
        } else {
            a
        }
    };
    let cell_counts = [ci, cj, ck];
    for x in 0..kept_cells.len() {
        for y in (x + 1)..kept_cells.len() {
            let mut adjacent = true;
            for axis in 0..3 {
                let d = wrap_delta(
                    kept_cells[x][axis] as i64 - kept_cells[y][axis] as i64,
                    axis,
                    cell_counts[axis],
                );
                if d.abs() > 1 {
                    adjacent = false;
                    break;
                }
            }
            if adjacent {
                uf.union(x, y);
            }
        }
    }
    let mut roots: Vec<usize> = (0..kept_cells.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();

    let stable = min_grad > cfg.min_locus_grad;
    LocusReport {
        points,
        component_count: roots.len(),
        min_grad,
        min_area,
        stable,
        degenerate: false,
    }
}

/// Damped Gauss-Newton for the two real equations (Re ρ₀, Im ρ₀) = 0,
/// started at a cell center. Returns the zero or None when the iteration
/// leaves the cell neighbourhood or stalls.
fn refine_zero(
    field: &FormField,
    start: [f64; 3],
    cell_diag: f64,
    scale: f64,
) -> Option<[f64; 3]> {
    let mut x = start;
    let h = (cell_diag * 1e-4).max(1e-12);
    for _ in 0..40 {
        let z = field.at(x).get(0);
        if z.norm() < 1e-11 * scale {
            let dist = (0..3)
                .map(|a| (x[a] - start[a]).powi(2))
                .sum::<f64>()
                .sqrt();
            if dist > 1.5 * cell_diag {
                return None;
            }
            return Some(x);
        }
        // FD jacobian of (Re, Im) w.r.t. the three coordinates.
        let mut jac = [[0.0f64; 3]; 2];
        for a in 0..3 {
            let mut plus = x;
            plus[a] += h;
            let mut minus = x;
            minus[a] -= h;
            let dzda = (field.at(plus).get(0) - field.at(minus).get(0)) / (2.0 * h);
            jac[0][a] = dzda.re;
            jac[1][a] = dzda.im;
        }
        // Min-norm step: Jᵀ (J Jᵀ)⁻¹ F.
        let jjt = [
            [
                jac[0].iter().map(|v| v * v).sum::<f64>(),
                (0..3).map(|a| jac[0][a] * jac[1][a]).sum::<f64>(),
            ],
            [
                (0..3).map(|a| jac[0][a] * jac[1][a]).sum::<f64>(),
                jac[1].iter().map(|v| v * v).sum::<f64>(),
            ],
        ];
        let det = jjt[0][0] * jjt[1][1] - jjt[0][1] * jjt[1][0];
        if det.abs() < 1e-30 {
            return None;
        }
        let rhs = [z.re, z.im];
        let lam = [
            (jjt[1][1] * rhs[0] - jjt[0][1] * rhs[1]) / det,
            (-jjt[1][0] * rhs[0] + jjt[0][0] * rhs[1]) / det,
        ];
        let mut step = [0.0f64; 3];
        for a in 0..3 {
            step[a] = jac[0][a] * lam[0] + jac[1][a] * lam[1];
        }
        let step_norm = step.iter().map(|s| s * s).sum::<f64>().sqrt();
        let cap = 0.75 * cell_diag;
        let damp = if step_norm > cap { cap / step_norm } else { 1.0 };
        for a in 0..3 {
            x[a] -= damp * step[a];
        }
    }
    None
}

/// Locus scan across all charts of an atlas; components are counted per
/// chart and summed (the catalog loci are interior to a single chart).
// TODO: merge locus components that continue across chart overlaps; none of
// the current cases need it.
pub fn locus_for_structure(
    structure: &SpinorStructure,
    cfg: &CheckConfig,
) -> (LocusReport, Vec<LocusReport>) {
    let per_chart: Vec<LocusReport> = structure
        .charts
        .iter()
        .map(|c| locus_for_field(&c.field, cfg))
        .collect();
    let mut total = LocusReport::empty();
    for r in &per_chart {
        total.points.extend(r.points.iter().cloned());
        total.component_count += r.component_count;
        total.min_grad = total.min_grad.min(r.min_grad);
        total.min_area = total.min_area.min(r.min_area);
        total.stable &= r.stable;
        total.degenerate |= r.degenerate;
    }
    (total, per_chart)
}
