use crate::error::{B3Error, Result};

pub const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Debug, PartialEq)]
pub enum DomainKind {
    /// Rectangular box, possibly periodic per axis.
    Box,
    /// Disk times circle in Cartesian coordinates `(x, y, angle)`;
    /// grid points are masked to the disk interior.
    DiskCircle { radius: f64 },
    /// Annulus times circle in polar coordinates `(r, θ, σ)`.
    AnnulusCircle,
    /// Two-dimensional torus `{r = const}` inside a polar chart; the first
    /// axis is pinned, both angles periodic.
    BoundaryTorus { fixed_value: f64 },
}

/// A 3D parameter domain with per-axis ranges, periodicity flags and a
/// default grid resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartDomain {
    pub kind: DomainKind,
    pub ranges: [[f64; 2]; 3],
    pub periodic: [bool; 3],
    pub resolution: [usize; 3],
    /// Disks (center, radius) removed from the domain, in the first two
    /// coordinates. Used to mask surgery neighbourhoods out of base charts.
    pub excluded_disks: Vec<([f64; 2], f64)>,
}

impl ChartDomain {
    fn validate(self) -> Result<Self> {
        for axis in 0..3 {
            let [lo, hi] = self.ranges[axis];
            if self.periodic[axis] {
                if lo != 0.0 || (hi - TAU).abs() > 1e-12 {
                    return Err(B3Error::Config(format!(
                        "periodic axis {axis} must have range [0, 2π), got [{lo}, {hi})"
                    )));
                }
            } else if matches!(self.kind, DomainKind::BoundaryTorus { .. }) && axis == 0 {
                // Pinned axis; the range is a single point.
            } else if !(hi > lo) {
                return Err(B3Error::Config(format!(
                    "axis {axis} has empty range [{lo}, {hi}]"
                )));
            }
        }
        Ok(self)
    }

    pub fn auto_box(ranges: [[f64; 2]; 3], periodic: [bool; 3]) -> Result<Self> {
        ChartDomain {
            kind: DomainKind::Box,
            ranges,
            periodic,
            resolution: [crate::tolerances::DEFAULT_GRID; 3],
            excluded_disks: Vec::new(),
        }
        .validate()
    }

    /// The fully periodic box `[0, 2π)³`.
    pub fn periodic_box() -> Self {
        Self::auto_box([[0.0, TAU]; 3], [true; 3]).unwrap()
    }

    /// Box `[−w, w]² × S¹`.
    pub fn box_times_circle(w: f64) -> Self {
        Self::auto_box([[-w, w], [-w, w], [0.0, TAU]], [false, false, true]).unwrap()
    }

    pub fn disk_circle(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(B3Error::Config("disk radius must be positive".into()));
        }
        ChartDomain {
            kind: DomainKind::DiskCircle { radius },
            ranges: [[-radius, radius], [-radius, radius], [0.0, TAU]],
            periodic: [false, false, true],
            resolution: [crate::tolerances::DEFAULT_GRID; 3],
            excluded_disks: Vec::new(),
        }
        .validate()
    }

    pub fn annulus_circle(r_inner: f64, r_outer: f64) -> Result<Self> {
        if !(r_outer > r_inner && r_inner > 0.0) {
            return Err(B3Error::Config(format!(
                "annulus radii must satisfy outer > inner > 0, got ({r_inner}, {r_outer})"
            )));
        }
        ChartDomain {
            kind: DomainKind::AnnulusCircle,
            ranges: [[r_inner, r_outer], [0.0, TAU], [0.0, TAU]],
            periodic: [false, true, true],
            resolution: [crate::tolerances::DEFAULT_GRID; 3],
            excluded_disks: Vec::new(),
        }
        .validate()
    }

    /// Torus `{first axis = fixed}` with two periodic angles.
    pub fn boundary_torus(fixed_value: f64) -> Self {
        ChartDomain {
            kind: DomainKind::BoundaryTorus { fixed_value },
            ranges: [[fixed_value, fixed_value], [0.0, TAU], [0.0, TAU]],
            periodic: [false, true, true],
            resolution: [1, crate::tolerances::DEFAULT_GRID, crate::tolerances::DEFAULT_GRID],
            excluded_disks: Vec::new(),
        }
        .validate()
        .unwrap()
    }

    pub fn with_resolution(mut self, n: usize) -> Self {
        for axis in 0..3 {
            if !matches!(self.kind, DomainKind::BoundaryTorus { .. }) || axis > 0 {
                self.resolution[axis] = n;
            }
        }
        self
    }

    pub fn with_excluded_disk(mut self, center: [f64; 2], radius: f64) -> Self {
        self.excluded_disks.push((center, radius));
        self
    }

    /// Spatial dimension: 2 for boundary tori, else 3.
    pub fn dim(&self) -> usize {
        match self.kind {
            DomainKind::BoundaryTorus { .. } => 2,
            _ => 3,
        }
    }

    pub fn range_extent(&self, axis: usize) -> f64 {
        self.ranges[axis][1] - self.ranges[axis][0]
    }

    /// Largest coordinate extent; the reference scale for FD steps.
    pub fn length_scale(&self) -> f64 {
        (0..3)
            .map(|a| self.range_extent(a))
            .fold(0.0f64, f64::max)
    }

    /// Membership with a margin shrunk inward on non-periodic axes and masks.
    pub fn contains(&self, p: [f64; 3], margin: f64) -> bool {
        for axis in 0..3 {
            if self.periodic[axis] {
                continue;
            }
            let [lo, hi] = self.ranges[axis];
            if matches!(self.kind, DomainKind::BoundaryTorus { .. }) && axis == 0 {
                continue;
            }
            if p[axis] < lo + margin || p[axis] > hi - margin {
                return false;
            }
        }
        if let DomainKind::DiskCircle { radius } = self.kind {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            if r > radius - margin {
                return false;
            }
        }
        for (center, radius) in &self.excluded_disks {
            let dx = p[0] - center[0];
            let dy = p[1] - center[1];
            if (dx * dx + dy * dy).sqrt() < radius + margin {
                return false;
            }
        }
        true
    }

    /// Nodes and quadrature weight along one axis: uniform nodes with weight
    /// `h` on periodic axes (trapezoid rule on a circle), composite-midpoint
    /// nodes on bounded axes. Midpoint nodes also keep FD stencils interior.
    pub fn axis_nodes(&self, axis: usize, n: usize) -> (Vec<f64>, f64) {
        let [lo, hi] = self.ranges[axis];
        if let DomainKind::BoundaryTorus { fixed_value } = self.kind {
            if axis == 0 {
                return (vec![fixed_value], 1.0);
            }
        }
        let h = (hi - lo) / n as f64;
        let nodes = if self.periodic[axis] {
            (0..n).map(|i| lo + i as f64 * h).collect()
        } else {
            (0..n).map(|i| lo + (i as f64 + 0.5) * h).collect()
        };
        (nodes, h)
    }

    /// Grid of sample points at resolution `n` per (free) axis, masked to the
    /// domain with a margin of 1.5 cells so FD stencils stay inside.
    pub fn grid(&self, n: usize) -> GridIter {
        let mut nodes = Vec::new();
        let mut cells = [1usize; 3];
        for axis in 0..3 {
            let na = if matches!(self.kind, DomainKind::BoundaryTorus { .. }) && axis == 0 {
                1
            } else {
                n
            };
            let (v, h) = self.axis_nodes(axis, na);
            cells[axis] = v.len();
            nodes.push((v, h));
        }
        let margin = 1.5 * nodes.iter().map(|(_, h)| *h).fold(0.0f64, f64::max)
            * match self.kind {
                DomainKind::DiskCircle { .. } => 1.0,
                _ => 0.0,
            };
        let mut points = Vec::new();
        let mut indices = Vec::new();
        for i in 0..cells[0] {
            for j in 0..cells[1] {
                for k in 0..cells[2] {
                    let p = [nodes[0].0[i], nodes[1].0[j], nodes[2].0[k]];
                    if self.contains(p, margin) {
                        points.push(p);
                        indices.push([i, j, k]);
                    }
                }
            }
        }
        GridIter {
            points,
            indices,
            shape: cells,
        }
    }

    /// Lattice of node values per axis, without masking; used by the locus
    /// scanner which needs the full cell structure.
    pub fn lattice(&self, n: usize) -> ([Vec<f64>; 3], [f64; 3]) {
        let mut out: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut steps = [0.0; 3];
        for axis in 0..3 {
            let (v, h) = self.axis_nodes(axis, n);
            out[axis] = v;
            steps[axis] = h;
        }
        (out, steps)
    }
}

/// Materialized grid sample of a domain.
pub struct GridIter {
    pub points: Vec<[f64; 3]>,
    pub indices: Vec<[usize; 3]>,
    pub shape: [usize; 3],
}
