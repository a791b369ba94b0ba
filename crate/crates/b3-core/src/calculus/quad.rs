use num_complex::Complex64;

use super::domain::{ChartDomain, DomainKind};
use super::field::FormField;
use crate::error::{B3Error, Result};

/// A slice of a chart: the free axes vary, the others are pinned to the
/// values in `base`. Orientation is the ascending order of the free axes.
#[derive(Clone, Debug)]
pub struct Slice {
    pub free: Vec<usize>,
    pub base: [f64; 3],
}

impl Slice {
    pub fn full() -> Self {
        Slice {
            free: vec![0, 1, 2],
            base: [0.0; 3],
        }
    }

    pub fn torus_at(r: f64) -> Self {
        Slice {
            free: vec![1, 2],
            base: [r, 0.0, 0.0],
        }
    }

    pub fn circle(axis: usize, base: [f64; 3]) -> Self {
        Slice {
            free: vec![axis],
            base,
        }
    }

    fn validate(&self) -> Result<u8> {
        let mut mask = 0u8;
        for &a in &self.free {
            if a > 2 {
                return Err(B3Error::Config(format!("slice axis {a} out of range")));
            }
            if mask & (1 << a) != 0 {
                return Err(B3Error::Config(format!("duplicate slice axis {a}")));
            }
            mask |= 1 << a;
        }
        if self.free.is_empty() {
            return Err(B3Error::DegreeDimensionMismatch { degree: 0, dim: 0 });
        }
        Ok(mask)
    }
}

/// Tensor-product quadrature of the degree-`dim` component selected by the
/// slice orientation: trapezoid rule on periodic axes (spectrally accurate,
/// exact for constants), composite midpoint elsewhere.
pub fn integrate_slice(field: &FormField, slice: &Slice, n: usize) -> Result<Complex64> {
    let mask = slice.validate()?;
    let domain = &field.domain;

    let mut axes_nodes: Vec<(usize, Vec<f64>, f64)> = Vec::new();
    for &axis in &slice.free {
        let (nodes, h) = domain.axis_nodes(axis, n);
        if nodes.len() < 2 && n >= 2 {
            return Err(B3Error::DegreeDimensionMismatch {
                degree: slice.free.len(),
                dim: 1,
            });
        }
        axes_nodes.push((axis, nodes, h));
    }

    let mut total = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; axes_nodes.len()];
    loop {
        let mut p = slice.base;
        let mut weight = 1.0;
        for (k, (axis, nodes, h)) in axes_nodes.iter().enumerate() {
            p[*axis] = nodes[idx[k]];
            weight *= h;
        }
        total += field.at(p).get(mask) * weight;

        // Odometer increment over the free axes.
        let mut k = 0;
        loop {
            if k == axes_nodes.len() {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < axes_nodes[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Integral of the top-degree component over the full domain.
/// For boundary-torus domains this is the 2D torus integral.
pub fn integrate(field: &FormField, n: usize) -> Result<Complex64> {
    match field.domain.kind {
        DomainKind::BoundaryTorus { fixed_value } => {
            integrate_slice(field, &Slice::torus_at(fixed_value), n)
        }
        _ => integrate_slice(field, &Slice::full(), n),
    }
}

/// Convenience: integrate over the torus `{first axis = r}` of a polar chart.
pub fn integrate_boundary_torus(field: &FormField, r: f64, n: usize) -> Result<Complex64> {
    let _ = ChartDomain::boundary_torus(r);
    integrate_slice(field, &Slice::torus_at(r), n)
}
