use std::sync::Arc;

use num_complex::Complex64;

use super::domain::{ChartDomain, TAU};
use super::field::FormField;
use crate::algebra::MixedForm;
use crate::error::{B3Error, Result};

type PointFn = dyn Fn([f64; 3]) -> [f64; 3] + Send + Sync;
type JacFn = dyn Fn([f64; 3]) -> [[f64; 3]; 3] + Send + Sync;

#[derive(Clone)]
enum Jacobian {
    Analytic(Arc<JacFn>),
    FiniteDifference { step: f64 },
}

/// A smooth map between charts with its jacobian (analytic when available,
/// finite-difference fallback) and an optional inverse.
#[derive(Clone)]
pub struct ChartMap {
    pub source: ChartDomain,
    pub target: ChartDomain,
    forward: Arc<PointFn>,
    jacobian: Jacobian,
    inverse: Option<Arc<PointFn>>,
}

pub fn wrap_angle(t: f64) -> f64 {
    t.rem_euclid(TAU)
}

impl ChartMap {
    pub fn new(
        source: ChartDomain,
        target: ChartDomain,
        forward: impl Fn([f64; 3]) -> [f64; 3] + Send + Sync + 'static,
        jacobian: impl Fn([f64; 3]) -> [[f64; 3]; 3] + Send + Sync + 'static,
    ) -> Self {
        Self {
            source,
            target,
            forward: Arc::new(forward),
            jacobian: Jacobian::Analytic(Arc::new(jacobian)),
            inverse: None,
        }
    }

    pub fn new_fd(
        source: ChartDomain,
        target: ChartDomain,
        forward: impl Fn([f64; 3]) -> [f64; 3] + Send + Sync + 'static,
        step: f64,
    ) -> Self {
        Self {
            source,
            target,
            forward: Arc::new(forward),
            jacobian: Jacobian::FiniteDifference { step },
            inverse: None,
        }
    }

    pub fn with_inverse(
        mut self,
        inverse: impl Fn([f64; 3]) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        self.inverse = Some(Arc::new(inverse));
        self
    }

    /// Replace the jacobian by a finite-difference one; used by the FD-order
    /// checks to give the gluing residual a measurable truncation error.
    pub fn with_fd_jacobian(mut self, step: f64) -> Self {
        self.jacobian = Jacobian::FiniteDifference { step };
        self
    }

    pub fn identity(domain: ChartDomain) -> Self {
        Self::new(domain.clone(), domain, |p| p, |_| IDENTITY_JAC).with_inverse(|p| p)
    }

    pub fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        (self.forward)(p)
    }

    pub fn inverse_apply(&self, p: [f64; 3]) -> Option<[f64; 3]> {
        self.inverse.as_ref().map(|inv| inv(p))
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// Jacobian `J[i][j] = ∂ target_i / ∂ source_j`.
    pub fn jacobian(&self, p: [f64; 3]) -> [[f64; 3]; 3] {
        match &self.jacobian {
            Jacobian::Analytic(j) => j(p),
            Jacobian::FiniteDifference { step } => {
                let mut jac = [[0.0; 3]; 3];
                for j in 0..3 {
                    let mut plus = p;
                    plus[j] += step;
                    let mut minus = p;
                    minus[j] -= step;
                    let fp = (self.forward)(plus);
                    let fm = (self.forward)(minus);
                    for i in 0..3 {
                        let mut diff = fp[i] - fm[i];
                        // Angle components may wrap across 2π.
                        if self.target.periodic[i] {
                            if diff > std::f64::consts::PI {
                                diff -= TAU;
                            } else if diff < -std::f64::consts::PI {
                                diff += TAU;
                            }
                        }
                        jac[i][j] = diff / (2.0 * step);
                    }
                }
                jac
            }
        }
    }

    pub fn jacobian_det(&self, p: [f64; 3]) -> f64 {
        det3(&self.jacobian(p))
    }

    /// Composite `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &ChartMap) -> ChartMap {
        let f_outer = self.forward.clone();
        let f_inner = inner.forward.clone();
        let outer = self.clone();
        let inner_cl = inner.clone();
        let mut out = ChartMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            forward: Arc::new(move |p| f_outer(f_inner(p))),
            jacobian: Jacobian::Analytic(Arc::new(move |p| {
                let mid = inner_cl.apply(p);
                mat_mul(&outer.jacobian(mid), &inner_cl.jacobian(p))
            })),
            inverse: None,
        };
        if let (Some(inv_outer), Some(inv_inner)) = (self.inverse.clone(), inner.inverse.clone()) {
            out.inverse = Some(Arc::new(move |p| inv_inner(inv_outer(p))));
        }
        out
    }

    /// Pullback of a field on the target chart to the source chart.
    /// Errors if the map leaves the target domain on the source grid.
    pub fn pullback(&self, field: &FormField) -> Result<FormField> {
        let margin = 1e-9;
        let probe = self.source.grid(4);
        for p in probe.points {
            let q = self.apply(p);
            if !self.target.contains(q, margin) {
                return Err(B3Error::OutsideDomain { point: q, axis: 0 });
            }
        }
        Ok(pullback(self, field))
    }
}

impl std::fmt::Debug for ChartMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish_non_exhaustive()
    }
}

const IDENTITY_JAC: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn det3(j: &[[f64; 3]; 3]) -> f64 {
    j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
        - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0])
}

/// Degree-2 masks and their index pairs, ascending.
const TWO_FORM_MASKS: [(u8, usize, usize); 3] = [(0b011, 0, 1), (0b101, 0, 2), (0b110, 1, 2)];

/// Pullback of a single mixed-form value through a jacobian: degree 0 copies,
/// covectors transform by `Jᵀ`, degree-k parts by k×k minors.
pub fn pullback_value(jac: &[[f64; 3]; 3], value: &MixedForm) -> MixedForm {
    let mut out = MixedForm::ZERO;
    out.set(0, value.get(0));
    // Degree 1: (φ*α)_j = Σ_i α_i J[i][j].
    for jcol in 0..3 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            acc += value.get(1 << i) * jac[i][jcol];
        }
        out.set(1 << jcol, acc);
    }
    // Degree 2: 2x2 minors.
    for &(mj, j1, j2) in &TWO_FORM_MASKS {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(mi, i1, i2) in &TWO_FORM_MASKS {
            let minor = jac[i1][j1] * jac[i2][j2] - jac[i1][j2] * jac[i2][j1];
            acc += value.get(mi) * minor;
        }
        out.set(mj, acc);
    }
    out.set(0b111, value.get(0b111) * det3(jac));
    out
}

/// Pullback of a whole field along a chart map (degree-wise jacobian action;
/// the degree-0 part composes).
pub fn pullback(map: &ChartMap, field: &FormField) -> FormField {
    let map = map.clone();
    let field = field.clone();
    FormField::new(map.source.clone(), move |p| {
        let q = map.apply(p);
        pullback_value(&map.jacobian(p), &field.at(q))
    })
}

/// The embedding of a polar chart `(r, θ, σ)` into a Cartesian chart
/// `(r cos θ, r sin θ, σ)`, with analytic jacobian and inverse.
pub fn polar_embed(source: ChartDomain, target: ChartDomain) -> ChartMap {
    ChartMap::new(
        source,
        target,
        |p| {
            let (r, th, s) = (p[0], p[1], p[2]);
            [r * th.cos(), r * th.sin(), s]
        },
        |p| {
            let (r, th) = (p[0], p[1]);
            [
                [th.cos(), -r * th.sin(), 0.0],
                [th.sin(), r * th.cos(), 0.0],
                [0.0, 0.0, 1.0],
            ]
        },
    )
    .with_inverse(|p| {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        [r, wrap_angle(p[1].atan2(p[0])), p[2]]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::deriv::FdOptions;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// z ↦ 1/z on ℂ^× as a Cartesian chart map, fixing the angle coordinate.
    fn inversion(source: ChartDomain, target: ChartDomain) -> ChartMap {
        ChartMap::new(
            source,
            target,
            |p| {
                let r2 = p[0] * p[0] + p[1] * p[1];
                [p[0] / r2, -p[1] / r2, p[2]]
            },
            |p| {
                let (x, y) = (p[0], p[1]);
                let r2 = x * x + y * y;
                let r4 = r2 * r2;
                [
                    [(y * y - x * x) / r4, -2.0 * x * y / r4, 0.0],
                    [2.0 * x * y / r4, (y * y - x * x) / r4, 0.0],
                    [0.0, 0.0, 1.0],
                ]
            },
        )
        .with_inverse(|p| {
            let r2 = p[0] * p[0] + p[1] * p[1];
            [p[0] / r2, -p[1] / r2, p[2]]
        })
    }

    #[test]
    fn identity_pullback_is_identity() {
        let dom = ChartDomain::box_times_circle(1.0);
        let id = ChartMap::identity(dom.clone());
        let f = FormField::new(dom, |p| {
            let mut v = MixedForm::scalar(c(p[0], p[1]));
            v.set(0b011, c(p[2].sin(), 0.0));
            v
        });
        let g = id.pullback(&f).unwrap();
        let p = [0.3, -0.2, 2.0];
        assert!((f.at(p) - g.at(p)).norm() < 1e-15);
    }

    #[test]
    fn pullback_of_dz_under_inversion() {
        // φ: z ↦ 1/z pulls dz back to -dz/z². Checked at sample points.
        let ring = ChartDomain::annulus_circle(0.5, 2.0).unwrap();
        // Use a Cartesian box that contains the image.
        let cart = ChartDomain::box_times_circle(3.0);
        let m = inversion(cart.clone(), cart.clone());
        let dz_field = FormField::constant(
            cart.clone(),
            MixedForm::one_form([c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]),
        );
        let pulled = pullback(&m, &dz_field);
        let _ = ring;
        for &(x, y) in &[(0.7, 0.2), (-0.5, 0.9), (1.3, -0.4)] {
            let z = c(x, y);
            let got = pulled.at([x, y, 0.0]);
            // -dz/z² has one-form components -(1, i)/z².
            let w = -1.0 / (z * z);
            let want = MixedForm::one_form([w, w * c(0.0, 1.0), c(0.0, 0.0)]);
            assert!((got - want).norm() < 1e-12, "at z = {z}");
        }
    }

    #[test]
    fn polar_embedding_round_trip_and_area_form() {
        let ann = ChartDomain::annulus_circle(0.5, 2.0).unwrap();
        let cart = ChartDomain::box_times_circle(2.5);
        let emb = polar_embed(ann.clone(), cart.clone());
        // dx∧dy pulls back to r dr∧dθ.
        let area = FormField::constant(cart, MixedForm::basis(0b011));
        let pulled = pullback(&emb, &area);
        let p = [1.3, 0.8, 0.1];
        let got = pulled.at(p);
        let mut want = MixedForm::ZERO;
        want.set(0b011, c(p[0], 0.0));
        assert!((got - want).norm() < 1e-13);

        let q = emb.apply(p);
        let back = emb.inverse_apply(q).unwrap();
        assert!((back[0] - p[0]).abs() < 1e-13);
        assert!((back[1] - p[1]).abs() < 1e-13);
    }

    #[test]
    fn fd_jacobian_matches_analytic() {
        let cart = ChartDomain::box_times_circle(3.0);
        let m = inversion(cart.clone(), cart.clone());
        let m_fd = m.clone().with_fd_jacobian(1e-5);
        let p = [0.8, -0.6, 1.0];
        let ja = m.jacobian(p);
        let jf = m_fd.jacobian(p);
        for i in 0..3 {
            for j in 0..3 {
                assert!((ja[i][j] - jf[i][j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn naturality_of_pullback_and_derivative() {
        // d(φ*ρ) = φ*(dρ) within FD tolerance.
        let cart = ChartDomain::box_times_circle(3.0);
        let m = inversion(cart.clone(), cart.clone());
        let rho = FormField::new(cart.clone(), |p| {
            let mut v = MixedForm::scalar(c(p[0] * p[1], p[0]));
            v.set(0b010, c(p[1] * p[1], p[0] * 0.5));
            v
        });
        let opts = FdOptions::uniform(1e-5);
        let p = [0.9, -0.5, 2.0];
        let lhs = super::super::deriv::ext_d_value(&pullback(&m, &rho), p, &opts);
        let drho = rho.exterior_derivative(opts);
        let rhs = pullback(&m, &drho).at(p);
        assert!((lhs - rhs).norm() < 1e-6);
    }

    #[test]
    fn pullback_errors_when_leaving_target() {
        let small = ChartDomain::box_times_circle(0.5);
        let big = ChartDomain::box_times_circle(3.0);
        let m = inversion(big.clone(), small.clone());
        let f = FormField::zero(small);
        // 1/z maps the big box well outside the small one near the origin.
        assert!(m.pullback(&f).is_err());
    }
}
