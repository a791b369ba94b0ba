use crate::algebra::MixedForm;
use crate::error::{B3Error, Result};
use crate::tolerances::FD_STEP_FRACTION;

use super::domain::ChartDomain;
use super::field::FormField;

/// Finite-difference settings: absolute step per axis, with optional
/// Richardson extrapolation (halved-step combination, one order higher).
#[derive(Clone, Copy, Debug)]
pub struct FdOptions {
    pub steps: [f64; 3],
    pub richardson: bool,
}

impl FdOptions {
    /// Default step: `FD_STEP_FRACTION` of each coordinate range.
    pub fn for_domain(domain: &ChartDomain) -> Self {
        Self::relative(domain, FD_STEP_FRACTION)
    }

    pub fn relative(domain: &ChartDomain, fraction: f64) -> Self {
        let mut steps = [0.0; 3];
        for axis in 0..3 {
            let extent = domain.range_extent(axis).max(1e-8);
            steps[axis] = fraction * extent;
        }
        FdOptions {
            steps,
            richardson: false,
        }
    }

    pub fn uniform(step: f64) -> Self {
        FdOptions {
            steps: [step; 3],
            richardson: false,
        }
    }

    pub fn with_richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for s in self.steps.iter_mut() {
            *s *= factor;
        }
        self
    }
}

fn central_d(field: &FormField, p: [f64; 3], steps: &[f64; 3]) -> MixedForm {
    let mut out = MixedForm::ZERO;
    for axis in 0..3 {
        let h = steps[axis];
        let mut plus = p;
        plus[axis] += h;
        let mut minus = p;
        minus[axis] -= h;
        let deriv = (field.at(plus) - field.at(minus)).scale(1.0 / (2.0 * h));
        out += MixedForm::dx(axis + 1).wedge(&deriv);
    }
    out
}

/// Exterior derivative at a point by central differences, O(step²) accurate
/// for analytic coefficients; one order higher with Richardson extrapolation.
/// No domain checks; see [`ext_d`] for the checked variant.
pub fn ext_d_value(field: &FormField, p: [f64; 3], opts: &FdOptions) -> MixedForm {
    if opts.richardson {
        let coarse = central_d(field, p, &opts.steps);
        let mut half = *opts;
        for s in half.steps.iter_mut() {
            *s *= 0.5;
        }
        let fine = central_d(field, p, &half.steps);
        (fine.scale(4.0) - coarse).scale(1.0 / 3.0)
    } else {
        central_d(field, p, &opts.steps)
    }
}

/// Checked exterior derivative: the full stencil must stay inside the domain
/// on non-periodic axes (periodic axes wrap through the evaluator).
pub fn ext_d(field: &FormField, p: [f64; 3], opts: &FdOptions) -> Result<MixedForm> {
    let d = &field.domain;
    for axis in 0..3 {
        if d.periodic[axis] {
            continue;
        }
        let [lo, hi] = d.ranges[axis];
        let h = opts.steps[axis];
        if p[axis] - h < lo || p[axis] + h > hi {
            return Err(B3Error::OutsideDomain { point: p, axis });
        }
    }
    Ok(ext_d_value(field, p, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_of_coordinate_function() {
        // d(x¹) = dx¹ to rounding: central differences are exact on linear
        // coefficients.
        let dom = ChartDomain::box_times_circle(1.0);
        let f = FormField::new(dom.clone(), |p| MixedForm::scalar(c(p[0], 0.0)));
        let opts = FdOptions::for_domain(&dom);
        let d = ext_d(&f, [0.3, -0.2, 1.0], &opts).unwrap();
        assert!((d - MixedForm::dx(1)).norm() < 1e-8);
    }

    #[test]
    fn constant_coefficient_spinor_is_closed() {
        let dom = ChartDomain::periodic_box();
        let sigma = MixedForm::dx(3);
        let omega = MixedForm::basis(0b011);
        let rho = MixedForm::one() + c(0.0, 1.0) * sigma + c(0.0, 1.0) * omega
            - sigma.wedge(&omega);
        let f = FormField::constant(dom.clone(), rho);
        let opts = FdOptions::for_domain(&dom);
        let d = ext_d(&f, [1.0, 2.0, 3.0], &opts).unwrap();
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn derivative_of_complex_line_spinor() {
        // ρ = z + dz + i dz∧dt has dρ = dz: only the degree-0 part varies.
        let dom = ChartDomain::box_times_circle(1.0);
        let f = FormField::new(dom.clone(), |p| {
            let z = c(p[0], p[1]);
            let dz = MixedForm::one_form([c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
            MixedForm::scalar(z) + dz + c(0.0, 1.0) * dz.wedge(&MixedForm::dx(3))
        });
        let opts = FdOptions::for_domain(&dom);
        let d = ext_d(&f, [0.4, 0.1, 2.0], &opts).unwrap();
        let dz = MixedForm::one_form([c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        assert!((d - dz).norm() < 1e-9);
    }

    #[test]
    fn stencil_outside_domain_errors() {
        let dom = ChartDomain::box_times_circle(1.0);
        let f = FormField::zero(dom.clone());
        let opts = FdOptions::for_domain(&dom);
        assert!(ext_d(&f, [1.0, 0.0, 0.0], &opts).is_err());
        assert!(ext_d(&f, [0.0, 0.0, 0.0], &opts).is_ok());
    }

    #[test]
    fn d_squared_vanishes_on_polynomial_fields() {
        // Nested central differences are symmetric in the two axes, so d∘d
        // cancels to rounding noise (well under the step-scaled tolerance).
        let dom = ChartDomain::box_times_circle(1.0);
        let f = FormField::new(dom.clone(), |p| {
            let (x, y, t) = (p[0], p[1], p[2]);
            let mut v = MixedForm::scalar(c(x * x * y + t.sin(), y * y - x));
            v.set(0b001, c(x * y, y * t.cos()));
            v.set(0b010, c(y * y * y, x));
            v.set(0b110, c(x + y, x * y));
            v
        });
        let opts = FdOptions::for_domain(&dom);
        let df = f.exterior_derivative(opts);
        let ddf = ext_d(&df, [0.2, -0.3, 1.5], &opts).unwrap();
        let tol = opts.steps[0];
        assert!(ddf.norm() < tol, "||ddf|| = {}", ddf.norm());
    }

    #[test]
    fn leibniz_rule_with_grade_involution() {
        // d(ρ∧ψ) = dρ∧ψ + (grade involution ρ)∧dψ on random-ish fields.
        let dom = ChartDomain::box_times_circle(1.0);
        let rho = FormField::new(dom.clone(), |p| {
            let mut v = MixedForm::ZERO;
            v.set(0b001, c(p[0] * p[1], p[2].sin()));
            v.set(0b000, c(p[1], -p[0]));
            v
        });
        let psi = FormField::new(dom.clone(), |p| {
            let mut v = MixedForm::ZERO;
            v.set(0b010, c(p[0] + p[1] * p[1], 0.3 * p[2].cos()));
            v.set(0b100, c(p[0] * p[0], p[1]));
            v
        });
        let opts = FdOptions::for_domain(&dom);
        let p = [0.25, -0.4, 0.7];
        let lhs = ext_d(&rho.wedge(&psi), p, &opts).unwrap();
        let rhs = ext_d(&rho, p, &opts).unwrap().wedge(&psi.at(p))
            + rho.at(p).grade_involution().wedge(&ext_d(&psi, p, &opts).unwrap());
        assert!((lhs - rhs).norm() < 1e-6);
    }

    #[test]
    fn richardson_improves_truncation() {
        let dom = ChartDomain::box_times_circle(1.0);
        let f = FormField::new(dom.clone(), |p| MixedForm::scalar(c((3.0 * p[0]).sin(), 0.0)));
        let p = [0.2, 0.0, 0.0];
        let exact = MixedForm::dx(1).scale(c(3.0 * (3.0 * p[0] as f64).cos(), 0.0));
        let coarse = FdOptions::uniform(1e-3);
        let plain = (ext_d(&f, p, &coarse).unwrap() - exact).norm();
        let rich = (ext_d(&f, p, &coarse.with_richardson(true)).unwrap() - exact).norm();
        assert!(rich < plain / 10.0, "plain {plain}, richardson {rich}");
    }
}
