use std::sync::Arc;

use num_complex::Complex64;

use super::deriv::FdOptions;
use super::domain::ChartDomain;
use crate::algebra::MixedForm;

type EvalFn = dyn Fn([f64; 3]) -> MixedForm + Send + Sync;

/// A smooth field of mixed-form values over a chart, supplied as a
/// closed-form evaluator. Immutable; evaluation is pure.
#[derive(Clone)]
pub struct FormField {
    pub domain: ChartDomain,
    eval: Arc<EvalFn>,
}

impl FormField {
    pub fn new(
        domain: ChartDomain,
        eval: impl Fn([f64; 3]) -> MixedForm + Send + Sync + 'static,
    ) -> Self {
        Self {
            domain,
            eval: Arc::new(eval),
        }
    }

    pub fn constant(domain: ChartDomain, value: MixedForm) -> Self {
        Self::new(domain, move |_| value)
    }

    pub fn zero(domain: ChartDomain) -> Self {
        Self::constant(domain, MixedForm::ZERO)
    }

    pub fn at(&self, p: [f64; 3]) -> MixedForm {
        (self.eval)(p)
    }

    /// Pointwise unary transformation, same domain.
    pub fn map(&self, f: impl Fn(MixedForm) -> MixedForm + Send + Sync + 'static) -> Self {
        let inner = self.eval.clone();
        Self::new(self.domain.clone(), move |p| f(inner(p)))
    }

    /// Pointwise combination of two fields on the same chart.
    pub fn zip(
        &self,
        other: &FormField,
        f: impl Fn(MixedForm, MixedForm) -> MixedForm + Send + Sync + 'static,
    ) -> Self {
        let a = self.eval.clone();
        let b = other.eval.clone();
        Self::new(self.domain.clone(), move |p| f(a(p), b(p)))
    }

    pub fn wedge(&self, other: &FormField) -> Self {
        self.zip(other, |a, b| a.wedge(&b))
    }

    pub fn add(&self, other: &FormField) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FormField) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map(move |v| v.scale(z))
    }

    /// Pointwise multiplication by a complex function.
    pub fn scale_fn(&self, f: impl Fn([f64; 3]) -> Complex64 + Send + Sync + 'static) -> Self {
        let inner = self.eval.clone();
        Self::new(self.domain.clone(), move |p| inner(p).scale(f(p)))
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn degree_part(&self, k: usize) -> Self {
        self.map(move |v| v.degree_part(k))
    }

    /// The field `ρ / ρ₀`. Caller guarantees the degree-0 part does not
    /// vanish on the region where this is evaluated.
    pub fn divide_by_degree0(&self) -> Self {
        self.map(|v| {
            let r0 = v.get(0);
            v.scale(1.0 / r0)
        })
    }

    /// Derived field evaluating the finite-difference exterior derivative at
    /// each point. Domain bounds are not re-checked per evaluation; sweeps
    /// stay a stencil-width inside the chart.
    pub fn exterior_derivative(&self, opts: FdOptions) -> Self {
        let inner = self.clone();
        Self::new(self.domain.clone(), move |p| {
            super::deriv::ext_d_value(&inner, p, &opts)
        })
    }
}

impl std::fmt::Debug for FormField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormField")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}
