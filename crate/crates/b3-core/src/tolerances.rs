//! Pinned numerical tolerances.
//!
//! Every threshold used by the check suite lives here, grouped by what limits
//! it: exact algebra is bounded by f64 rounding, finite-difference residuals
//! by the O(step²) truncation of central differences, and quadrature of
//! constant integrands on periodic tori by rounding alone.

/// Identities that involve no differentiation: Clifford relation, symmetry
/// composition laws, pairing invariance. Pure f64 arithmetic on O(1) data.
pub const EXACT_ALGEBRA: f64 = 1e-12;

/// Relative singular-value cutoff for rank decisions (purity, witness solve).
/// Leaves headroom above accumulated rounding in 16x14 decompositions.
pub const RANK_REL_CUTOFF: f64 = 1e-8;

/// Relative threshold below which a degree component counts as absent when
/// computing the type of a spinor.
pub const TYPE_REL_CUTOFF: f64 = 1e-8;

/// Real-index check: |(rho, conj rho)| must exceed this times ||rho||^2.
pub const REAL_INDEX_MIN: f64 = 1e-6;

/// Pointwise integrability residual on closed-form catalog fields
/// (finite differences at the default step give ~1e-8).
pub const WITNESS_RESIDUAL: f64 = 1e-6;

/// Twisted integrability residual on glued structures, where the cutoff
/// profiles steepen the coefficient derivatives.
pub const TWISTED_WITNESS_RESIDUAL: f64 = 1e-5;

/// Degreewise 3-manifold conditions (pointwise products of field values and
/// first finite differences).
pub const DEGREEWISE_RESIDUAL: f64 = 1e-6;

/// Lower bound for the nondegeneracy condition Re(rho0*conj(rho3) -
/// rho1 ^ conj(rho2)), normalized by ||rho||^2.
pub const DEGREEWISE_B_MIN: f64 = 1e-2;

/// Residual for d(rho/rho0) = 0 away from the type-change locus.
pub const NORMALIZED_CLOSED_RESIDUAL: f64 = 1e-6;

/// |rho0| cutoff (relative to ||rho||) below which a point is handled by the
/// type-1 local checks instead of the normalized-closed check.
pub const RHO0_CUTOFF: f64 = 1e-2;

/// Relative residual of the gluing identity on the overlap annulus with
/// analytic jacobians.
pub const GLUE_RESIDUAL: f64 = 1e-6;

/// Chart-overlap consistency: rho_i = transition * pullback(rho_j).
pub const OVERLAP_RESIDUAL: f64 = 1e-8;

/// Absolute error for boundary-torus periods of constant integrands
/// (periodic trapezoid rule is exact up to rounding).
pub const PERIOD_ABS: f64 = 1e-10;

/// Absolute bound for the exactness probes of the twisting two-form.
pub const F_PROBE_ABS: f64 = 1e-8;

/// Transversality threshold: ||d rho0|| at a located zero.
pub const LOCUS_GRAD_MIN: f64 = 0.5;

/// Complex-coordinate criterion: ||Re d(rho0) ^ Im d(rho0)|| at a zero.
pub const LOCUS_AREA_MIN: f64 = 0.1;

/// Default finite-difference step, as a fraction of the coordinate range.
pub const FD_STEP_FRACTION: f64 = 1e-4;

/// Default grid resolution per axis for check sweeps.
pub const DEFAULT_GRID: usize = 32;

/// Default resolution per axis for quadrature of non-constant integrands.
pub const QUAD_GRID: usize = 128;
