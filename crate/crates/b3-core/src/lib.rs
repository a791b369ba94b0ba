//! Numerical verification of B3-generalized complex structures on
//! 3-dimensional charts and glued atlases.
//!
//! The library is organized in layers:
//!
//! * [`algebra`] — pointwise graded algebra: mixed-degree complex forms in
//!   three variables, the Clifford action of `T ⊕ 1 ⊕ T*`, grade involution,
//!   reversal, the spinor pairing and the A/B-field endomorphisms.
//! * [`calculus`] — charts, smooth fields of form values, finite-difference
//!   exterior derivative, pullback along chart maps, and quadrature on boxes,
//!   annuli and boundary tori.
//! * [`structure`] — the structure checkers: purity, real index zero,
//!   integrability witnesses (plain and twisted), type, normalization,
//!   explicit 3-manifold conditions, stability and the type-change locus.
//! * [`symmetries`] — the A/B-field symmetry group, its composition law, the
//!   induced action on generalized vectors and twisted-integrability
//!   bookkeeping.
//! * [`surgery`] — the (p, ±1) surgery pipeline: cosymplectic neighbourhood
//!   model, gluing map, solid-torus spinor, gluing verification, twisting
//!   split, boundary periods and the multi-surgery combiner.
//! * [`catalog`] — named instances of the example structures, each wired to
//!   the full check suite.

pub mod algebra;
pub mod calculus;
pub mod catalog;
pub mod error;
pub mod structure;
pub mod surgery;
pub mod symmetries;
pub mod tolerances;

pub use algebra::{
    a_field_action, b_field_action, clifford_act, spinor_pairing, GenVector, MixedForm, Ops,
};
pub use calculus::{ChartDomain, ChartMap, FdOptions, FormField, Slice};
pub use error::{B3Error, Result};
pub use structure::{
    CheckConfig, CheckReport, LocusReport, SpinorStructure, TwistData, WitnessResult,
};
pub use surgery::{GluedStructure, PeriodLedger, SurgeryData, SurgerySite};

pub type C64 = num_complex::Complex64;
