//! Charts, smooth fields of form values, finite-difference exterior
//! derivative, pullback along chart maps, and quadrature.
//!
//! Charts are rectangular parameter boxes with periodicity flags, optionally
//! masked (disk charts, excluded disks around surgery sites). Annulus charts
//! use polar coordinates `(r, θ, σ)`; disk charts use Cartesian coordinates
//! so that nothing is ever evaluated at a polar singularity.

mod deriv;
mod domain;
mod field;
mod map;
mod quad;

pub use deriv::{ext_d, ext_d_value, FdOptions};
pub use domain::{ChartDomain, DomainKind, GridIter};
pub use field::FormField;
pub use map::{polar_embed, pullback, pullback_value, ChartMap};
pub use quad::{integrate, integrate_slice, Slice};
