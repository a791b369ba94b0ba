//! Pointwise graded algebra of mixed-degree complex forms in three variables.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * A [`MixedForm`] stores one complex coefficient per subset of `{1,2,3}`,
//!   indexed by a 3-bit mask (bit `i` set means `dx^{i+1}` is a factor).
//!   Basis monomials are wedges of coordinate one-forms in ascending index
//!   order, so every coefficient is stored exactly once.
//! * All signs (wedge, interior product, reversal) derive from that single
//!   ascending-order convention; unit tests pin them against a brute-force
//!   permutation-sign oracle.
//! * Scalars are complex throughout. Real forms are mixed forms with
//!   vanishing imaginary parts, checked where a precondition demands it.

mod gen_vector;
mod mixed_form;
mod spinor_ops;

pub use gen_vector::GenVector;
pub use mixed_form::{wedge_sign, MixedForm};
pub use spinor_ops::{
    a_field_action, a_field_action_in, action_matrix, b_field_action, clifford_act,
    spinor_pairing, spinor_pairing_in, Ops,
};
