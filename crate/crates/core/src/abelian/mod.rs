//! Finitely generated abelian groups of weights.
//!
//! Subgroups of `Q^t` and `(Q*)^t` are reduced to integer lattices and
//! analysed with the Smith normal form.

mod group;
mod matrix;
mod snf;

pub use group::{
    encode_multiplicative, group_from_generators, monoid_group_closure, Ambient, Coordinates,
    GroupStructure, MultiplicativeWeight, Weight,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
