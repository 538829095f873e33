//! Irreducible ordinary representations of two-step nilpotent groups and of
//! cyclic extensions of them, with exact cyclotomic entries.

mod character;
mod intertwine;
mod matrix;
mod rep;
mod tower;
mod two_step;

pub use character::{
    abelian_characters, beta, beta_form, central_characters, extend_character, is_two_step, radical, BetaForm, Character,
};
#[cfg(test)]
pub(crate) use character::tuples;
pub use intertwine::{commutant_dimension, equivalent, find_isomorphism, intertwiners, is_irreducible};
pub use matrix::{Mat, MonomialMatrix};
pub use rep::{export_matrix, ExportedMatrix, ImageTable, Representation, RepresentationExport};
pub use tower::{coset_order, extend_rep_cyclic, inertia, irr_cyclic_tower, Embedded, TowerEntry};
pub use two_step::{
    induce, irr_two_step, irr_two_step_over, irr_two_step_over_with, polarization, polarization_with, InductionData,
    IrrEntry,
};
