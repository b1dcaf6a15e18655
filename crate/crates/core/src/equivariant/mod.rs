//! Representations of finite groups over characteristic-zero rings and the
//! composition law in their representation rings.

mod functor;
mod group;
mod rep;

pub use functor::{apply_polynomial_functor, FunctorWord};
pub use group::{FiniteGroup, GroupKind};
pub use rep::{
    k0_equal, rational_irreducibles, standard_reps, verify_composition_rg, Character, CompositionCheck, GRep,
    RepElement, MAX_COMPOSITE_RANK,
};
