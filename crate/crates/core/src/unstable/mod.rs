//! Unstable modules over the even Steenrod algebra.

mod free;
mod hom;
mod module;
mod nil;
mod presented;

pub use free::{brown_gitler, free_basis, BrownGitlerModule, FreeUnstableBasis};
pub use hom::{hom_space, relation_evaluation, HomSpace};
pub use module::{tensor_finite, Above, FiniteModule};
pub use nil::{nilpotence_degree, nilpotence_degree_fp, pi_bounds, NilVerdict, NilpotenceDegree, PiBounds};
pub use presented::{presentation, FinitelyPresentedModule, FpGenerator, Relation, RelationTerm};
