//! Commutative local algebras, their modules, and the functors between them.

mod algebra;
mod hom;
mod iso;
mod module;
mod natural;
mod tensor;

pub use algebra::{same_algebra, validate_algebra, Algebra, AlgebraReport};
pub use hom::{extend_through, hom_module, lift_through, HomSpace};
pub use iso::{find_isomorphism, invariants, IsoSearch, DEFAULT_TRIALS};
pub use module::{
    cokernel, direct_sum, image, injective_envelope, kernel, projective_cover,
    radical_submodule, ModMap, Module, Top,
};
pub use natural::{
    biduality, biduality_map, evaluation_map, homothety_map, unit_map, Biduality,
};
pub use tensor::{kron, tensor_module, Tensor};
