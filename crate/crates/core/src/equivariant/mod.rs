//! Finite `p`-groups, homomorphisms into vector groups and matrix groups, the family of
//! normal subgroups with elementary abelian quotient, and the identification of
//! `Hom(G, F_p^n)` with a disjoint union of Stiefel varieties.

mod family;
mod homs;
mod pgroup;
mod stiefel;

pub use family::{frattini_family, FamilyMember, FrattiniFamily};
pub use homs::{
    centralizer_of_image, contractible_summand_report, enumerate_homs, fixed_point_index,
    fixed_point_index_report, graph_subgroup, GroupHom, HomClass, HomTarget, VectorGroup,
};
pub use pgroup::{make_pgroup, CayleyTableFile, GroupSpec, PGroup};
pub use stiefel::{
    gl_generators, hom_partition_check, product_compatibility_check, product_compatibility_sweep,
    quotient_basis, stiefel_point, theorem15_graded_check,
};
