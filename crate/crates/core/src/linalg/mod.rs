//! Exact linear algebra over prime fields: matrices, canonical subspaces, the
//! distinguished subgroups of `GL_n(F_p)` and Stiefel varieties.

mod flag;
mod groups;
mod matrix;
mod prime;
mod subgroups;
mod subspace;

pub use flag::Flag;
pub use groups::{
    bruhat_check, bruhat_factor, enumerate_group, permutation_sign, permutations, shuffles,
    stiefel, BruhatFactorization, GroupKind, MatrixGroup,
};
pub use matrix::{block_diagonal, block_embed, GfMatrix, Rref};
pub use prime::{gaussian_binomial, general_linear_order, stiefel_count, Prime};
pub use subgroups::{all_subgroups, conjugate, normalizer, p_subgroups_up_to_conjugacy};
pub use subspace::{enumerate_subspaces, Subspace};
