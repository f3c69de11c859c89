//! Flag complexes of `F_p^n`: the order complex of proper nonzero subspaces, its unreduced
//! suspension, fixed subposets, integral homology, and the Steinberg cycles spanning top
//! homology.

mod complex;
mod cycles;
mod fixed;
mod snf;

pub use complex::{ChainComplex, ComplexMode, HomologyGroup, HomologyResult, OrderComplex};
pub use cycles::{
    act_on_top, complete_flags, cycle_check, join_product, join_product_check, prop10_check,
    steinberg_cycle, top_homology_iso_check, top_homology_module, transverse_basis,
    transverse_frame, TopChain, TopHomology, JOIN_SIGN,
};
pub use fixed::{common_fixed_space, unipotent_fixed_check};
pub use snf::{smith_invariants, SparseIntMatrix};
