//! Compiles the snippets of the guide in `book/src` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/group-algebra.md")]
pub mod group_algebra {}
#[doc = include_str!("../../../book/src/products.md")]
pub mod products {}
#[doc = include_str!("../../../book/src/buildings.md")]
pub mod buildings {}
#[doc = include_str!("../../../book/src/equivariant.md")]
pub mod equivariant {}
#[doc = include_str!("../../../book/src/graded.md")]
pub mod graded {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
