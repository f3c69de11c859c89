pub mod algebra;
pub mod equivariant;
pub mod error;
pub mod flag;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod steinberg;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
