//! Verification toolkit for deformations of the antibracket on `DE`, the space of
//! Grassmann-valued functions `ξ f₀(x) + f₁(x)` with `f₀` compactly supported.

pub mod antibracket;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod grassmann;
pub mod report;
pub mod symfun;
pub mod testfns;

pub use error::{Error, Result};
