//! The antibracket, first-order operators, distributions, and the bilinear forms.

pub mod bracket;
pub mod colored;
pub mod distribution;
pub mod forms;
pub mod operators;

pub use bracket::{antibracket, antibracket_pure, bracket_homog};
pub use colored::{eval_colored, eval_colored_scaled};
pub use distribution::{DeltaTerm, Distribution};
pub use forms::{cocycle_eval, eval_form, eval_multilinear, Cochain, FormId, GradedProduct, ResolventPiece};
pub use operators::{apply_operator, apply_pure, Operator, OperatorSpec};
