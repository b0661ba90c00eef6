//! Graded coefficient ring and the superfunction algebra on `DE`.

pub mod ring;
pub mod superfun;

pub use ring::{ring_inverse_unit, ring_mul, DeformRing, Monomial, Truncation};
pub use superfun::{parity_of, superfun_product, xi_integral, Homog, Parity, ParityOf, PureFun, SuperFun, XiWeight};
