//! Finite universal algebras, their endomorphism semigroups and the
//! translational hulls of subsemigroups of those.

pub mod algebra;
pub mod audit;
pub mod cases;
pub mod conditions;
pub mod config;
pub mod corpus;
pub mod error;
pub mod hull;
pub mod select;
pub mod semigroup;

pub use error::{HullError, Result};
