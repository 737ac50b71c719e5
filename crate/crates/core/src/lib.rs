pub mod algebra;
pub mod bmn;
pub mod cambrian;
pub mod dot;
pub mod embedding;
pub mod error;
pub mod identities;
pub mod json;
pub mod lattice;
pub mod measures;
pub mod pairset;
pub mod reproduce;
pub mod weak_order;

pub use algebra::{LatticeOps, PairSetAlgebra};
pub use error::{Error, Result};
pub use lattice::{Congruence, FiniteLattice, LatticeMap, SetMeet};
pub use pairset::PairSet;
