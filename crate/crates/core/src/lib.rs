//! Singular Artin monoids, their desingularization maps, and finite diagrammatic quotients.

pub mod binrel;
pub mod brauer;
pub mod combinat;
pub mod coxeter;
pub mod dualsym;
pub mod error;
pub mod groupalg;
pub mod hecke;
pub mod laurent;
pub mod rook;
pub mod sl2cat;
pub mod verify;
pub mod words;

pub use coxeter::{standard_matrix, CoxeterMatrix, CoxeterType, Family, GroupElement, OddComponents};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, PhiAssignment, PhiSet, XPoly};
pub use words::{Assignment, Letter, Relation, RelationFamily, RelationSet, SingularWord};
