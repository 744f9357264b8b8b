//! Finite posets, sectional pseudocomplements and the implicative algebras
//! built from them: weak BCK*-algebras, relative pseudocomplementation,
//! condition S and residuated groupoids.
//!
//! Everything is exhaustive. Posets are enumerated up to isomorphism, tables
//! are generated by constrained backtracking, and each check reports the
//! least violating assignment.

pub mod adjunction;
pub mod algebra;
pub mod axioms;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod hunt;
pub mod parse;
pub mod poset;
pub mod report;
pub mod search;
pub mod sectional;
pub mod structure;
pub mod table;
pub mod term;
pub mod varieties;
pub mod verify;

pub use algebra::OrderedAlgebra;
pub use axioms::{AlgebraClass, AxiomId};
pub use error::{Error, OpKind, Result};
pub use exec::Exec;
pub use poset::{Elem, OrderClass, Poset};
pub use report::{Report, Verdict, Witness};
pub use table::{Lookup, OpTable, PartialOpTable};
pub use term::{Law, Term};
