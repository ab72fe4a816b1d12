//! Coxeter systems: word problem, descents, parabolic subgroups, diagram
//! automorphisms and Coxeter-graph distances.

mod classify;
mod matrix;
mod oracle;
mod system;
mod table;

pub use matrix::{CoxeterMatrix, Order};
pub use oracle::{oracle_realize, PermutationOracle};
pub use system::{CoxeterSystem, DescentLemmaReport, DiagramAutomorphism, ParabolicType, Side};
pub use table::{CoxeterGroupTable, Elem};
pub use word::{CanonicalElement, GenSet, Word};

mod word;
