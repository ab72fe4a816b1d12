//! Exhaustive verification toolkit for Coxeter systems, finite incidence
//! geometries and spherical/twin buildings, centred on which automorphisms
//! can map chambers, residues or points to opposite ones.

pub mod building;
pub mod coxeter;
pub mod error;
pub mod field;
pub mod geometry;
pub mod models;
pub mod opposition;
pub mod report;
pub mod symmetry;

pub use error::{Error, Result};
