//! Displacement of half-swapping automorphisms of twin buildings, opposite
//! residues, and the checks on the rank 2 and rank 3 models.

mod rank2;
mod simplex;
mod twin;

pub use rank2::{
    baer_polarity_checks, beukje_condition, min_point_displacement, verify_absolute_point_theorem,
    verify_point_displacement, verify_polarities, scan_dualities, AbsolutePointScan, BeukjeCondition, DisplacementScan,
};
pub use simplex::{fixed_simplex_search, verify_fixed_simplex, FixedSimplexScan};
pub use twin::{
    displacement_spectrum, find_opposite_residue, is_j_opposite, local_descent, verify_local_descent, verify_main0, verify_main2,
    verify_main2_all, verify_no_opposite_automorphism, DisplacementSpectrum, OppositeResidueWitness,
};
