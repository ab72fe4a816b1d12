//! Collineation and duality groups of the built-in geometries, absolute
//! points, order decompositions and the classification of involutions.

mod group;
mod maps;
mod plane;
mod rank3;

pub use group::{compose, inverse, is_identity, order, power, GeneratedGroup};
pub use maps::{absolute_points, find_duality, lift_to_building, map_order, GeometryMap, MapKind};
pub use plane::{
    classify_involutory_collineation, collineation_group, extend_point_map, fixed_substructure,
    involutory_collineations, order_decomposition, semilinear_point_map, standard_correlation, DualityCoset,
    FixedSubstructure, InvolutionCase, InvolutionClass, OrderDecomposition, Semilinear,
};
pub use rank3::{quadrangle_collineations, quadrangle_maps, rank3_automorphisms, Rank3Group};

#[cfg(test)]
mod tests;
