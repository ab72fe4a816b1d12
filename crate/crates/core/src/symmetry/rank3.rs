use super::group::{compose, GeneratedGroup};
use super::maps::{find_duality, GeometryMap, MapKind};
use super::plane::extend_point_map;
use crate::error::{Error, Result};
use crate::geometry::{symplectic_form, ProjectiveSpace3, SymplecticQuadrangle};

fn symplectic_transvection(w: &SymplecticQuadrangle, a: [u8; 4]) -> Vec<u16> {
    (0..15)
        .map(|p| {
            let x = w.vector(p);
            let c = symplectic_form(x, a);
            let y = [x[0] ^ (c & a[0]), x[1] ^ (c & a[1]), x[2] ^ (c & a[2]), x[3] ^ (c & a[3])];
            w.point_index(y).expect("nonzero image") as u16
        })
        .collect()
}

/// The collineation group of W(2), generated by the symplectic transvections
/// `x ↦ x + B(x,a)·a`.
pub fn quadrangle_collineations(w: &SymplecticQuadrangle) -> Result<GeneratedGroup> {
    let g = w.geometry();
    let gens = (0..15)
        .map(|p| extend_point_map(g, &symplectic_transvection(w, w.vector(p))).expect("transvections are collineations"))
        .collect();
    let group = GeneratedGroup::generate(g.vertex_count(), gens, 1000)?;
    if group.order() != 720 {
        return Err(Error::WitnessValidationFailed(format!("Sp(4,2) closure has order {}", group.order())));
    }
    Ok(group)
}

/// The collineation group of W(2) together with one duality; the dualities
/// are the duality followed by each collineation.
pub fn quadrangle_maps(w: &SymplecticQuadrangle) -> Result<(GeneratedGroup, GeometryMap)> {
    let group = quadrangle_collineations(w)?;
    let duality = find_duality(w.geometry())
        .ok_or_else(|| Error::WitnessValidationFailed("W(2) should be self-dual".into()))?;
    Ok((group, duality))
}

/// Automorphisms of PG(3,2) on its 65 vertices: PGL(4,2) and the polarity
/// `U ↦ U^⊥` of the standard dot product times each collineation.
#[derive(Debug, Clone)]
pub struct Rank3Group {
    pub collineations: GeneratedGroup,
    pub polarity: Vec<u16>,
}

impl Rank3Group {
    pub fn len(&self) -> usize {
        2 * self.collineations.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Map `i`: collineation `i`, or for `i ≥ |PGL|`, the polarity followed by
    /// collineation `i - |PGL|`.
    pub fn get(&self, i: usize) -> (MapKind, Vec<u16>) {
        let n = self.collineations.order();
        if i < n {
            (MapKind::Collineation, self.collineations.element(i).to_vec())
        } else {
            (MapKind::Duality, compose(&self.polarity, self.collineations.element(i - n)))
        }
    }
}

fn extend_space_map(space: &ProjectiveSpace3, points: &[u16]) -> Vec<u16> {
    (0..space.vertex_count())
        .map(|v| {
            let mask = space.vertex_mask(v);
            let image = (0..15).filter(|&p| mask & 1 << p != 0).fold(0u16, |m, p| m | 1 << points[p]);
            space.vertex_by_mask(image).expect("linear maps send subspaces to subspaces") as u16
        })
        .collect()
}

pub fn rank3_automorphisms(space: &ProjectiveSpace3) -> Result<Rank3Group> {
    let mut gens = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let points: Vec<u16> = (0..15)
                    .map(|p| {
                        let mut x = space.vector(p);
                        x[i] ^= x[j];
                        space.point_index(x).expect("nonzero image") as u16
                    })
                    .collect();
                gens.push(extend_space_map(space, &points));
            }
        }
    }
    let collineations = GeneratedGroup::generate(space.vertex_count(), gens, 30_000)?;
    if collineations.order() != 20160 {
        return Err(Error::WitnessValidationFailed(format!("GL(4,2) closure has order {}", collineations.order())));
    }
    let polarity = (0..space.vertex_count())
        .map(|v| {
            let mask = space.vertex_mask(v);
            let perp = (0..15)
                .filter(|&p| mask & 1 << p != 0)
                .fold(0x7fffu16, |acc, p| acc & space.plane_mask(p));
            space.vertex_by_mask(perp).expect("orthogonal complement of a proper subspace") as u16
        })
        .collect();
    Ok(Rank3Group { collineations, polarity })
}
