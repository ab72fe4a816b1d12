use std::collections::HashMap;
use std::sync::Arc;

use super::{Building, BuildingAutomorphism};
use crate::coxeter::{CoxeterGroupTable, CoxeterMatrix, CoxeterSystem, DiagramAutomorphism};
use crate::error::{Error, Result};
use crate::geometry::{validate_generalized_polygon, IncidenceGeometry, ProjectiveSpace3};

/// A building whose chambers are complete flags of a typed incidence structure.
///
/// Vertices are numbered in consecutive blocks, one block per type; a flag
/// lists one vertex per type, in type order. Chambers are the flags in sorted
/// order, and two chambers are `s`-adjacent iff they differ exactly in their
/// type-`s` vertex.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    blocks: Vec<usize>,
    flags: Vec<Vec<u16>>,
    building: Arc<Building>,
}

impl FlagComplex {
    /// `blocks[i]..blocks[i+1]` are the vertex ids of type `i`.
    pub fn new(matrix: CoxeterMatrix, blocks: Vec<usize>, mut flags: Vec<Vec<u16>>) -> Result<Self> {
        let rank = matrix.rank();
        if blocks.len() != rank + 1 || blocks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGeometry("vertex blocks do not match the rank".into()));
        }
        for f in &flags {
            let typed = f.len() == rank && f.iter().enumerate().all(|(i, &v)| (blocks[i]..blocks[i + 1]).contains(&(v as usize)));
            if !typed {
                return Err(Error::InvalidGeometry(format!("flag {f:?} is not typed by the vertex blocks")));
            }
        }
        flags.sort_unstable();
        flags.dedup();
        let panel_of = (0..rank)
            .map(|s| {
                let mut ids: HashMap<Vec<u16>, u32> = HashMap::new();
                flags
                    .iter()
                    .map(|f| {
                        let mut key = f.clone();
                        key[s] = u16::MAX;
                        let next = ids.len() as u32;
                        *ids.entry(key).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let table = Arc::new(CoxeterGroupTable::new(&CoxeterSystem::new(matrix))?);
        let building = Building::from_panels(table, flags.len(), panel_of)?;
        Ok(FlagComplex { blocks, flags, building: Arc::new(building) })
    }

    pub fn building(&self) -> &Building {
        &self.building
    }

    pub fn shared_building(&self) -> Arc<Building> {
        Arc::clone(&self.building)
    }

    pub fn vertex_count(&self) -> usize {
        *self.blocks.last().unwrap()
    }

    pub fn vertex_type(&self, v: usize) -> usize {
        self.blocks.partition_point(|&start| start <= v) - 1
    }

    pub fn flag(&self, c: usize) -> &[u16] {
        &self.flags[c]
    }

    pub fn chamber_of(&self, flag: &[u16]) -> Option<usize> {
        self.flags.binary_search_by(|f| f.as_slice().cmp(flag)).ok()
    }

    /// Lifts a permutation of the vertices to the chambers; the induced type
    /// permutation must be a diagram automorphism.
    pub fn lift(&self, image: &[u16]) -> Result<BuildingAutomorphism> {
        let n = self.vertex_count();
        if image.len() != n {
            return Err(Error::IncompatibleBuilding(format!("map acts on {} vertices, expected {n}", image.len())));
        }
        let rank = self.blocks.len() - 1;
        let sigma: Vec<u8> = (0..rank).map(|s| self.vertex_type(image[self.blocks[s]] as usize) as u8).collect();
        for v in 0..n {
            if self.vertex_type(image[v] as usize) != sigma[self.vertex_type(v)] as usize {
                return Err(Error::IncompatibleBuilding(format!("vertex {v} is sent to a vertex of the wrong type")));
            }
        }
        let sigma = DiagramAutomorphism::new(self.building.system().matrix(), sigma)
            .map_err(|e| Error::IncompatibleBuilding(e.to_string()))?;
        let mut chamber_image = Vec::with_capacity(self.flags.len());
        let mut buf = vec![0u16; rank];
        for f in &self.flags {
            for (s, &v) in f.iter().enumerate() {
                buf[sigma.apply(s)] = image[v as usize];
            }
            let c = self
                .chamber_of(&buf)
                .ok_or_else(|| Error::IncompatibleBuilding(format!("flag {f:?} is not mapped to a flag")))?;
            chamber_image.push(c as u32);
        }
        BuildingAutomorphism::new(&self.building, chamber_image, sigma)
    }
}

/// Flag building of a generalized `m`-gon: type 0 changes the point, type 1
/// changes the line, and the Coxeter type is `I2(m)`.
pub fn building_from_geometry(geometry: &IncidenceGeometry) -> Result<FlagComplex> {
    let m = geometry.gonality();
    if !validate_generalized_polygon(geometry, m) {
        return Err(Error::InvalidPolygon(format!("gonality {m} is not admissible")));
    }
    let p = geometry.point_count();
    let flags = geometry.flags().iter().map(|f| vec![f.point as u16, (p + f.line as usize) as u16]).collect();
    FlagComplex::new(CoxeterMatrix::dihedral(m as u32), vec![0, p, geometry.vertex_count()], flags)
}

/// Complete flags (point, line, plane) of PG(3,q); type `A3`. Only `q = 2`.
pub fn flag_building_rank3(q: u32) -> Result<(ProjectiveSpace3, FlagComplex)> {
    if q != 2 {
        return Err(Error::Unsupported(format!("rank-3 flag building over GF({q})")));
    }
    let space = ProjectiveSpace3::new();
    let flags = space.flags().iter().map(|f| f.to_vec()).collect();
    let complex = FlagComplex::new(CoxeterMatrix::type_a(3), vec![0, 15, 50, 65], flags)?;
    Ok((space, complex))
}
