//! The small self-twinned models together with enumerations of their
//! automorphisms.

use std::fmt;
use std::str::FromStr;

use crate::building::{building_from_geometry, flag_building_rank3, BuildingAutomorphism, FlagComplex, TwinModel};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem};
use crate::error::{Error, Result};
use crate::geometry::{IncidenceGeometry, ProjectivePlane, SymplecticQuadrangle};
use crate::symmetry::{
    collineation_group, compose, quadrangle_maps, rank3_automorphisms, standard_correlation, GeneratedGroup,
    GeometryMap, MapKind, Rank3Group,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Pg,
    Gq,
    A3,
    Thin,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pg" => Ok(ModelKind::Pg),
            "gq" => Ok(ModelKind::Gq),
            "a3" => Ok(ModelKind::A3),
            "thin" => Ok(ModelKind::Thin),
            _ => Err(Error::Parse(format!("unknown model {s:?}"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Pg => "pg",
            ModelKind::Gq => "gq",
            ModelKind::A3 => "a3",
            ModelKind::Thin => "thin",
        })
    }
}

#[allow(clippy::large_enum_variant)]
enum Maps {
    Rank2 { geometry: IncidenceGeometry, group: GeneratedGroup, duality: GeometryMap },
    Space(Rank3Group),
    Thin(Vec<BuildingAutomorphism>),
}

/// A twin model with an indexed list of automorphisms of its underlying
/// building. Map `i` acts on the twin by [`TwinModel::swap_lift`].
pub struct DeskModel {
    name: String,
    twin: TwinModel,
    complex: Option<FlagComplex>,
    maps: Maps,
}

impl DeskModel {
    /// PG(2,q) with all collineations followed by all dualities.
    pub fn pg(q: u32) -> Result<Self> {
        let plane = ProjectivePlane::new(q)?;
        let group = collineation_group(&plane)?;
        let duality = standard_correlation(&plane);
        let geometry = plane.geometry().clone();
        Self::rank2(format!("pg{q}"), geometry, group, duality)
    }

    /// The symplectic quadrangle W(2) with its 720 collineations and 720 dualities.
    pub fn gq() -> Result<Self> {
        let w = SymplecticQuadrangle::new();
        let (group, duality) = quadrangle_maps(&w)?;
        Self::rank2("gq2".into(), w.geometry().clone(), group, duality)
    }

    fn rank2(name: String, geometry: IncidenceGeometry, group: GeneratedGroup, duality: GeometryMap) -> Result<Self> {
        let complex = building_from_geometry(&geometry)?;
        let twin = TwinModel::self_twin(complex.shared_building())?;
        Ok(DeskModel { name, twin, complex: Some(complex), maps: Maps::Rank2 { geometry, group, duality } })
    }

    /// The flag building of PG(3,2) with its 40320 collineations and dualities.
    pub fn a3() -> Result<Self> {
        let (space, complex) = flag_building_rank3(2)?;
        let group = rank3_automorphisms(&space)?;
        let twin = TwinModel::self_twin(complex.shared_building())?;
        Ok(DeskModel { name: "a3".into(), twin, complex: Some(complex), maps: Maps::Space(group) })
    }

    /// The thin twin building of a finite Coxeter system; the maps are
    /// `v ↦ w·τ(v)` over all `w ∈ W` and diagram automorphisms `τ`.
    pub fn thin(matrix: CoxeterMatrix, name: &str) -> Result<Self> {
        let system = CoxeterSystem::new(matrix.clone());
        let twin = TwinModel::thin(&system)?;
        let table = twin.table();
        let mut maps = Vec::new();
        for tau in matrix.diagram_automorphisms() {
            for w in table.elements() {
                let image = table.elements().map(|v| table.mul(w, table.twist(&tau, v)).0 as u32).collect();
                maps.push(BuildingAutomorphism::new(twin.plus(), image, tau.clone())?);
            }
        }
        Ok(DeskModel { name: name.into(), twin, complex: None, maps: Maps::Thin(maps) })
    }

    /// `pg` (any supported `q`), `gq`, `a3`, or `thin` of type `A2` or `B2`.
    pub fn load(kind: ModelKind, q: Option<u32>, thin_type: Option<&str>) -> Result<Self> {
        match kind {
            ModelKind::Pg => Self::pg(q.unwrap_or(2)),
            ModelKind::Gq => match q {
                None | Some(2) => Self::gq(),
                Some(q) => Err(Error::Unsupported(format!("the symplectic quadrangle over GF({q})"))),
            },
            ModelKind::A3 => match q {
                None | Some(2) => Self::a3(),
                Some(q) => Err(Error::Unsupported(format!("PG(3,{q})"))),
            },
            ModelKind::Thin => match thin_type.unwrap_or("A2") {
                "A2" | "a2" => Self::thin(CoxeterMatrix::type_a(2), "thin-a2"),
                "B2" | "b2" => Self::thin(CoxeterMatrix::type_b(2), "thin-b2"),
                other => Err(Error::Parse(format!("unknown thin type {other:?}"))),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn twin(&self) -> &TwinModel {
        &self.twin
    }

    pub fn complex(&self) -> Option<&FlagComplex> {
        self.complex.as_ref()
    }

    pub fn geometry(&self) -> Option<&IncidenceGeometry> {
        match &self.maps {
            Maps::Rank2 { geometry, .. } => Some(geometry),
            _ => None,
        }
    }

    pub fn is_thick(&self) -> bool {
        self.twin.plus().is_thick()
    }

    pub fn map_count(&self) -> usize {
        match &self.maps {
            Maps::Rank2 { group, .. } => 2 * group.order(),
            Maps::Space(g) => g.len(),
            Maps::Thin(v) => v.len(),
        }
    }

    /// Map `i` on the vertices of the geometry, for the geometric models.
    pub fn vertex_map(&self, i: usize) -> Option<(MapKind, Vec<u16>)> {
        match &self.maps {
            Maps::Rank2 { group, duality, .. } => {
                let n = group.order();
                Some(if i < n {
                    (MapKind::Collineation, group.element(i).to_vec())
                } else {
                    (MapKind::Duality, compose(duality.image(), group.element(i - n)))
                })
            }
            Maps::Space(g) => Some(g.get(i)),
            Maps::Thin(_) => None,
        }
    }

    /// Map `i` as a geometry automorphism, for the rank 2 geometric models.
    pub fn geometry_map(&self, i: usize) -> Option<GeometryMap> {
        let geometry = self.geometry()?;
        let (_, image) = self.vertex_map(i)?;
        GeometryMap::new(geometry, image).ok()
    }

    /// Map `i` acting on the chambers of the underlying building.
    pub fn building_map(&self, i: usize) -> Result<BuildingAutomorphism> {
        match (&self.maps, &self.complex) {
            (Maps::Thin(v), _) => Ok(v[i].clone()),
            (_, Some(complex)) => complex.lift(&self.vertex_map(i).expect("geometric model").1),
            _ => unreachable!("geometric models carry a flag complex"),
        }
    }

    /// Map `i` as a half-swapping automorphism of the twin model.
    pub fn twin_map(&self, i: usize) -> Result<BuildingAutomorphism> {
        self.twin.swap_lift(&self.building_map(i)?)
    }
}
