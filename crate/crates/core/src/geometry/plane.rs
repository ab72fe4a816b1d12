use super::IncidenceGeometry;
use crate::error::Result;
use crate::field::FiniteField;

/// The Desarguesian plane PG(2,q).
///
/// Points and lines share one list of normalized coordinate vectors (last
/// nonzero entry 1, sorted lexicographically): point `i` is `⟨v_i⟩` and line
/// `i` is `{x : v_i·x = 0}`.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    field: FiniteField,
    coords: Vec<[u16; 3]>,
    geometry: IncidenceGeometry,
}

impl ProjectivePlane {
    pub fn new(q: u32) -> Result<Self> {
        let field = FiniteField::new(q)?;
        let q16 = q as u16;
        let mut coords = Vec::new();
        for a in 0..q16 {
            for b in 0..q16 {
                coords.push([a, b, 1]);
            }
            coords.push([a, 1, 0]);
        }
        coords.push([1, 0, 0]);
        coords.sort_unstable();
        let lines = coords
            .iter()
            .map(|n| {
                (0..coords.len() as u32)
                    .filter(|&i| field.dot(n, &coords[i as usize]) == 0)
                    .collect()
            })
            .collect();
        let geometry = IncidenceGeometry::new(coords.len(), lines)?;
        Ok(ProjectivePlane { field, coords, geometry })
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn geometry(&self) -> &IncidenceGeometry {
        &self.geometry
    }

    /// Normalized coordinates of point `i` (equivalently, the normal of line `i`).
    pub fn coords(&self, i: usize) -> [u16; 3] {
        self.coords[i]
    }

    pub fn normalize(&self, v: [u16; 3]) -> Option<[u16; 3]> {
        let last = v.iter().rposition(|&x| x != 0)?;
        let scale = self.field.inv(v[last]);
        Some(v.map(|x| self.field.mul(x, scale)))
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn point_index(&self, v: [u16; 3]) -> Option<usize> {
        let n = self.normalize(v)?;
        self.coords.binary_search(&n).ok()
    }

    /// Index of the line with the given nonzero normal vector.
    pub fn line_index(&self, normal: [u16; 3]) -> Option<usize> {
        self.point_index(normal)
    }
}
