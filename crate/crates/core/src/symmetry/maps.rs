use serde::Serialize;

use super::group::{compose, is_identity, order, power};
use crate::building::{BuildingAutomorphism, FlagComplex};
use crate::error::{Error, Result};
use crate::geometry::IncidenceGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MapKind {
    Collineation,
    Duality,
}

/// An automorphism of a rank-2 geometry, as a permutation of the vertex ids
/// (points `0..P`, then lines). A duality exchanges the two blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeometryMap {
    kind: MapKind,
    points: usize,
    image: Vec<u16>,
}

impl GeometryMap {
    /// Validates bijectivity and that incidence is preserved.
    pub fn new(geometry: &IncidenceGeometry, image: Vec<u16>) -> Result<Self> {
        let p = geometry.point_count();
        let v = geometry.vertex_count();
        let mut seen = vec![false; v];
        if image.len() != v || !image.iter().all(|&x| (x as usize) < v && !std::mem::replace(&mut seen[x as usize], true)) {
            return Err(Error::PreconditionViolated("map is not a permutation of the vertices".into()));
        }
        let kind = if (image[0] as usize) < p { MapKind::Collineation } else { MapKind::Duality };
        let block_ok = (0..v).all(|x| {
            let to_point = (image[x] as usize) < p;
            let is_point = x < p;
            (is_point == to_point) == (kind == MapKind::Collineation)
        });
        if !block_ok {
            return Err(Error::PreconditionViolated("map mixes points and lines".into()));
        }
        let map = GeometryMap { kind, points: p, image };
        for f in geometry.flags() {
            let a = map.image[f.point as usize] as usize;
            let b = map.image[p + f.line as usize] as usize;
            let (pt, ln) = if kind == MapKind::Collineation { (a, b - p) } else { (b, a - p) };
            if !geometry.incident(pt, ln) {
                return Err(Error::PreconditionViolated(format!("flag {f:?} is not mapped to a flag")));
            }
        }
        Ok(map)
    }

    pub(crate) fn from_parts(kind: MapKind, points: usize, image: Vec<u16>) -> Self {
        GeometryMap { kind, points, image }
    }

    pub fn identity(geometry: &IncidenceGeometry) -> Self {
        GeometryMap {
            kind: MapKind::Collineation,
            points: geometry.point_count(),
            image: (0..geometry.vertex_count() as u16).collect(),
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn image(&self) -> &[u16] {
        &self.image
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    /// Vertex id of the image of point `p`.
    pub fn point_image(&self, p: usize) -> usize {
        self.image[p] as usize
    }

    /// Vertex id of the image of line `l`.
    pub fn line_image(&self, l: usize) -> usize {
        self.image[self.points + l] as usize
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GeometryMap) -> GeometryMap {
        let kind = if self.kind == next.kind { MapKind::Collineation } else { MapKind::Duality };
        GeometryMap { kind, points: self.points, image: compose(&self.image, &next.image) }
    }

    pub fn pow(&self, e: u64) -> GeometryMap {
        let kind = if self.kind == MapKind::Duality && e % 2 == 1 { MapKind::Duality } else { MapKind::Collineation };
        GeometryMap { kind, points: self.points, image: power(&self.image, e) }
    }

    pub fn order(&self) -> u64 {
        order(&self.image)
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.image)
    }

    pub fn commutes_with(&self, other: &GeometryMap) -> bool {
        compose(&self.image, &other.image) == compose(&other.image, &self.image)
    }
}

/// Least `n ≥ 1` with `map^n = id`.
pub fn map_order(map: &GeometryMap) -> u64 {
    map.order()
}

/// Points incident with their image line.
pub fn absolute_points(geometry: &IncidenceGeometry, duality: &GeometryMap) -> Result<Vec<u32>> {
    if duality.kind() != MapKind::Duality {
        return Err(Error::PreconditionViolated("absolute points need a duality".into()));
    }
    let p = geometry.point_count();
    Ok((0..p).filter(|&x| geometry.incident(x, duality.point_image(x) - p)).map(|x| x as u32).collect())
}

/// Action on flags; `σ` is the identity for collineations and the type swap for dualities.
pub fn lift_to_building(map: &GeometryMap, complex: &FlagComplex) -> Result<BuildingAutomorphism> {
    complex.lift(map.image())
}

/// Some duality of the geometry, by backtracking over the incidence graph, or
/// `None` if the geometry is not self-dual.
pub fn find_duality(geometry: &IncidenceGeometry) -> Option<GeometryMap> {
    let p = geometry.point_count();
    let v = geometry.vertex_count();
    if p != geometry.line_count() {
        return None;
    }
    let neighbours = |x: usize| -> Vec<usize> {
        if x < p {
            geometry.lines_through(x).iter().map(|&l| p + l as usize).collect()
        } else {
            geometry.line(x - p).iter().map(|&q| q as usize).collect()
        }
    };
    let adj: Vec<Vec<usize>> = (0..v).map(neighbours).collect();
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; v];
    let mut seen = vec![false; v];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &y in &adj[order[i]] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = order[i];
                order.push(y);
            }
        }
        i += 1;
    }
    let mut image = vec![usize::MAX; v];
    let mut used = vec![false; v];
    fn search(
        depth: usize,
        order: &[usize],
        parent: &[usize],
        adj: &[Vec<usize>],
        p: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        let candidates: Vec<usize> = if depth == 0 { (p..2 * p).collect() } else { adj[image[parent[x]]].clone() };
        for y in candidates {
            if used[y] || (y < p) == (x < p) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&w| adj[x].contains(&w) == adj[y].contains(&image[w]));
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if search(depth + 1, order, parent, adj, p, image, used) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }
    if !search(0, &order, &parent, &adj, p, &mut image, &mut used) {
        return None;
    }
    let image = image.into_iter().map(|y| y as u16).collect();
    GeometryMap::new(geometry, image).ok()
}
