//! Finite point/line geometries: projective planes, the symplectic quadrangle
//! and the projective 3-space over GF(2).

mod plane;
mod quadrangle;
mod space;

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::field::square_free_part;

pub use plane::ProjectivePlane;
pub(crate) use quadrangle::symplectic_form;
pub use quadrangle::SymplecticQuadrangle;
pub use space::ProjectiveSpace3;

/// A point incident with a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub point: u32,
    pub line: u32,
}

/// A vertex of the bipartite incidence graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    Point(u32),
    Line(u32),
}

/// A validated generalized polygon given by points and lines.
///
/// Vertex ids are points `0..P` followed by lines `P..P+L`.
#[derive(Debug, Clone)]
pub struct IncidenceGeometry {
    points: usize,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    line_bits: Vec<FixedBitSet>,
    line_through: Vec<u32>,
    dist: Vec<u8>,
    flags: Vec<Flag>,
    gonality: usize,
    girth: usize,
    diameter: usize,
    params: (usize, usize),
}

/// Serialized form of a geometry.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeometryFile {
    pub points: usize,
    pub lines: Vec<Vec<u32>>,
}

const NONE: u32 = u32::MAX;

impl IncidenceGeometry {
    /// Builds and validates a generalized polygon with constant parameters.
    pub fn new(points: usize, lines: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGeometry(msg));
        if points == 0 || lines.is_empty() {
            return bad("empty geometry".into());
        }
        if points + lines.len() > u16::MAX as usize {
            return bad("geometry too large".into());
        }
        let mut line_bits = Vec::with_capacity(lines.len());
        let mut point_lines = vec![Vec::new(); points];
        for (j, line) in lines.iter().enumerate() {
            let mut bits = FixedBitSet::with_capacity(points);
            for &p in line {
                if p as usize >= points {
                    return bad(format!("line {j} references point {p} out of range"));
                }
                if bits.put(p as usize) {
                    return bad(format!("line {j} repeats point {p}"));
                }
                point_lines[p as usize].push(j as u32);
            }
            line_bits.push(bits);
        }
        let mut sorted_lines: Vec<Vec<u32>> = lines
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.sort_unstable();
                l
            })
            .collect();
        let size = sorted_lines[0].len();
        if size < 2 || sorted_lines.iter().any(|l| l.len() != size) {
            return bad("lines must all carry the same number (at least 2) of points".into());
        }
        let degree = point_lines[0].len();
        if degree < 2 || point_lines.iter().any(|l| l.len() != degree) {
            return bad("points must all lie on the same number (at least 2) of lines".into());
        }
        let mut dedup = sorted_lines.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != sorted_lines.len() {
            return bad("repeated line".into());
        }

        let v = points + lines.len();
        let adjacency = |x: usize| -> Vec<usize> {
            if x < points {
                point_lines[x].iter().map(|&l| points + l as usize).collect()
            } else {
                sorted_lines[x - points].iter().map(|&p| p as usize).collect()
            }
        };
        let adj: Vec<Vec<usize>> = (0..v).map(adjacency).collect();
        let mut dist = vec![u8::MAX; v * v];
        let mut girth = usize::MAX;
        for root in 0..v {
            let row = &mut dist[root * v..(root + 1) * v];
            let mut parent = vec![usize::MAX; v];
            row[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if row[y] == u8::MAX {
                        row[y] = row[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        girth = girth.min(row[x] as usize + row[y] as usize + 1);
                    }
                }
            }
            if row.contains(&u8::MAX) {
                return bad("incidence graph is disconnected".into());
            }
        }
        let diameter = *dist.iter().max().unwrap() as usize;
        if girth != 2 * diameter || diameter < 2 {
            return Err(Error::InvalidPolygon(format!(
                "incidence graph has diameter {diameter} and girth {girth}"
            )));
        }
        let mut line_through = vec![NONE; points * points];
        for (j, line) in sorted_lines.iter().enumerate() {
            for &a in line {
                for &b in line {
                    if a != b {
                        line_through[a as usize * points + b as usize] = j as u32;
                    }
                }
            }
        }
        let flags = point_lines
            .iter()
            .enumerate()
            .flat_map(|(p, ls)| {
                let mut ls = ls.clone();
                ls.sort_unstable();
                ls.into_iter().map(move |l| Flag { point: p as u32, line: l })
            })
            .collect();
        for l in point_lines.iter_mut() {
            l.sort_unstable();
        }
        sorted_lines.shrink_to_fit();
        Ok(IncidenceGeometry {
            points,
            lines: sorted_lines,
            point_lines,
            line_bits,
            line_through,
            dist,
            flags,
            gonality: diameter,
            girth,
            diameter,
            params: (size - 1, degree - 1),
        })
    }

    pub fn from_file(file: &GeometryFile) -> Result<Self> {
        Self::new(file.points, file.lines.clone())
    }

    /// Parses and validates the JSON geometry format `{"points": n, "lines": [[..], ..]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let file: GeometryFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> GeometryFile {
        GeometryFile { points: self.points, lines: self.lines.clone() }
    }

    pub fn to_file_string(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.points + self.lines.len()
    }

    /// Sorted point indices on line `l`.
    pub fn line(&self, l: usize) -> &[u32] {
        &self.lines[l]
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    /// Sorted line indices through point `p`.
    pub fn lines_through(&self, p: usize) -> &[u32] {
        &self.point_lines[p]
    }

    pub fn line_bits(&self, l: usize) -> &FixedBitSet {
        &self.line_bits[l]
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.line_bits[l].contains(p)
    }

    /// The line joining two distinct collinear points.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        match self.line_through[a * self.points + b] {
            NONE => None,
            l => Some(l as usize),
        }
    }

    /// The common point of two distinct lines, if any.
    pub fn meet(&self, l: usize, k: usize) -> Option<usize> {
        if l == k {
            return None;
        }
        let mut both = self.line_bits[l].clone();
        both.intersect_with(&self.line_bits[k]);
        both.ones().next()
    }

    /// Flags sorted by point, then line.
    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag_index(&self, flag: Flag) -> Option<usize> {
        self.flags.binary_search(&flag).ok()
    }

    pub fn gonality(&self) -> usize {
        self.gonality
    }

    pub fn girth(&self) -> usize {
        self.girth
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// `(s, t)`: points per line minus one, lines per point minus one.
    pub fn parameters(&self) -> (usize, usize) {
        self.params
    }

    pub fn is_thick(&self) -> bool {
        self.params.0 >= 2 && self.params.1 >= 2
    }

    pub fn vertex_id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Point(p) => p as usize,
            Vertex::Line(l) => self.points + l as usize,
        }
    }

    /// Distance between vertex ids in the incidence graph.
    pub fn vertex_distance(&self, a: usize, b: usize) -> usize {
        self.dist[a * self.vertex_count() + b] as usize
    }
}

/// Breadth-first distance between two vertices of the incidence graph.
pub fn incidence_distance(geometry: &IncidenceGeometry, a: Vertex, b: Vertex) -> usize {
    geometry.vertex_distance(geometry.vertex_id(a), geometry.vertex_id(b))
}

/// Checks diameter `m` and girth `2m`, and that a thick finite example has
/// `m ∈ {2, 3, 4, 6, 8}`.
pub fn validate_generalized_polygon(geometry: &IncidenceGeometry, m: usize) -> bool {
    let shape = geometry.diameter() == m && geometry.girth() == 2 * m;
    shape && (!geometry.is_thick() || [2, 3, 4, 6, 8].contains(&m))
}

/// Thick, finite and `gcd(s, t) > 1`.
pub fn is_non_exotic(params: (usize, usize), thick: bool, finite: bool) -> bool {
    thick && finite && gcd(params.0, params.1) > 1
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Two points on exactly one line, two lines through exactly one point, and
/// four points with no three collinear.
pub fn is_projective_plane(points: &[u32], lines: &[Vec<u32>]) -> bool {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 4 || lines.len() < 2 {
        return false;
    }
    let index = |p: u32| pts.binary_search(&p).ok();
    let n = pts.len();
    let mut sets: Vec<FixedBitSet> = Vec::with_capacity(lines.len());
    for line in lines {
        let mut bits = FixedBitSet::with_capacity(n);
        for &p in line {
            match index(p) {
                Some(i) => bits.insert(i),
                None => return false,
            }
        }
        sets.push(bits);
    }
    let mut pair_count = vec![0u32; n * n];
    for bits in &sets {
        let on: Vec<usize> = bits.ones().collect();
        for &a in &on {
            for &b in &on {
                pair_count[a * n + b] += 1;
            }
        }
    }
    if (0..n).any(|a| (0..n).any(|b| a != b && pair_count[a * n + b] != 1)) {
        return false;
    }
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if a.intersection(b).count() != 1 {
                return false;
            }
        }
    }
    let collinear = |a: usize, b: usize, c: usize| sets.iter().any(|l| l.contains(a) && l.contains(b) && l.contains(c));
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if collinear(a, b, c) {
                    continue;
                }
                for d in c + 1..n {
                    if !collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
