use super::quadrangle::{add4, nonzero_gf2_vectors};

/// PG(3,2): 15 points, 35 lines and 15 planes.
///
/// Vertex ids are points `0..15`, lines `15..50`, planes `50..65`. Points are
/// sorted by coordinate vector, lines by their sorted point triples and planes
/// by their normal vectors. Subspaces are stored as bit masks over points.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace3 {
    vectors: Vec<[u8; 4]>,
    line_masks: Vec<u16>,
    plane_masks: Vec<u16>,
    flags: Vec<[u16; 3]>,
}

pub const POINTS: usize = 15;
pub const LINES: usize = 35;
pub const PLANES: usize = 15;

fn dot4(a: [u8; 4], b: [u8; 4]) -> u8 {
    (a[0] & b[0]) ^ (a[1] & b[1]) ^ (a[2] & b[2]) ^ (a[3] & b[3])
}

impl ProjectiveSpace3 {
    pub fn new() -> Self {
        let vectors = nonzero_gf2_vectors();
        let index = |v: [u8; 4]| vectors.binary_search(&v).expect("nonzero vector");
        let mut triples: Vec<[usize; 3]> = Vec::new();
        for (i, &a) in vectors.iter().enumerate() {
            for &b in &vectors[i + 1..] {
                let mut t = [index(a), index(b), index(add4(a, b))];
                t.sort_unstable();
                triples.push(t);
            }
        }
        triples.sort_unstable();
        triples.dedup();
        let line_masks: Vec<u16> = triples.iter().map(|t| t.iter().fold(0, |m, &p| m | 1 << p)).collect();
        let plane_masks: Vec<u16> = vectors
            .iter()
            .map(|&n| (0..POINTS).filter(|&p| dot4(n, vectors[p]) == 0).fold(0, |m, p| m | 1 << p))
            .collect();
        let mut flags = Vec::new();
        for p in 0..POINTS {
            for (l, &lm) in line_masks.iter().enumerate() {
                if lm & 1 << p == 0 {
                    continue;
                }
                for (h, &hm) in plane_masks.iter().enumerate() {
                    if lm & !hm == 0 {
                        flags.push([p as u16, (POINTS + l) as u16, (POINTS + LINES + h) as u16]);
                    }
                }
            }
        }
        ProjectiveSpace3 { vectors, line_masks, plane_masks, flags }
    }

    pub fn vertex_count(&self) -> usize {
        POINTS + LINES + PLANES
    }

    pub fn vector(&self, p: usize) -> [u8; 4] {
        self.vectors[p]
    }

    pub fn point_index(&self, v: [u8; 4]) -> Option<usize> {
        self.vectors.binary_search(&v).ok()
    }

    /// Points of line `l` (0-based within the line block) as a bit mask.
    pub fn line_mask(&self, l: usize) -> u16 {
        self.line_masks[l]
    }

    pub fn plane_mask(&self, h: usize) -> u16 {
        self.plane_masks[h]
    }

    pub fn line_by_mask(&self, mask: u16) -> Option<usize> {
        self.line_masks.iter().position(|&m| m == mask)
    }

    pub fn plane_by_mask(&self, mask: u16) -> Option<usize> {
        self.plane_masks.iter().position(|&m| m == mask)
    }

    /// Type of a vertex id: 0 point, 1 line, 2 plane.
    pub fn vertex_type(v: usize) -> usize {
        if v < POINTS {
            0
        } else if v < POINTS + LINES {
            1
        } else {
            2
        }
    }

    /// Point set of a vertex as a mask.
    pub fn vertex_mask(&self, v: usize) -> u16 {
        match Self::vertex_type(v) {
            0 => 1 << v,
            1 => self.line_masks[v - POINTS],
            _ => self.plane_masks[v - POINTS - LINES],
        }
    }

    pub fn vertex_by_mask(&self, mask: u16) -> Option<usize> {
        match mask.count_ones() {
            1 => Some(mask.trailing_zeros() as usize),
            3 => self.line_by_mask(mask).map(|l| POINTS + l),
            7 => self.plane_by_mask(mask).map(|h| POINTS + LINES + h),
            _ => None,
        }
    }

    /// Complete flags `(point, line, plane)` as vertex ids, sorted.
    pub fn flags(&self) -> &[[u16; 3]] {
        &self.flags
    }
}

impl Default for ProjectiveSpace3 {
    fn default() -> Self {
        Self::new()
    }
}
