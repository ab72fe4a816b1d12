use super::IncidenceGeometry;

/// The symplectic quadrangle W(2): points of PG(3,2) with the totally
/// isotropic lines of `B(x,y) = x0y1 + x1y0 + x2y3 + x3y2`.
#[derive(Debug, Clone)]
pub struct SymplecticQuadrangle {
    vectors: Vec<[u8; 4]>,
    geometry: IncidenceGeometry,
}

pub(crate) fn symplectic_form(x: [u8; 4], y: [u8; 4]) -> u8 {
    (x[0] & y[1]) ^ (x[1] & y[0]) ^ (x[2] & y[3]) ^ (x[3] & y[2])
}

pub(crate) fn nonzero_gf2_vectors() -> Vec<[u8; 4]> {
    let mut v: Vec<[u8; 4]> = (1u8..16).map(|m| [m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1]).collect();
    v.sort_unstable();
    v
}

pub(crate) fn add4(a: [u8; 4], b: [u8; 4]) -> [u8; 4] {
    [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]]
}

impl SymplecticQuadrangle {
    pub fn new() -> Self {
        let vectors = nonzero_gf2_vectors();
        let index = |v: [u8; 4]| vectors.binary_search(&v).expect("nonzero vector") as u32;
        let mut lines: Vec<Vec<u32>> = Vec::new();
        for (i, &a) in vectors.iter().enumerate() {
            for &b in &vectors[i + 1..] {
                if symplectic_form(a, b) == 0 {
                    let mut line = vec![index(a), index(b), index(add4(a, b))];
                    line.sort_unstable();
                    lines.push(line);
                }
            }
        }
        lines.sort_unstable();
        lines.dedup();
        let geometry = IncidenceGeometry::new(vectors.len(), lines).expect("W(2) is a generalized quadrangle");
        SymplecticQuadrangle { vectors, geometry }
    }

    pub fn geometry(&self) -> &IncidenceGeometry {
        &self.geometry
    }

    pub fn vector(&self, p: usize) -> [u8; 4] {
        self.vectors[p]
    }

    pub fn point_index(&self, v: [u8; 4]) -> Option<usize> {
        self.vectors.binary_search(&v).ok()
    }
}

impl Default for SymplecticQuadrangle {
    fn default() -> Self {
        Self::new()
    }
}
