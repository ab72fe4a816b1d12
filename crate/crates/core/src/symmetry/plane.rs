use rayon::prelude::*;
use serde::Serialize;

use super::group::{compose, GeneratedGroup};
use super::maps::{GeometryMap, MapKind};
use crate::error::{Error, Result};
use crate::field::{exact_sqrt, square_free_part};
use crate::geometry::{is_projective_plane, IncidenceGeometry, ProjectivePlane};

/// Largest group the closure will materialize (|PΓL(3,5)| = 372000).
const GROUP_LIMIT: usize = 400_000;

/// The semilinear map `x ↦ A·φ^k(x)`, with `φ` the Frobenius automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semilinear {
    pub matrix: [[u16; 3]; 3],
    pub frobenius: u32,
}

impl Semilinear {
    pub fn linear(matrix: [[u16; 3]; 3]) -> Self {
        Semilinear { matrix, frobenius: 0 }
    }
}

/// Point permutation of a semilinear map, or `None` if the matrix is singular.
pub fn semilinear_point_map(plane: &ProjectivePlane, map: &Semilinear) -> Option<Vec<u16>> {
    let f = plane.field();
    let n = plane.geometry().point_count();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let v = plane.coords(i).map(|x| f.frobenius_pow(x, map.frobenius));
        let w = [0, 1, 2].map(|r| f.dot(&map.matrix[r], &v));
        out.push(plane.point_index(w)? as u16);
    }
    let mut seen = vec![false; n];
    out.iter().all(|&p| !std::mem::replace(&mut seen[p as usize], true)).then_some(out)
}

/// Extends a point permutation to a collineation on points and lines, if the
/// permutation maps lines onto lines.
pub fn extend_point_map(geometry: &IncidenceGeometry, points: &[u16]) -> Option<Vec<u16>> {
    let p = geometry.point_count();
    let mut image = points.to_vec();
    for l in 0..geometry.line_count() {
        let line = geometry.line(l);
        let target = geometry.join(points[line[0] as usize] as usize, points[line[1] as usize] as usize)?;
        if !line.iter().all(|&x| geometry.incident(points[x as usize] as usize, target)) {
            return None;
        }
        image.push((p + target) as u16);
    }
    Some(image)
}

fn pgaml_order(q: u64, degree: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1) * degree
}

/// PΓL(3,q) acting on points and lines, generated by the elementary
/// transvections, `diag(ω,1,1)` for a primitive `ω`, and the Frobenius map.
pub fn collineation_group(plane: &ProjectivePlane) -> Result<GeneratedGroup> {
    let f = plane.field();
    let expected = pgaml_order(f.order() as u64, f.degree() as u64);
    if expected > GROUP_LIMIT as u64 {
        return Err(Error::Unsupported(format!("PΓL(3,{}) has order {expected}", f.order())));
    }
    let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = id;
                m[i][j] = 1;
                gens.push(Semilinear::linear(m));
            }
        }
    }
    let mut diag = id;
    diag[0][0] = f.primitive();
    gens.push(Semilinear::linear(diag));
    if f.degree() > 1 {
        gens.push(Semilinear { matrix: id, frobenius: 1 });
    }
    let g = plane.geometry();
    let perms = gens
        .iter()
        .map(|s| extend_point_map(g, &semilinear_point_map(plane, s).expect("invertible generator")).expect("collineation"))
        .collect();
    let group = GeneratedGroup::generate(g.vertex_count(), perms, GROUP_LIMIT)?;
    if group.order() as u64 != expected {
        return Err(Error::WitnessValidationFailed(format!("closure has order {}, expected {expected}", group.order())));
    }
    Ok(group)
}

/// `⟨v⟩ ↦ {x : x·v = 0}` and back; points and lines share coordinates, so this
/// swaps point `i` with line `i`.
pub fn standard_correlation(plane: &ProjectivePlane) -> GeometryMap {
    let p = plane.geometry().point_count();
    let image = (0..2 * p).map(|x| if x < p { (x + p) as u16 } else { (x - p) as u16 }).collect();
    GeometryMap::from_parts(MapKind::Duality, p, image)
}

/// All dualities as the coset of a collineation group: element `i` is the
/// correlation followed by collineation `i`.
#[derive(Debug, Clone, Copy)]
pub struct DualityCoset<'a> {
    pub group: &'a GeneratedGroup,
    pub correlation: &'a GeometryMap,
}

impl<'a> DualityCoset<'a> {
    pub fn new(group: &'a GeneratedGroup, correlation: &'a GeometryMap) -> Self {
        DualityCoset { group, correlation }
    }

    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> GeometryMap {
        GeometryMap::from_parts(
            MapKind::Duality,
            self.correlation.point_count(),
            compose(self.correlation.image(), self.group.element(i)),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = GeometryMap> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

/// All collineations of order 2 as semilinear maps `x ↦ A·φ^k(x)`, found by
/// enumerating normalized matrices (first nonzero entry 1) and keeping those
/// with `A·φ^k(A)` a nonzero scalar. Sorted by `(k, A)`.
pub fn involutory_collineations(plane: &ProjectivePlane) -> Vec<(Semilinear, GeometryMap)> {
    let f = plane.field();
    let q = f.order() as u64;
    let e = f.degree();
    let ks: Vec<u32> = (0..e).filter(|k| (2 * k) % e == 0).collect();
    let mut found: Vec<Semilinear> = Vec::new();
    for &k in &ks {
        for lead in 0..9usize {
            let tail = q.pow(8 - lead as u32);
            let batch: Vec<Semilinear> = (0..tail)
                .into_par_iter()
                .filter_map(|code| {
                    let mut entries = [0u16; 9];
                    entries[lead] = 1;
                    let mut c = code;
                    for slot in entries[lead + 1..].iter_mut().rev() {
                        *slot = (c % q) as u16;
                        c /= q;
                    }
                    let a = [
                        [entries[0], entries[1], entries[2]],
                        [entries[3], entries[4], entries[5]],
                        [entries[6], entries[7], entries[8]],
                    ];
                    let scalar_identity = a == [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
                    if k == 0 && scalar_identity {
                        return None;
                    }
                    let b = a.map(|row| row.map(|x| f.frobenius_pow(x, k)));
                    let mut prod = [[0u16; 3]; 3];
                    for i in 0..3 {
                        for j in 0..3 {
                            let mut acc = 0;
                            for (t, row) in b.iter().enumerate() {
                                acc = f.add(acc, f.mul(a[i][t], row[j]));
                            }
                            prod[i][j] = acc;
                        }
                    }
                    let lambda = prod[0][0];
                    let scalar = lambda != 0
                        && (0..3).all(|i| (0..3).all(|j| prod[i][j] == if i == j { lambda } else { 0 }));
                    scalar.then_some(Semilinear { matrix: a, frobenius: k })
                })
                .collect();
            found.extend(batch);
        }
    }
    found.sort();
    let g = plane.geometry();
    found
        .into_iter()
        .map(|s| {
            let pts = semilinear_point_map(plane, &s).expect("A·φ(A) scalar forces A invertible");
            let image = extend_point_map(g, &pts).expect("semilinear maps are collineations");
            (s, GeometryMap::from_parts(MapKind::Collineation, g.point_count(), image))
        })
        .collect()
}

/// The three kinds of collineations of order 2 of a projective plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionClass {
    Elation { center: u32, axis: u32 },
    Homology { center: u32, axis: u32 },
    Baer { points: Vec<u32> },
}

impl InvolutionClass {
    pub fn name(&self) -> &'static str {
        match self {
            InvolutionClass::Elation { .. } => "elation",
            InvolutionClass::Homology { .. } => "homology",
            InvolutionClass::Baer { .. } => "baer",
        }
    }
}

fn fixed_points(geometry: &IncidenceGeometry, map: &GeometryMap) -> Vec<u32> {
    (0..geometry.point_count()).filter(|&x| map.point_image(x) == x).map(|x| x as u32).collect()
}

fn fixed_lines(geometry: &IncidenceGeometry, map: &GeometryMap) -> Vec<u32> {
    let p = geometry.point_count();
    (0..geometry.line_count()).filter(|&l| map.line_image(l) == p + l).map(|l| l as u32).collect()
}

/// Classifies an involutory collineation of a projective plane of order `q` by
/// its fixed structure.
pub fn classify_involutory_collineation(geometry: &IncidenceGeometry, map: &GeometryMap) -> Result<InvolutionClass> {
    if map.kind() != MapKind::Collineation || map.is_identity() || map.order() != 2 {
        return Err(Error::NotInvolution);
    }
    let q = geometry.parameters().0;
    let p = geometry.point_count();
    let points = fixed_points(geometry, map);
    let lines = fixed_lines(geometry, map);
    let axes: Vec<u32> =
        lines.iter().copied().filter(|&l| geometry.line(l as usize).iter().all(|&x| map.point_image(x as usize) == x as usize)).collect();
    let centers: Vec<u32> = points
        .iter()
        .copied()
        .filter(|&x| geometry.lines_through(x as usize).iter().all(|&l| map.line_image(l as usize) == p + l as usize))
        .collect();
    match (axes.as_slice(), centers.as_slice()) {
        ([axis], [center]) => {
            let on_axis = geometry.incident(*center as usize, *axis as usize);
            let (class, expected) = if on_axis {
                (InvolutionClass::Elation { center: *center, axis: *axis }, q + 1)
            } else {
                (InvolutionClass::Homology { center: *center, axis: *axis }, q + 2)
            };
            if points.len() != expected {
                return Err(Error::ClassificationFailed(format!(
                    "{} with {} fixed points, expected {expected}",
                    class.name(),
                    points.len()
                )));
            }
            Ok(class)
        }
        ([], []) => {
            let sub = fixed_substructure(geometry, map);
            let root = exact_sqrt(q as u32).map(|r| r as usize);
            match (sub.is_plane, root) {
                (true, Some(r)) if sub.order == Some(r) && points.len() == q + r + 1 => Ok(InvolutionClass::Baer { points }),
                _ => Err(Error::ClassificationFailed(format!(
                    "no centre or axis, and the {} fixed points do not form a Baer subplane",
                    points.len()
                ))),
            }
        }
        _ => Err(Error::ClassificationFailed(format!("{} axes and {} centres", axes.len(), centers.len()))),
    }
}

/// Fixed points of a collineation, the lines meeting them in at least two
/// points, and whether these form a projective plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubstructure {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
    pub is_plane: bool,
    /// Points per line minus one, when a plane.
    pub order: Option<usize>,
    /// Every point orbit has size dividing the order of the map.
    pub orbits_divide_order: bool,
}

pub fn fixed_substructure(geometry: &IncidenceGeometry, map: &GeometryMap) -> FixedSubstructure {
    let points = fixed_points(geometry, map);
    let mut fixed = vec![false; geometry.point_count()];
    for &x in &points {
        fixed[x as usize] = true;
    }
    let mut lines = Vec::new();
    let mut restricted = Vec::new();
    for l in 0..geometry.line_count() {
        let on: Vec<u32> = geometry.line(l).iter().copied().filter(|&x| fixed[x as usize]).collect();
        if on.len() >= 2 {
            lines.push(l as u32);
            restricted.push(on);
        }
    }
    let is_plane = is_projective_plane(&points, &restricted);
    let order = is_plane.then(|| restricted[0].len() - 1);
    let n = map.order();
    let orbits_divide_order = (0..geometry.point_count()).all(|start| {
        let mut len = 1u64;
        let mut x = map.point_image(start);
        while x != start {
            x = map.point_image(x);
            len += 1;
        }
        n.is_multiple_of(len)
    });
    FixedSubstructure { points, lines, is_plane, order, orbits_divide_order }
}

/// Which involution `τ' = τ^{q'r}` is: a collineation when `q'r` is even
/// (an elation for even `q`, a homology for odd `q`), a polarity when odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvolutionCase {
    Elation,
    Homology,
    Polarity,
}

/// `|τ| = n = 2q'r`, `τ' = τ^{q'r}`, and for the smallest odd prime `p | q'`,
/// `n = p^h·ℓ` with `p ∤ ℓ` and `τ'' = τ^ℓ`.
#[derive(Debug, Clone)]
pub struct OrderDecomposition {
    pub n: u64,
    pub q_prime: u32,
    pub r: u64,
    pub case: InvolutionCase,
    pub tau_prime: GeometryMap,
    pub p: Option<u32>,
    pub h: u32,
    pub ell: u64,
    pub tau_double_prime: Option<GeometryMap>,
}

/// Decomposes the order of a duality of PG(2,q). Fails with `NotApplicable`
/// when `q` is a square, when `q' ∤ n`, or when `2q' ∤ n`. The parity facts
/// used downstream are asserted at runtime.
pub fn order_decomposition(duality: &GeometryMap, q: u32) -> Result<OrderDecomposition> {
    if duality.kind() != MapKind::Duality {
        return Err(Error::PreconditionViolated("order decomposition needs a duality".into()));
    }
    let n = duality.order();
    let qp = square_free_part(q);
    if qp == 0 {
        return Err(Error::NotApplicable(format!("q = {q} is a square")));
    }
    let qp64 = qp as u64;
    if !n.is_multiple_of(qp64) {
        return Err(Error::NotApplicable(format!("q' = {qp} does not divide n = {n}")));
    }
    if !n.is_multiple_of(2 * qp64) {
        return Err(Error::NotApplicable(format!("2q' = {} does not divide n = {n}", 2 * qp)));
    }
    let r = n / (2 * qp64);
    let tau_prime = duality.pow(qp64 * r);
    let case = if (qp64 * r) % 2 == 1 {
        InvolutionCase::Polarity
    } else if q.is_multiple_of(2) {
        InvolutionCase::Elation
    } else {
        InvolutionCase::Homology
    };
    let fail = |msg: String| Err(Error::WitnessValidationFailed(msg));
    if tau_prime.order() != 2 {
        return fail(format!("τ' has order {}", tau_prime.order()));
    }
    if (tau_prime.kind() == MapKind::Duality) != (case == InvolutionCase::Polarity) {
        return fail("τ' type does not match the parity of q'r".into());
    }
    let p = (3..=qp).step_by(2).find(|d| qp.is_multiple_of(*d) && (2..*d).all(|e| d % e != 0));
    let (mut h, mut ell, mut tau_double_prime) = (0, n, None);
    if let Some(p) = p {
        while ell % p as u64 == 0 {
            ell /= p as u64;
            h += 1;
        }
        let t = duality.pow(ell);
        if ell % 2 != 0 || t.kind() != MapKind::Collineation || t.order() != (p as u64).pow(h) {
            return fail(format!("τ'' = τ^{ell} is not a collineation of order {p}^{h}"));
        }
        tau_double_prime = Some(t);
    }
    Ok(OrderDecomposition { n, q_prime: qp, r, case, tau_prime, p, h, ell, tau_double_prime })
}
