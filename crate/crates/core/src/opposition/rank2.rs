use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::square_free_part;
use crate::geometry::{IncidenceGeometry, ProjectivePlane};
use crate::models::DeskModel;
use crate::report::{scan, CheckReport};
use crate::symmetry::{
    absolute_points, collineation_group, standard_correlation, DualityCoset, GeometryMap, MapKind,
};

/// `min_p d(p, p^θ)` in the incidence graph, over the points `p`.
pub fn min_point_displacement(geometry: &IncidenceGeometry, collineation: &GeometryMap) -> Result<usize> {
    if collineation.kind() != MapKind::Collineation {
        return Err(Error::PreconditionViolated("point displacement needs a collineation".into()));
    }
    Ok((0..geometry.point_count()).map(|p| geometry.vertex_distance(p, collineation.point_image(p))).min().unwrap_or(0))
}

#[derive(Debug, Clone)]
pub struct DisplacementScan {
    pub report: CheckReport,
    pub max_min_displacement: usize,
}

/// Every collineation of a rank 2 model moves some point to distance at most 2.
pub fn verify_point_displacement(model: &DeskModel) -> Result<DisplacementScan> {
    let geometry = model
        .geometry()
        .ok_or_else(|| Error::Unsupported(format!("point displacement on model {}", model.name())))?;
    let collineations: Vec<usize> = (0..model.map_count())
        .filter(|&i| model.vertex_map(i).is_some_and(|(kind, _)| kind == MapKind::Collineation))
        .collect();
    let displacement = |i: usize| -> Result<usize> {
        let map = model.geometry_map(i).ok_or_else(|| Error::PreconditionViolated(format!("map {i} is invalid")))?;
        min_point_displacement(geometry, &map)
    };
    let report = scan(model.name(), "beukjeeven", collineations.clone(), |i| match displacement(i) {
        Ok(d) if d <= 2 => None,
        Ok(d) => Some(format!("every point is moved to distance at least {d}")),
        Err(e) => Some(e.to_string()),
    });
    let max_min_displacement =
        collineations.par_iter().filter_map(|&i| displacement(i).ok()).max().unwrap_or(0);
    Ok(DisplacementScan { report, max_min_displacement })
}

/// The first of three order conditions that holds for a duality of order `n`
/// of PG(2,q), with `q'` the square-free part of `q` (`0` for squares):
/// (i) `q' ∤ n`; (ii) `q'` even, `q' | n`, `8 ∤ n`; (iii) `q' ≡ 3 mod 4`,
/// `q' | n`, `4 ∤ n`. Here `0` divides only `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BeukjeCondition {
    None,
    I,
    II,
    III,
}

impl fmt::Display for BeukjeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BeukjeCondition::None => "none",
            BeukjeCondition::I => "i",
            BeukjeCondition::II => "ii",
            BeukjeCondition::III => "iii",
        })
    }
}

pub fn beukje_condition(q: u32, n: u64) -> BeukjeCondition {
    let qp = square_free_part(q) as u64;
    let divides = if qp == 0 { n == 0 } else { n.is_multiple_of(qp) };
    if !divides {
        BeukjeCondition::I
    } else if qp.is_multiple_of(2) && !n.is_multiple_of(8) {
        BeukjeCondition::II
    } else if qp % 4 == 3 && !n.is_multiple_of(4) {
        BeukjeCondition::III
    } else {
        BeukjeCondition::None
    }
}

#[derive(Debug, Clone)]
pub struct AbsolutePointScan {
    pub report: CheckReport,
    /// Number of dualities with each count of absolute points.
    pub histogram: BTreeMap<usize, usize>,
    /// Number of dualities under each order condition.
    pub conditions: BTreeMap<BeukjeCondition, usize>,
    /// Fewest absolute points of a polarity, if any polarity was scanned.
    pub polarity_min: Option<usize>,
}

struct DualityFacts {
    absolute: Option<usize>,
    order: u64,
    condition: BeukjeCondition,
}

/// Counts absolute points of every duality in the coset, read against
/// `geometry`. A map that is not a duality of `geometry`, or one without an
/// absolute point, is a failure.
pub fn scan_dualities(geometry: &IncidenceGeometry, q: u32, coset: &DualityCoset<'_>, model: &str) -> AbsolutePointScan {
    let start = Instant::now();
    let all: Vec<DualityFacts> = (0..coset.len())
        .into_par_iter()
        .map(|i| {
            let d = coset.get(i);
            let order = d.order();
            let absolute = GeometryMap::new(geometry, d.image().to_vec())
                .ok()
                .filter(|m| m.kind() == MapKind::Duality)
                .map(|m| absolute_points(geometry, &m).expect("a duality").len());
            DualityFacts { absolute, order, condition: beukje_condition(q, order) }
        })
        .collect();
    let mut report = CheckReport::new(model, "dualities");
    report.total = all.len() as u64;
    let mut histogram = BTreeMap::new();
    let mut conditions = BTreeMap::new();
    let mut polarity_min: Option<usize> = None;
    for (i, f) in all.iter().enumerate() {
        *conditions.entry(f.condition).or_insert(0) += 1;
        match f.absolute {
            None => report.fail(i as u64, "not a duality of the geometry"),
            Some(0) if f.condition != BeukjeCondition::None => report.fail(
                i as u64,
                format!("no absolute point although condition ({}) holds for order {}", f.condition, f.order),
            ),
            Some(0) => report.fail(i as u64, format!("no absolute point, order {}", f.order)),
            Some(_) => {}
        }
        if let Some(a) = f.absolute {
            *histogram.entry(a).or_insert(0) += 1;
            if f.order == 2 {
                polarity_min = Some(polarity_min.map_or(a, |m| m.min(a)));
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    AbsolutePointScan { report, histogram, conditions, polarity_min }
}

/// Every duality of PG(2,q) has an absolute point; `q ≤ 5`.
pub fn verify_absolute_point_theorem(plane: &ProjectivePlane) -> Result<AbsolutePointScan> {
    let group = collineation_group(plane)?;
    let correlation = standard_correlation(plane);
    let coset = DualityCoset::new(&group, &correlation);
    Ok(scan_dualities(plane.geometry(), plane.order(), &coset, &format!("pg{}", plane.order())))
}

/// A polarity of PG(2,q), `q` not a square, has `q+1` absolute points; they
/// are collinear for even `q`, and no three are collinear for odd `q`.
pub fn baer_polarity_checks(plane: &ProjectivePlane, polarity: &GeometryMap) -> Result<CheckReport> {
    if polarity.kind() != MapKind::Duality || polarity.order() != 2 {
        return Err(Error::PreconditionViolated("expected a polarity".into()));
    }
    let q = plane.order();
    if square_free_part(q) == 0 {
        return Err(Error::NotApplicable(format!("q = {q} is a square")));
    }
    let g = plane.geometry();
    let abs = absolute_points(g, polarity)?;
    let mut report = CheckReport::new(format!("pg{q}"), "baer");
    report.total = 2;
    if abs.len() != q as usize + 1 {
        report.fail(0, format!("{} absolute points, expected {}", abs.len(), q + 1));
    }
    let per_line = |l: usize| abs.iter().filter(|&&p| g.incident(p as usize, l)).count();
    if q.is_multiple_of(2) {
        if !(0..g.line_count()).any(|l| per_line(l) == abs.len()) {
            report.fail(1, "the absolute points are not collinear".to_string());
        }
    } else if let Some(l) = (0..g.line_count()).find(|&l| per_line(l) > 2) {
        report.fail(1, format!("line {l} carries {} absolute points", per_line(l)));
    }
    Ok(report)
}

/// [`baer_polarity_checks`] on the standard polarity and, for `q ≤ 5`, on every
/// polarity of the plane; element 0 is the standard polarity and element
/// `i + 1` is duality `i` of the coset.
pub fn verify_polarities(plane: &ProjectivePlane) -> Result<CheckReport> {
    let q = plane.order();
    let start = Instant::now();
    let model = format!("pg{q}");
    let standard = standard_correlation(plane);
    let mut report = CheckReport::new(&model, "baer");
    let first = baer_polarity_checks(plane, &standard)?;
    report.total = 1;
    if let Some(f) = first.failures.first() {
        report.fail(0, f.witness.clone());
    }
    let group = match collineation_group(plane) {
        Ok(group) => group,
        Err(Error::Unsupported(_)) => return Ok(report),
        Err(e) => return Err(e),
    };
    let coset = DualityCoset::new(&group, &standard);
    let polarities: Vec<usize> = (0..coset.len()).into_par_iter().filter(|&i| coset.get(i).order() == 2).collect();
    let rest = scan(&model, "baer", polarities, |i| match baer_polarity_checks(plane, &coset.get(i)) {
        Ok(r) => r.failures.first().map(|f| f.witness.clone()),
        Err(e) => Some(e.to_string()),
    });
    report.total += rest.total;
    for f in rest.failures {
        report.fail(f.element + 1, f.witness);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
