use std::collections::BTreeMap;
use std::fmt;

use crate::building::{BuildingAutomorphism, Half, TwinChamber, TwinModel, TwinResidue};
use crate::coxeter::{CanonicalElement, Elem, GenSet};
use crate::error::{Error, Result};
use crate::models::DeskModel;
use crate::report::{scan, CheckReport};

fn require_half_swapping(theta: &BuildingAutomorphism, twin: &TwinModel) -> Result<()> {
    if !theta.is_half_swapping() || theta.chamber_count() != twin.chamber_count() {
        return Err(Error::PreconditionViolated("expected a half-swapping automorphism of the twin model".into()));
    }
    Ok(())
}

#[inline]
fn codistance(twin: &TwinModel, theta: &BuildingAutomorphism, c: usize) -> Elem {
    twin.codistance(TwinChamber::plus(c), TwinChamber::minus(theta.apply(c))).expect("plus and minus chambers")
}

/// How often each codistance `δ*(C, C^θ)` occurs over the plus chambers `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementSpectrum {
    pub counts: BTreeMap<Elem, usize>,
    pub min_length: usize,
    /// Lowest-index chamber of minimal codistance length.
    pub witness: usize,
    /// `δ*(C, C^θ)` for each chamber `C`.
    pub codistances: Vec<Elem>,
}

impl DisplacementSpectrum {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn count(&self, w: Elem) -> usize {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    /// Counts keyed by normal form.
    pub fn words(&self, twin: &TwinModel) -> Vec<(String, usize)> {
        self.counts.iter().map(|(&w, &n)| (twin.table().canonical(w).to_string(), n)).collect()
    }
}

pub fn displacement_spectrum(twin: &TwinModel, theta: &BuildingAutomorphism) -> Result<DisplacementSpectrum> {
    require_half_swapping(theta, twin)?;
    let t = twin.table();
    let codistances: Vec<Elem> = (0..twin.chamber_count()).map(|c| codistance(twin, theta, c)).collect();
    let mut counts = BTreeMap::new();
    for &w in &codistances {
        *counts.entry(w).or_insert(0) += 1;
    }
    let witness = (0..codistances.len()).min_by_key(|&c| (t.length(codistances[c]), c)).expect("nonempty building");
    let min_length = t.length(codistances[witness]);
    Ok(DisplacementSpectrum { counts, min_length, witness, codistances })
}

/// A chamber `C` with `w = δ*(C, C^θ) = w_J` for `J` the left descent set of
/// `w`, whose `J`-residue is opposite its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OppositeResidueWitness {
    pub chamber: usize,
    pub kind: GenSet,
    pub w: Elem,
    pub word: CanonicalElement,
    pub residue: TwinResidue,
    pub image: TwinResidue,
}

impl fmt::Display for OppositeResidueWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chamber {} J={} w={} residue of {} chambers", self.chamber, self.kind, self.word, self.residue.chambers.len())
    }
}

fn validate_witness(twin: &TwinModel, theta: &BuildingAutomorphism, c: usize) -> Result<OppositeResidueWitness> {
    let t = twin.table();
    let w = codistance(twin, theta, c);
    let word = t.canonical(w).clone();
    let kind = t.left_descents(w);
    let fail = |msg: String| Err(Error::WitnessValidationFailed(format!("chamber {c}, w={word}: {msg}")));
    if w != t.longest_in(kind) {
        return fail(format!("w is not the longest element of W_{kind}"));
    }
    let sigma = theta.sigma();
    if sigma.apply_set(kind) != kind {
        return fail(format!("σ does not stabilise J={kind}"));
    }
    for s in kind.iter() {
        if t.right(t.left(s, w), sigma.apply(s)) != w {
            return fail(format!("s·w·σ(s) ≠ w for s={s}"));
        }
    }
    let residue = twin.residue(TwinChamber::plus(c), kind);
    let mut mapped: Vec<u32> = residue.chambers.iter().map(|&x| theta.apply(x as usize) as u32).collect();
    mapped.sort_unstable();
    let image = twin.residue(TwinChamber::minus(theta.apply(c)), kind);
    if mapped != image.chambers {
        return fail("the residue is not mapped onto a residue of the same type".into());
    }
    if !twin.is_opposite_residues(&residue, &image)? {
        return fail("the residue is not opposite its image".into());
    }
    Ok(OppositeResidueWitness { chamber: c, kind, w, word, residue, image })
}

/// Takes the lowest-index chamber of minimal `ℓ(δ*(C, C^θ))` over all chambers
/// and validates the residue it determines.
pub fn find_opposite_residue(twin: &TwinModel, theta: &BuildingAutomorphism) -> Result<OppositeResidueWitness> {
    let spectrum = displacement_spectrum(twin, theta)?;
    validate_witness(twin, theta, spectrum.witness)
}

/// From `start`, repeatedly moves to the adjacent chamber of least codistance
/// length (lowest index on ties) while that length strictly decreases, then
/// validates the residue at the chamber where it stops.
pub fn local_descent(twin: &TwinModel, theta: &BuildingAutomorphism, start: usize) -> Result<OppositeResidueWitness> {
    require_half_swapping(theta, twin)?;
    let t = twin.table();
    let building = twin.plus();
    let mut c = start;
    let mut len = t.length(codistance(twin, theta, c));
    loop {
        let best = (0..twin.rank())
            .flat_map(|s| building.panel(s, c).iter().map(|&d| d as usize))
            .filter(|&d| d != c)
            .map(|d| (t.length(codistance(twin, theta, d)), d))
            .min();
        match best {
            Some((l, d)) if l < len => {
                c = d;
                len = l;
            }
            _ => break,
        }
    }
    validate_witness(twin, theta, c)
}

/// Whether `θ` maps every `S∖J`-residue of the plus half onto an opposite
/// residue.
pub fn is_j_opposite(twin: &TwinModel, theta: &BuildingAutomorphism, j: GenSet) -> Result<bool> {
    require_half_swapping(theta, twin)?;
    let rank = twin.rank();
    if !j.is_subset(GenSet::full(rank)) {
        return Err(Error::PreconditionViolated(format!("{j} is not a set of generators")));
    }
    let kind = j.complement(rank);
    let image_kind = theta.sigma().apply_set(kind);
    for members in twin.plus().residues(kind).iter() {
        let mut image: Vec<u32> = members.iter().map(|&c| theta.apply(c as usize) as u32).collect();
        image.sort_unstable();
        let r = TwinResidue { half: Half::Plus, kind, chambers: members.to_vec() };
        let q = TwinResidue { half: Half::Minus, kind: image_kind, chambers: image };
        if !twin.is_opposite_residues(&r, &q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For one map: `J`-opposite agrees with `S`-opposite for every nonempty `J`;
/// a `J`-opposite map has all codistances in `W_{S∖J}`; an opposite map has
/// `σ = id` and sends every residue to an opposite one.
pub fn verify_main2(twin: &TwinModel, theta: &BuildingAutomorphism, model: &str) -> Result<CheckReport> {
    require_half_swapping(theta, twin)?;
    let rank = twin.rank();
    let full = GenSet::full(rank);
    let t = twin.table();
    let opposite = is_j_opposite(twin, theta, full)?;
    let mut report = CheckReport::new(model, "main2");
    for j in GenSet::all_subsets(rank).filter(|j| !j.is_empty()) {
        report.total += 1;
        let j_opposite = is_j_opposite(twin, theta, j)?;
        if j_opposite != opposite {
            report.fail(j.0 as u64, format!("J={j}: J-opposite is {j_opposite} but S-opposite is {opposite}"));
            continue;
        }
        if j_opposite {
            let kind = j.complement(rank);
            if let Some(c) = (0..twin.chamber_count()).find(|&c| !t.in_parabolic(codistance(twin, theta, c), kind)) {
                report.fail(j.0 as u64, format!("J={j}: δ*(C,C^θ) outside W_{kind} at chamber {c}"));
            }
        }
    }
    if opposite {
        report.total += 1;
        if !theta.sigma().is_identity() {
            report.fail(0, format!("opposite map with twin type permutation {:?}", theta.sigma().perm()));
        } else if !is_j_opposite(twin, theta, GenSet::EMPTY)? {
            report.fail(0, "opposite map does not send the whole half to an opposite".to_string());
        }
    }
    Ok(report)
}

fn first_failure(report: Result<CheckReport>) -> Option<String> {
    match report {
        Ok(r) => r.failures.first().map(|f| f.witness.clone()),
        Err(e) => Some(e.to_string()),
    }
}

/// [`verify_main2`] over every map of the model; the element is the map index.
pub fn verify_main2_all(model: &DeskModel) -> CheckReport {
    scan(model.name(), "main2", 0..model.map_count(), |i| {
        first_failure(model.twin_map(i).and_then(|theta| verify_main2(model.twin(), &theta, model.name())))
    })
}

/// No map of the model is `J`-opposite for a nonempty `J`.
pub fn verify_no_opposite_automorphism(model: &DeskModel) -> CheckReport {
    let rank = model.twin().rank();
    scan(model.name(), "main1", 0..model.map_count(), |i| {
        let theta = match model.twin_map(i) {
            Ok(theta) => theta,
            Err(e) => return Some(e.to_string()),
        };
        for j in GenSet::all_subsets(rank).filter(|j| !j.is_empty()) {
            match is_j_opposite(model.twin(), &theta, j) {
                Ok(false) => {}
                Ok(true) => return Some(format!("J={j}: every S∖J-residue is mapped to an opposite")),
                Err(e) => return Some(e.to_string()),
            }
        }
        None
    })
}

/// For every map, the minimal-codistance witness validates.
pub fn verify_main0(model: &DeskModel) -> CheckReport {
    scan(model.name(), "main0", 0..model.map_count(), |i| {
        model.twin_map(i).and_then(|theta| find_opposite_residue(model.twin(), &theta)).err().map(|e| e.to_string())
    })
}

/// For every map, local descent from chamber 0 stops at the minimal
/// codistance length.
pub fn verify_local_descent(model: &DeskModel) -> CheckReport {
    let t = model.twin().table();
    scan(model.name(), "main0-local", 0..model.map_count(), |i| {
        let outcome = model.twin_map(i).and_then(|theta| {
            let spectrum = displacement_spectrum(model.twin(), &theta)?;
            let local = local_descent(model.twin(), &theta, 0)?;
            Ok((spectrum.min_length, local))
        });
        match outcome {
            Err(e) => Some(e.to_string()),
            Ok((min, local)) if t.length(local.w) != min => {
                Some(format!("local descent stops at {local}, minimal length is {min}"))
            }
            Ok(_) => None,
        }
    })
}
