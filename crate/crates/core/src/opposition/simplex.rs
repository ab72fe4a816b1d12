use crate::building::{Building, BuildingAutomorphism, Residue};
use crate::coxeter::GenSet;
use crate::error::{Error, Result};
use crate::models::DeskModel;
use crate::report::{scan, CheckReport};

/// A residue of type `K ⊊ S` stabilised by an involution: chambers first,
/// then `σ`-stable `K` by size and mask, residues in order of first chamber.
/// `None` if no proper residue is fixed.
pub fn fixed_simplex_search(building: &Building, involution: &BuildingAutomorphism) -> Result<Option<Residue>> {
    if involution.is_half_swapping() || involution.chamber_count() != building.chamber_count() {
        return Err(Error::IncompatibleBuilding("expected an automorphism of the building".into()));
    }
    if !involution.is_involution() {
        return Err(Error::NotInvolution);
    }
    let rank = building.rank();
    let full = GenSet::full(rank);
    let mut kinds: Vec<GenSet> =
        GenSet::all_subsets(rank).filter(|&k| k != full && involution.sigma().apply_set(k) == k).collect();
    kinds.sort_by_key(|k| (k.len(), k.0));
    for kind in kinds {
        let part = building.residues(kind);
        for (id, members) in part.iter().enumerate() {
            if part.residue_id(involution.apply(members[0] as usize)) == id {
                return Ok(Some(Residue { kind, chambers: members.to_vec() }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct FixedSimplexScan {
    pub report: CheckReport,
    pub involutions: usize,
    /// Involutions fixing no proper residue; each maps every chamber to an opposite.
    pub without_fixed_residue: usize,
}

/// Every involution among the model's maps either fixes a proper residue or
/// maps every chamber to an opposite chamber.
pub fn verify_fixed_simplex(model: &DeskModel) -> FixedSimplexScan {
    let building = model.twin().plus();
    let involutions: Vec<usize> =
        (0..model.map_count()).filter(|&i| model.building_map(i).is_ok_and(|g| g.is_involution())).collect();
    let outcome = |i: usize| -> Result<Option<Residue>> { fixed_simplex_search(building, &model.building_map(i)?) };
    let report = scan(model.name(), "main3", involutions.clone(), |i| {
        let g = match model.building_map(i) {
            Ok(g) => g,
            Err(e) => return Some(e.to_string()),
        };
        match outcome(i) {
            Ok(Some(_)) => None,
            Ok(None) if (0..building.chamber_count()).all(|c| building.is_opposite(c, g.apply(c))) => None,
            Ok(None) => Some("fixes no proper residue yet some chamber is not mapped to an opposite".into()),
            Err(e) => Some(e.to_string()),
        }
    });
    let without_fixed_residue = involutions.iter().filter(|&&i| matches!(outcome(i), Ok(None))).count();
    FixedSimplexScan { report, involutions: involutions.len(), without_fixed_residue }
}
