use super::Building;
use crate::coxeter::DiagramAutomorphism;
use crate::error::{Error, Result};

/// A chamber permutation inducing the type permutation `σ`.
///
/// Either acts inside one building, or is half-swapping on a twin model: then
/// `image` sends plus chambers to minus chambers and `back` sends minus
/// chambers to plus chambers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingAutomorphism {
    image: Vec<u32>,
    back: Option<Vec<u32>>,
    sigma: DiagramAutomorphism,
}

fn is_bijection(image: &[u32]) -> bool {
    let mut seen = vec![false; image.len()];
    image.iter().all(|&c| (c as usize) < seen.len() && !std::mem::replace(&mut seen[c as usize], true))
}

impl BuildingAutomorphism {
    /// Validates that `s`-panels are mapped onto `σ(s)`-panels.
    pub fn new(building: &Building, image: Vec<u32>, sigma: DiagramAutomorphism) -> Result<Self> {
        if image.len() != building.chamber_count() || !is_bijection(&image) {
            return Err(Error::IncompatibleBuilding("not a permutation of the chambers".into()));
        }
        for s in 0..building.rank() {
            let t = sigma.apply(s);
            for panel in building.panels(s) {
                let target = building.panel_id(t, image[panel[0] as usize] as usize);
                if panel.iter().any(|&c| building.panel_id(t, image[c as usize] as usize) != target)
                    || building.panels(t)[target].len() != panel.len()
                {
                    return Err(Error::IncompatibleBuilding(format!("an {s}-panel is not mapped onto a {t}-panel")));
                }
            }
        }
        Ok(BuildingAutomorphism { image, back: None, sigma })
    }

    pub(crate) fn half_swapping_unchecked(image: Vec<u32>, back: Vec<u32>, sigma: DiagramAutomorphism) -> Self {
        BuildingAutomorphism { image, back: Some(back), sigma }
    }

    pub fn identity(building: &Building) -> Self {
        BuildingAutomorphism {
            image: (0..building.chamber_count() as u32).collect(),
            back: None,
            sigma: DiagramAutomorphism::identity(building.rank()),
        }
    }

    pub fn is_half_swapping(&self) -> bool {
        self.back.is_some()
    }

    pub fn sigma(&self) -> &DiagramAutomorphism {
        &self.sigma
    }

    /// Image of chamber `c` (of the plus half when half-swapping).
    #[inline]
    pub fn apply(&self, c: usize) -> usize {
        self.image[c] as usize
    }

    /// Image of a minus chamber under a half-swapping map.
    pub fn apply_minus(&self, d: usize) -> Option<usize> {
        self.back.as_ref().map(|b| b[d] as usize)
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    pub fn chamber_count(&self) -> usize {
        self.image.len()
    }

    /// `self` followed by `next`, for maps inside one building.
    pub fn then(&self, next: &BuildingAutomorphism) -> Result<BuildingAutomorphism> {
        if self.is_half_swapping() || next.is_half_swapping() || self.image.len() != next.image.len() {
            return Err(Error::IncompatibleBuilding("composition needs two maps of one building".into()));
        }
        Ok(BuildingAutomorphism {
            image: self.image.iter().map(|&c| next.image[c as usize]).collect(),
            back: None,
            sigma: next.sigma.after(&self.sigma),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &c)| i == c as usize)
    }

    /// Chamber permutation of `θ²` (plus half to plus half when half-swapping).
    pub fn square(&self) -> Vec<u32> {
        match &self.back {
            None => self.image.iter().map(|&c| self.image[c as usize]).collect(),
            Some(back) => self.image.iter().map(|&c| back[c as usize]).collect(),
        }
    }

    pub fn is_involution(&self) -> bool {
        self.square().iter().enumerate().all(|(i, &c)| i == c as usize)
    }
}
