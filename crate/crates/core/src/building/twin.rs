use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{thin_building_from_table, Building, BuildingAutomorphism};
use crate::coxeter::{CoxeterGroupTable, CoxeterSystem, DiagramAutomorphism, Elem, GenSet};
use crate::error::{Error, Result};
use crate::report::{timed, CheckReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    pub fn other(self) -> Half {
        match self {
            Half::Plus => Half::Minus,
            Half::Minus => Half::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwinChamber {
    pub half: Half,
    pub index: u32,
}

impl TwinChamber {
    pub fn plus(index: usize) -> Self {
        TwinChamber { half: Half::Plus, index: index as u32 }
    }

    pub fn minus(index: usize) -> Self {
        TwinChamber { half: Half::Minus, index: index as u32 }
    }
}

/// A residue of one half, typed by twin types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinResidue {
    pub half: Half,
    pub kind: GenSet,
    pub chambers: Vec<u32>,
}

/// A spherical building twinned with a relabelled copy of itself.
///
/// The minus half has the same chamber indices as the plus half. Minus
/// chamber `d` corresponds to plus chamber `mate(d)`, and the minus half
/// carries the types conjugated by `w0`:
///
/// * `δ⁻(d, e) = w0·δ(mate d, mate e)·w0`
/// * `δ*(c⁺, d⁻) = δ(c, mate d)·w0`
/// * `δ*(d⁻, c⁺) = w0·δ(mate d, c)`
///
/// So `c⁺` and `d⁻` are opposite iff `δ(c, mate d) = w0`. A move in the second
/// argument of δ* multiplies on the right; a move in the first multiplies on
/// the left.
#[derive(Debug, Clone)]
pub struct TwinModel {
    building: Arc<Building>,
    mate: Vec<u32>,
    mate_inv: Vec<u32>,
    sigma0: DiagramAutomorphism,
    overrides: HashMap<(u32, u32), Elem>,
}

impl TwinModel {
    /// Twinning with `mate = id`; validated by the full axiom suite.
    pub fn self_twin(building: Arc<Building>) -> Result<Self> {
        let n = building.chamber_count() as u32;
        let model = Self::with_mate(building, (0..n).collect())?;
        let report = model.verify_twin_axioms("self-twin");
        if let Some(f) = report.failures.first() {
            return Err(Error::AxiomValidationFailed(f.witness.clone()));
        }
        Ok(model)
    }

    /// The Coxeter complex twinned so that `u⁺` and `u⁻` are opposite for
    /// every `u` (`mate(v) = v·w0`, hence `δ*(u⁺, v⁻) = u⁻¹v`).
    pub fn thin(system: &CoxeterSystem) -> Result<Self> {
        let table = Arc::new(CoxeterGroupTable::new(system)?);
        let w0 = table.longest();
        let mate = table.elements().map(|v| table.mul(v, w0).0 as u32).collect();
        let building = Arc::new(thin_building_from_table(table)?);
        Self::with_mate(building, mate)
    }

    pub fn with_mate(building: Arc<Building>, mate: Vec<u32>) -> Result<Self> {
        let n = building.chamber_count();
        let mut mate_inv = vec![u32::MAX; n];
        if mate.len() != n {
            return Err(Error::PreconditionViolated("mate must cover every chamber".into()));
        }
        for (d, &c) in mate.iter().enumerate() {
            if c as usize >= n || mate_inv[c as usize] != u32::MAX {
                return Err(Error::PreconditionViolated("mate is not a bijection".into()));
            }
            mate_inv[c as usize] = d as u32;
        }
        let sigma0 = building.table().opposition().clone();
        Ok(TwinModel { building, mate, mate_inv, sigma0, overrides: HashMap::new() })
    }

    /// Replaces one plus-to-minus codistance value; for negative controls.
    pub fn corrupt_codistance(&mut self, c: usize, d: usize, w: Elem) {
        self.overrides.insert((c as u32, d as u32), w);
    }

    pub fn plus(&self) -> &Building {
        &self.building
    }

    pub fn shared_building(&self) -> Arc<Building> {
        Arc::clone(&self.building)
    }

    pub fn table(&self) -> &CoxeterGroupTable {
        self.building.table()
    }

    pub fn chamber_count(&self) -> usize {
        self.building.chamber_count()
    }

    pub fn rank(&self) -> usize {
        self.building.rank()
    }

    /// Conjugation by `w0` on types.
    pub fn sigma0(&self) -> &DiagramAutomorphism {
        &self.sigma0
    }

    pub fn mate(&self, d: usize) -> usize {
        self.mate[d] as usize
    }

    pub fn mate_inverse(&self, c: usize) -> usize {
        self.mate_inv[c] as usize
    }

    fn conj_w0(&self, w: Elem) -> Elem {
        let t = self.table();
        t.mul(t.mul(t.longest(), w), t.longest())
    }

    /// Weyl distance inside one half.
    pub fn distance(&self, half: Half, a: usize, b: usize) -> Elem {
        match half {
            Half::Plus => self.building.weyl_distance(a, b),
            Half::Minus => self.conj_w0(self.building.weyl_distance(self.mate(a), self.mate(b))),
        }
    }

    /// Sorted chambers of the `s`-panel through `c` in the given half.
    pub fn panel(&self, half: Half, s: usize, c: usize) -> Vec<u32> {
        match half {
            Half::Plus => self.building.panel(s, c).to_vec(),
            Half::Minus => {
                let mut p: Vec<u32> =
                    self.building.panel(self.sigma0.apply(s), self.mate(c)).iter().map(|&x| self.mate_inv[x as usize]).collect();
                p.sort_unstable();
                p
            }
        }
    }

    pub fn codistance(&self, x: TwinChamber, y: TwinChamber) -> Result<Elem> {
        let t = self.table();
        match (x.half, y.half) {
            (Half::Plus, Half::Minus) => Ok(self.plus_minus(x.index as usize, y.index as usize)),
            (Half::Minus, Half::Plus) => {
                Ok(t.mul(t.longest(), self.building.weyl_distance(self.mate(x.index as usize), y.index as usize)))
            }
            _ => Err(Error::SameHalf),
        }
    }

    fn plus_minus(&self, c: usize, d: usize) -> Elem {
        if let Some(&w) = self.overrides.get(&(c as u32, d as u32)) {
            return w;
        }
        let t = self.table();
        t.mul(self.building.weyl_distance(c, self.mate(d)), t.longest())
    }

    /// Whether plus chamber `c` and minus chamber `d` are opposite.
    pub fn opposite(&self, c: usize, d: usize) -> bool {
        if self.overrides.is_empty() {
            self.building.is_opposite(c, self.mate(d))
        } else {
            self.plus_minus(c, d) == self.table().identity()
        }
    }

    /// The `J`-residue (twin types) through a chamber.
    pub fn residue(&self, x: TwinChamber, kind: GenSet) -> TwinResidue {
        let chambers = match x.half {
            Half::Plus => self.building.residue_of(x.index as usize, kind).chambers,
            Half::Minus => {
                let under = self.building.residue_of(self.mate(x.index as usize), self.sigma0.apply_set(kind));
                let mut c: Vec<u32> = under.chambers.iter().map(|&x| self.mate_inv[x as usize]).collect();
                c.sort_unstable();
                c
            }
        };
        TwinResidue { half: x.half, kind, chambers }
    }

    /// Every chamber of each residue is opposite some chamber of the other.
    pub fn is_opposite_residues(&self, r: &TwinResidue, q: &TwinResidue) -> Result<bool> {
        let (plus, minus) = match (r.half, q.half) {
            (Half::Plus, Half::Minus) => (&r.chambers, &q.chambers),
            (Half::Minus, Half::Plus) => (&q.chambers, &r.chambers),
            _ => return Err(Error::SameHalf),
        };
        if !self.overrides.is_empty() {
            let each_plus = plus.iter().all(|&c| minus.iter().any(|&d| self.opposite(c as usize, d as usize)));
            let each_minus = minus.iter().all(|&d| plus.iter().any(|&c| self.opposite(c as usize, d as usize)));
            return Ok(each_plus && each_minus);
        }
        let n = self.chamber_count();
        let mut mates = FixedBitSet::with_capacity(n);
        for &d in minus {
            mates.insert(self.mate(d as usize));
        }
        let mut plus_bits = FixedBitSet::with_capacity(n);
        for &c in plus {
            plus_bits.insert(c as usize);
        }
        let b = &*self.building;
        Ok(plus.iter().all(|&c| !b.opposite_set(c as usize).is_disjoint(&mates))
            && mates.ones().all(|m| !b.opposite_set(m).is_disjoint(&plus_bits)))
    }

    /// Lifts an automorphism `g` of the underlying building to the half-swapping
    /// map `c⁺ ↦ (mate⁻¹ g c)⁻`, `d⁻ ↦ (g mate d)⁺`, whose twin type
    /// permutation is `σ0∘σ_g`. Then `δ*(c, θc) = δ(c, gc)·w0`.
    pub fn swap_lift(&self, g: &BuildingAutomorphism) -> Result<BuildingAutomorphism> {
        if g.is_half_swapping() || g.chamber_count() != self.chamber_count() {
            return Err(Error::IncompatibleBuilding("expected an automorphism of the underlying building".into()));
        }
        let image = (0..self.chamber_count()).map(|c| self.mate_inv[g.apply(c)]).collect();
        let back = (0..self.chamber_count()).map(|d| g.apply(self.mate(d)) as u32).collect();
        Ok(BuildingAutomorphism::half_swapping_unchecked(image, back, self.sigma0.after(g.sigma())))
    }

    /// Half-swapping map from explicit chamber tables; checks that panels are
    /// sent to panels and infers the twin type permutation.
    pub fn half_swapping(&self, image: Vec<u32>, back: Vec<u32>) -> Result<BuildingAutomorphism> {
        let n = self.chamber_count();
        if image.len() != n || back.len() != n {
            return Err(Error::IncompatibleBuilding("map tables have the wrong size".into()));
        }
        let rank = self.rank();
        let mut sigma = Vec::with_capacity(rank);
        for s in 0..rank {
            let panel = self.panel(Half::Plus, s, 0);
            let imgs: Vec<u32> = {
                let mut v: Vec<u32> = panel.iter().map(|&c| image[c as usize]).collect();
                v.sort_unstable();
                v
            };
            let t = (0..rank)
                .find(|&t| self.panel(Half::Minus, t, imgs[0] as usize) == imgs)
                .ok_or_else(|| Error::IncompatibleBuilding(format!("the {s}-panel of chamber 0 is not mapped to a panel")))?;
            sigma.push(t as u8);
        }
        let sigma = DiagramAutomorphism::new(self.building.system().matrix(), sigma)
            .map_err(|e| Error::IncompatibleBuilding(e.to_string()))?;
        for c in 0..n {
            for s in 0..rank {
                let mut imgs: Vec<u32> = self.panel(Half::Plus, s, c).iter().map(|&x| image[x as usize]).collect();
                imgs.sort_unstable();
                if self.panel(Half::Minus, sigma.apply(s), imgs[0] as usize) != imgs {
                    return Err(Error::IncompatibleBuilding(format!("the {s}-panel of chamber {c} is not mapped to a panel")));
                }
                let mut back_imgs: Vec<u32> = self.panel(Half::Minus, s, c).iter().map(|&x| back[x as usize]).collect();
                back_imgs.sort_unstable();
                if self.panel(Half::Plus, sigma.apply(s), back_imgs[0] as usize) != back_imgs {
                    return Err(Error::IncompatibleBuilding(format!("the minus {s}-panel of chamber {c} is not mapped to a panel")));
                }
            }
        }
        Ok(BuildingAutomorphism::half_swapping_unchecked(image, back, sigma))
    }

    /// The map sending each chamber to the chamber with the same index in the
    /// other half.
    pub fn identity_across_halves(&self) -> Result<BuildingAutomorphism> {
        let id: Vec<u32> = (0..self.chamber_count() as u32).collect();
        self.half_swapping(id.clone(), id)
    }

    /// Exhaustive (Tw1)–(Tw3) check, plus: every chamber has an opposite and
    /// residues of equal type through opposite chambers are opposite.
    pub fn verify_twin_axioms(&self, model: &str) -> CheckReport {
        timed(model, "axioms", |report| {
            let t = self.table();
            let n = self.chamber_count();
            let rank = self.rank();
            let pair = |x: usize, y: usize| (x * n + y) as u64;
            for c in 0..n {
                for d in 0..n {
                    report.total += 1;
                    let w = self.plus_minus(c, d);
                    let back = self.codistance(TwinChamber::minus(d), TwinChamber::plus(c))?;
                    if back != t.inverse(w) {
                        report.fail(pair(c, d), format!("Tw1 fails for c+={c}, d-={d}"));
                    }
                }
            }
            for (xh, yh) in [(Half::Plus, Half::Minus), (Half::Minus, Half::Plus)] {
                for x in 0..n {
                    for y in 0..n {
                        let cx = TwinChamber { half: xh, index: x as u32 };
                        let w = self.codistance(cx, TwinChamber { half: yh, index: y as u32 })?;
                        for s in 0..rank {
                            report.total += 1;
                            let ws = t.right(w, s);
                            let shorter = t.length(ws) < t.length(w);
                            let mut reached = false;
                            for z in self.panel(yh, s, y) {
                                if z as usize == y {
                                    continue;
                                }
                                let wz = self.codistance(cx, TwinChamber { half: yh, index: z })?;
                                reached |= wz == ws;
                                if shorter && wz != ws {
                                    report.fail(pair(x, y), format!("Tw2 fails for {xh:?} {x}, {yh:?} {y}, generator {s}, chamber {z}"));
                                }
                            }
                            if !reached {
                                report.fail(pair(x, y), format!("Tw3 fails for {xh:?} {x}, {yh:?} {y}, generator {s}"));
                            }
                        }
                    }
                }
            }
            for c in 0..n {
                report.total += 1;
                let Some(d) = (0..n).find(|&d| self.opposite(c, d)) else {
                    report.fail(c as u64, format!("chamber {c} has no opposite"));
                    continue;
                };
                for kind in GenSet::all_subsets(rank) {
                    let r = self.residue(TwinChamber::plus(c), kind);
                    let q = self.residue(TwinChamber::minus(d), kind);
                    if !self.is_opposite_residues(&r, &q)? {
                        report.fail(c as u64, format!("{kind}-residues through opposite chambers {c}+, {d}- are not opposite"));
                    }
                }
            }
            Ok(())
        })
        .expect("codistance on cross pairs is total")
    }
}
