//! Spherical buildings as typed chamber systems, flag complexes of the
//! built-in geometries, and self-twinnings with codistance.

mod automorphism;
mod flags;
mod twin;

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::coxeter::{CoxeterGroupTable, CoxeterSystem, Elem, GenSet};
use crate::error::{Error, Result};
use crate::report::{timed, CheckReport};

pub use automorphism::BuildingAutomorphism;
pub use flags::{building_from_geometry, flag_building_rank3, FlagComplex};
pub use twin::{Half, TwinChamber, TwinModel, TwinResidue};

/// Chambers of one residue type, partitioned into residues.
#[derive(Debug, Clone)]
pub struct ResiduePartition {
    id_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl ResiduePartition {
    pub fn residue_id(&self, c: usize) -> usize {
        self.id_of[c] as usize
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Sorted chambers of residue `id`.
    pub fn members(&self, id: usize) -> &[u32] {
        &self.members[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.members.iter().map(|m| m.as_slice())
    }
}

/// A `J`-residue of a building.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    pub kind: GenSet,
    pub chambers: Vec<u32>,
}

/// A spherical building given by its chambers and panels.
///
/// Weyl distances are labelled by breadth-first search from a base chamber and
/// cached per base chamber on first use.
#[derive(Debug)]
pub struct Building {
    table: Arc<CoxeterGroupTable>,
    chambers: usize,
    panel_of: Vec<Vec<u32>>,
    panels: Vec<Vec<Vec<u32>>>,
    rows: Vec<OnceLock<Box<[Elem]>>>,
    opposite: Vec<OnceLock<FixedBitSet>>,
    residues: Vec<OnceLock<ResiduePartition>>,
}

impl Building {
    /// `panel_of[s][c]` is the id of the `s`-panel containing chamber `c`.
    /// Every base chamber is labelled once to validate connectivity and
    /// well-definedness of δ.
    pub fn from_panels(table: Arc<CoxeterGroupTable>, chambers: usize, panel_of: Vec<Vec<u32>>) -> Result<Self> {
        let rank = table.rank();
        if panel_of.len() != rank || panel_of.iter().any(|p| p.len() != chambers) || chambers == 0 {
            return Err(Error::InvalidGeometry("panel tables do not match rank and chamber count".into()));
        }
        let mut panels = Vec::with_capacity(rank);
        for ids in &panel_of {
            let count = ids.iter().max().map_or(0, |&m| m as usize + 1);
            let mut members = vec![Vec::new(); count];
            for (c, &p) in ids.iter().enumerate() {
                members[p as usize].push(c as u32);
            }
            if members.iter().any(|m| m.len() < 2) {
                return Err(Error::InvalidGeometry("every panel needs at least two chambers".into()));
            }
            panels.push(members);
        }
        let building = Building {
            table,
            chambers,
            panel_of,
            panels,
            rows: (0..chambers).map(|_| OnceLock::new()).collect(),
            opposite: (0..chambers).map(|_| OnceLock::new()).collect(),
            residues: (0..1usize << rank).map(|_| OnceLock::new()).collect(),
        };
        for c in 0..chambers {
            building.label_from(c)?;
        }
        Ok(building)
    }

    pub fn table(&self) -> &CoxeterGroupTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<CoxeterGroupTable> {
        Arc::clone(&self.table)
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.table.system()
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers
    }

    pub fn panel_id(&self, s: usize, c: usize) -> usize {
        self.panel_of[s][c] as usize
    }

    /// Sorted chambers of the `s`-panel through `c`.
    pub fn panel(&self, s: usize, c: usize) -> &[u32] {
        &self.panels[s][self.panel_of[s][c] as usize]
    }

    pub fn panels(&self, s: usize) -> &[Vec<u32>] {
        &self.panels[s]
    }

    pub fn is_thick(&self) -> bool {
        self.panels.iter().all(|ps| ps.iter().all(|p| p.len() >= 3))
    }

    fn label_from(&self, base: usize) -> Result<Box<[Elem]>> {
        let t = &*self.table;
        let unset = Elem(u16::MAX);
        let mut label = vec![unset; self.chambers];
        label[base] = t.identity();
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            let lx = label[x];
            for s in 0..self.rank() {
                let next = t.right(lx, s);
                for &y in self.panel(s, x) {
                    let y = y as usize;
                    if y == x {
                        continue;
                    }
                    if label[y] == unset {
                        if t.length(next) != t.length(lx) + 1 {
                            return Err(Error::InconsistentLabelling(format!(
                                "base {base}: chamber {y} reached through a non-increasing {s}-step"
                            )));
                        }
                        label[y] = next;
                        queue.push_back(y);
                    } else {
                        let ly = label[y];
                        let ok = ly == next || (ly == lx && t.length(next) < t.length(lx));
                        if !ok {
                            return Err(Error::InconsistentLabelling(format!(
                                "base {base}: {s}-adjacent chambers {x} and {y} carry incompatible labels"
                            )));
                        }
                    }
                }
            }
        }
        if label.contains(&unset) {
            return Err(Error::DisconnectedChamberGraph);
        }
        Ok(label.into_boxed_slice())
    }

    /// Weyl distances from `c` to every chamber.
    pub fn delta_row(&self, c: usize) -> &[Elem] {
        self.rows[c].get_or_init(|| self.label_from(c).expect("labelling validated at construction"))
    }

    /// δ(c, d).
    pub fn weyl_distance(&self, c: usize, d: usize) -> Elem {
        self.delta_row(c)[d]
    }

    /// Chambers at Weyl distance `w0` from `c`.
    pub fn opposite_set(&self, c: usize) -> &FixedBitSet {
        self.opposite[c].get_or_init(|| {
            let w0 = self.table.longest();
            let mut bits = FixedBitSet::with_capacity(self.chambers);
            for (d, &w) in self.delta_row(c).iter().enumerate() {
                if w == w0 {
                    bits.insert(d);
                }
            }
            bits
        })
    }

    pub fn is_opposite(&self, c: usize, d: usize) -> bool {
        self.opposite_set(c).contains(d)
    }

    /// Partition of the chambers into `J`-residues, ids in order of first chamber.
    pub fn residues(&self, kind: GenSet) -> &ResiduePartition {
        self.residues[kind.0 as usize].get_or_init(|| {
            let unset = u32::MAX;
            let mut id_of = vec![unset; self.chambers];
            let mut members = Vec::new();
            for start in 0..self.chambers {
                if id_of[start] != unset {
                    continue;
                }
                let id = members.len() as u32;
                let mut comp = vec![start as u32];
                id_of[start] = id;
                let mut i = 0;
                while i < comp.len() {
                    let x = comp[i] as usize;
                    for s in kind.iter() {
                        for &y in self.panel(s, x) {
                            if id_of[y as usize] == unset {
                                id_of[y as usize] = id;
                                comp.push(y);
                            }
                        }
                    }
                    i += 1;
                }
                comp.sort_unstable();
                members.push(comp);
            }
            ResiduePartition { id_of, members }
        })
    }

    /// The `J`-residue containing `c`.
    pub fn residue_of(&self, c: usize, kind: GenSet) -> Residue {
        let part = self.residues(kind);
        Residue { kind, chambers: part.members(part.residue_id(c)).to_vec() }
    }

    /// Gate property for every chamber and panel.
    pub fn verify_gate_property(&self, model: &str) -> CheckReport {
        timed(model, "gate", |report| {
            let t = &*self.table;
            for c in 0..self.chambers {
                let row = self.delta_row(c);
                for s in 0..self.rank() {
                    for panel in self.panels(s) {
                        report.total += 1;
                        let min = panel.iter().map(|&d| t.length(row[d as usize])).min().unwrap();
                        let gates: Vec<u32> =
                            panel.iter().copied().filter(|&d| t.length(row[d as usize]) == min).collect();
                        if gates.len() != 1 {
                            report.fail(c as u64, format!("{s}-panel {panel:?} has {} gates", gates.len()));
                            continue;
                        }
                        let gate = row[gates[0] as usize];
                        let expected = t.right(gate, s);
                        if t.length(expected) != min + 1 {
                            report.fail(c as u64, format!("{s}-panel {panel:?}: gate label is not reduced on the right"));
                            continue;
                        }
                        for &d in panel {
                            if d != gates[0] && row[d as usize] != expected {
                                report.fail(c as u64, format!("chamber {d} in {s}-panel {panel:?} is not gated"));
                            }
                        }
                    }
                }
            }
            Ok(())
        })
        .expect("infallible body")
    }
}

/// The Coxeter complex of a finite Coxeter group: chambers are elements and
/// `δ(u, v) = u⁻¹v`.
pub fn thin_building(system: &CoxeterSystem) -> Result<Building> {
    let table = Arc::new(CoxeterGroupTable::new(system)?);
    thin_building_from_table(table)
}

pub(crate) fn thin_building_from_table(table: Arc<CoxeterGroupTable>) -> Result<Building> {
    let n = table.order();
    let panel_of = (0..table.rank())
        .map(|s| {
            let mut ids = vec![u32::MAX; n];
            let mut next = 0;
            for u in table.elements() {
                if ids[u.0 as usize] == u32::MAX {
                    let v = table.right(u, s);
                    ids[u.0 as usize] = next;
                    ids[v.0 as usize] = next;
                    next += 1;
                }
            }
            ids
        })
        .collect();
    Building::from_panels(table, n, panel_of)
}

#[cfg(test)]
mod tests;
