use std::sync::Arc;

use super::*;
use crate::coxeter::CoxeterMatrix;
use crate::geometry::{ProjectivePlane, SymplecticQuadrangle};

fn pg(q: u32) -> FlagComplex {
    building_from_geometry(ProjectivePlane::new(q).unwrap().geometry()).unwrap()
}

fn gq() -> FlagComplex {
    building_from_geometry(SymplecticQuadrangle::new().geometry()).unwrap()
}

fn a3() -> FlagComplex {
    flag_building_rank3(2).unwrap().1
}

#[test]
fn flag_building_sizes() {
    let b = pg(2);
    assert_eq!(b.building().chamber_count(), 21);
    assert!((0..2).all(|s| b.building().panels(s).iter().all(|p| p.len() == 3)));
    let w = gq();
    assert_eq!(w.building().chamber_count(), 45);
    assert_eq!(w.building().system().matrix(), &CoxeterMatrix::dihedral(4));
    for q in [3, 4] {
        let b = pg(q);
        assert!((0..2).all(|s| b.building().panels(s).iter().all(|p| p.len() == q as usize + 1)));
    }
    let a = a3();
    assert_eq!(a.building().chamber_count(), 315);
    assert!((0..3).all(|s| a.building().panels(s).iter().all(|p| p.len() == 3)));
    let counts: Vec<usize> = (0..3).map(|t| (0..a.vertex_count()).filter(|&v| a.vertex_type(v) == t).count()).collect();
    assert_eq!(counts, [15, 35, 15]);
    let t = a.building().table();
    assert_eq!((t.order(), t.length(t.longest())), (24, 6));
    assert!(a.building().is_thick());
}

#[test]
fn thin_building_sizes_and_distance() {
    for (m, order) in [(CoxeterMatrix::type_a(2), 6), (CoxeterMatrix::type_b(2), 8)] {
        let b = thin_building(&CoxeterSystem::new(m)).unwrap();
        assert_eq!(b.chamber_count(), order);
        assert!(!b.is_thick());
        let t = b.table();
        for u in t.elements() {
            assert_eq!(b.weyl_distance(u.0 as usize, u.0 as usize), t.identity());
            for v in t.elements() {
                assert_eq!(b.weyl_distance(u.0 as usize, v.0 as usize), t.mul(t.inverse(u), v));
            }
        }
    }
    assert_eq!(
        thin_building(&CoxeterSystem::new(CoxeterMatrix::affine_a(3))).unwrap_err(),
        Error::NonSpherical
    );
}

#[test]
fn weyl_distance_examples() {
    let b = pg(2);
    let bd = b.building();
    let t = bd.table();
    // Flags sharing a line with distinct points differ by the point-type generator.
    for c in 0..21 {
        assert_eq!(bd.weyl_distance(c, c), t.identity());
        for &d in bd.panel(0, c) {
            if d as usize != c {
                assert_eq!(bd.weyl_distance(c, d as usize), t.generator(0));
                assert_eq!(b.flag(c)[1], b.flag(d as usize)[1]);
            }
        }
    }
    for c in 0..21 {
        assert_eq!(bd.opposite_set(c).count_ones(..), 8);
        assert_eq!(t.length(t.longest()), 3);
    }
}

#[test]
fn opposite_counts_are_q_to_the_m() {
    for (complex, expected) in [(pg(3), 27), (pg(4), 64), (gq(), 16), (a3(), 64)] {
        let b = complex.building();
        for c in 0..b.chamber_count() {
            assert_eq!(b.opposite_set(c).count_ones(..), expected);
        }
    }
}

#[test]
fn distance_is_inverted_by_swapping_arguments() {
    for complex in [pg(3), gq(), a3()] {
        let b = complex.building();
        let t = b.table();
        for c in 0..b.chamber_count() {
            for d in 0..b.chamber_count() {
                assert_eq!(b.weyl_distance(d, c), t.inverse(b.weyl_distance(c, d)));
            }
        }
    }
}

#[test]
fn gate_property_on_all_models() {
    let mut models: Vec<(&str, FlagComplex)> = vec![("pg2", pg(2)), ("pg3", pg(3)), ("pg4", pg(4)), ("gq", gq()), ("a3", a3())];
    for (name, complex) in models.drain(..) {
        let report = complex.building().verify_gate_property(name);
        assert!(report.passed(), "{name}: {:?}", report.failures.first());
        assert!(report.total > 0);
    }
    for m in [CoxeterMatrix::type_a(2), CoxeterMatrix::type_b(2), CoxeterMatrix::type_a(3)] {
        assert!(thin_building(&CoxeterSystem::new(m)).unwrap().verify_gate_property("thin").passed());
    }
}

#[test]
fn labelling_is_independent_of_chamber_order() {
    // Relabel the chambers by a fixed shuffle; distances must transform along.
    let complex = pg(3);
    let b = complex.building();
    let n = b.chamber_count();
    let perm: Vec<usize> = (0..n).map(|i| (i * 17 + 5) % n).collect();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let panel_of = (0..2)
        .map(|s| (0..n).map(|new| b.panel_id(s, inv[new]) as u32).collect())
        .collect();
    let shuffled = Building::from_panels(b.shared_table(), n, panel_of).unwrap();
    for c in 0..n {
        for d in 0..n {
            assert_eq!(shuffled.weyl_distance(perm[c], perm[d]), b.weyl_distance(c, d));
        }
    }
}

#[test]
fn inconsistent_panels_are_rejected() {
    // A hexagon of six chambers labelled as A2 is a thin building; breaking
    // one panel pairing yields an inconsistent labelling.
    let table = Arc::new(CoxeterGroupTable::new(&CoxeterSystem::new(CoxeterMatrix::type_a(2))).unwrap());
    let good = vec![vec![0, 0, 1, 1, 2, 2], vec![2, 0, 0, 1, 1, 2]];
    assert!(Building::from_panels(Arc::clone(&table), 6, good).is_ok());
    let twelve = vec![
        vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5],
        vec![5, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5],
    ];
    assert!(matches!(Building::from_panels(Arc::clone(&table), 12, twelve), Err(Error::InconsistentLabelling(_))));
    let split = vec![vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5], vec![2, 0, 0, 1, 1, 2, 5, 3, 3, 4, 4, 5]];
    assert_eq!(Building::from_panels(table, 12, split).unwrap_err(), Error::DisconnectedChamberGraph);
}

#[test]
fn residue_examples() {
    let b = pg(2);
    let bd = b.building();
    assert_eq!(bd.residue_of(4, GenSet::EMPTY).chambers, vec![4]);
    let panel = bd.residue_of(4, GenSet::singleton(0));
    assert_eq!(panel.chambers.len(), 3);
    assert!(panel.chambers.iter().all(|&c| b.flag(c as usize)[1] == b.flag(4)[1]));
    let a = a3();
    assert_eq!(a.building().residue_of(0, GenSet::full(3)).chambers.len(), 315);
    // Vertex residues of A3(2): a point lies in 21 chambers, a line in 9.
    assert_eq!(a.building().residue_of(0, [1, 2].into_iter().collect()).chambers.len(), 21);
    assert_eq!(a.building().residue_of(0, [0, 2].into_iter().collect()).chambers.len(), 9);
}

#[test]
fn self_twin_axioms_pass() {
    for (name, complex) in [("pg2", pg(2)), ("pg3", pg(3)), ("gq", gq()), ("a3", a3())] {
        let twin = TwinModel::self_twin(complex.shared_building()).unwrap();
        let report = twin.verify_twin_axioms(name);
        assert!(report.passed(), "{name}: {:?}", report.failures.first());
    }
    for m in [CoxeterMatrix::type_a(2), CoxeterMatrix::type_b(2)] {
        let twin = TwinModel::thin(&CoxeterSystem::new(m)).unwrap();
        assert!(twin.verify_twin_axioms("thin").passed());
    }
}

#[test]
fn corrupted_codistance_is_reported() {
    let mut twin = TwinModel::self_twin(pg(2).shared_building()).unwrap();
    let g = twin.table().generator(0);
    twin.corrupt_codistance(0, 0, g);
    assert!(!twin.verify_twin_axioms("pg2").passed());
}

#[test]
fn codistance_examples() {
    let twin = TwinModel::self_twin(pg(2).shared_building()).unwrap();
    let t = twin.table();
    for c in 0..21 {
        let w = twin.codistance(TwinChamber::plus(c), TwinChamber::minus(c)).unwrap();
        assert_eq!(t.length(w), 3);
        for d in 0..21 {
            if twin.plus().weyl_distance(c, d) == t.longest() {
                assert_eq!(twin.codistance(TwinChamber::plus(c), TwinChamber::minus(d)).unwrap(), t.identity());
            }
        }
    }
    assert_eq!(twin.codistance(TwinChamber::plus(0), TwinChamber::plus(1)), Err(Error::SameHalf));
    assert_eq!(twin.codistance(TwinChamber::minus(0), TwinChamber::minus(1)), Err(Error::SameHalf));
}

#[test]
fn thin_twin_codistance_table() {
    let twin = TwinModel::thin(&CoxeterSystem::new(CoxeterMatrix::type_a(2))).unwrap();
    let t = twin.table();
    let mut opposite_pairs = 0;
    for u in t.elements() {
        for v in t.elements() {
            let w = twin.codistance(TwinChamber::plus(u.0 as usize), TwinChamber::minus(v.0 as usize)).unwrap();
            assert_eq!(w, t.mul(t.inverse(u), v));
            assert!(t.length(w) <= 3);
            if twin.opposite(u.0 as usize, v.0 as usize) {
                opposite_pairs += 1;
                assert_eq!(u, v);
            }
        }
    }
    assert_eq!(opposite_pairs, 6);
    let across = twin.identity_across_halves().unwrap();
    assert!(across.sigma().is_identity());
    assert!((0..6).all(|c| twin.opposite(c, across.apply(c))));
}

#[test]
fn opposite_residue_examples() {
    let twin = TwinModel::self_twin(pg(2).shared_building()).unwrap();
    let c = 0;
    let d = (0..21).find(|&d| twin.opposite(c, d)).unwrap();
    let rc = twin.residue(TwinChamber::plus(c), GenSet::EMPTY);
    let rd = twin.residue(TwinChamber::minus(d), GenSet::EMPTY);
    assert!(twin.is_opposite_residues(&rc, &rd).unwrap());
    let all_plus = twin.residue(TwinChamber::plus(0), GenSet::full(2));
    let all_minus = twin.residue(TwinChamber::minus(0), GenSet::full(2));
    assert!(twin.is_opposite_residues(&all_plus, &all_minus).unwrap());
    // A panel and the same-type panel through a non-opposite chamber.
    let p = twin.residue(TwinChamber::plus(c), GenSet::singleton(0));
    let q = twin.residue(TwinChamber::minus(c), GenSet::singleton(0));
    assert!(!twin.is_opposite_residues(&p, &q).unwrap());
    assert_eq!(twin.is_opposite_residues(&p, &p), Err(Error::SameHalf));
    // Minus residues use twin types: a minus 0-panel is an underlying 1-panel.
    assert_eq!(twin.residue(TwinChamber::minus(c), GenSet::singleton(0)).chambers, twin.plus().panel(1, c));
}

#[test]
fn residues_of_different_types_are_never_opposite() {
    let twin = TwinModel::self_twin(a3().shared_building()).unwrap();
    for c in [0usize, 100, 314] {
        for d in (0..315).filter(|&d| twin.opposite(c, d)).take(3) {
            for j in GenSet::all_subsets(3) {
                for k in GenSet::all_subsets(3) {
                    let r = twin.residue(TwinChamber::plus(c), j);
                    let q = twin.residue(TwinChamber::minus(d), k);
                    assert_eq!(twin.is_opposite_residues(&r, &q).unwrap(), j == k, "{j} {k}");
                }
            }
        }
    }
}
