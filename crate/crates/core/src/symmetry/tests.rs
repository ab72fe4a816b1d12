use super::*;
use crate::building::{building_from_geometry, flag_building_rank3};
use crate::error::Error;
use crate::geometry::{ProjectivePlane, ProjectiveSpace3, SymplecticQuadrangle};

fn plane(q: u32) -> ProjectivePlane {
    ProjectivePlane::new(q).unwrap()
}

fn linear_map(pl: &ProjectivePlane, m: [[u16; 3]; 3], k: u32) -> GeometryMap {
    let pts = semilinear_point_map(pl, &Semilinear { matrix: m, frobenius: k }).unwrap();
    GeometryMap::new(pl.geometry(), extend_point_map(pl.geometry(), &pts).unwrap()).unwrap()
}

#[test]
fn permutation_helpers() {
    let a = vec![1u16, 2, 0, 3];
    let b = vec![0u16, 1, 3, 2];
    assert_eq!(compose(&a, &b), vec![1, 3, 0, 2]);
    assert!(is_identity(&compose(&a, &inverse(&a))));
    assert_eq!(order(&a), 3);
    assert_eq!(order(&compose(&a, &b)), 4);
    assert_eq!(power(&a, 3), vec![0, 1, 2, 3]);
    assert_eq!(power(&a, 2), compose(&a, &a));
}

#[test]
fn closure_is_a_group() {
    let pl = plane(2);
    let g = collineation_group(&pl).unwrap();
    assert_eq!(g.order(), 168);
    for gen in g.generators() {
        assert!(g.contains(gen));
    }
    for i in (0..g.order()).step_by(7) {
        let x = g.element(i);
        assert!(g.contains(&inverse(x)));
        for j in (0..g.order()).step_by(11) {
            assert!(g.contains(&compose(x, g.element(j))));
        }
    }
    assert_eq!(g.index_of(g.element(17)), Some(17));
    assert!(is_identity(g.element(0)));
}

#[test]
fn collineation_group_orders() {
    assert_eq!(collineation_group(&plane(3)).unwrap().order(), 5616);
    assert_eq!(collineation_group(&plane(4)).unwrap().order(), 120960);
    assert!(matches!(collineation_group(&plane(7)), Err(Error::Unsupported(_))));
}

#[test]
fn every_group_element_is_a_collineation() {
    let pl = plane(3);
    let g = collineation_group(&pl).unwrap();
    for x in g.iter().step_by(13) {
        let m = GeometryMap::new(pl.geometry(), x.to_vec()).unwrap();
        assert_eq!(m.kind(), MapKind::Collineation);
    }
}

#[test]
fn standard_correlation_is_a_polarity() {
    for q in [2, 3, 4] {
        let pl = plane(q);
        let c = standard_correlation(&pl);
        let checked = GeometryMap::new(pl.geometry(), c.image().to_vec()).unwrap();
        assert_eq!(checked.kind(), MapKind::Duality);
        assert_eq!(c.order(), 2);
        assert!(c.pow(2).is_identity());
        assert_eq!(c.pow(2).kind(), MapKind::Collineation);
    }
}

#[test]
fn dualities_are_valid_with_even_order() {
    let pl = plane(2);
    let g = collineation_group(&pl).unwrap();
    let c = standard_correlation(&pl);
    let coset = DualityCoset::new(&g, &c);
    assert_eq!(coset.len(), 168);
    let mut distinct = std::collections::HashSet::new();
    for d in coset.iter() {
        let checked = GeometryMap::new(pl.geometry(), d.image().to_vec()).unwrap();
        assert_eq!(checked.kind(), MapKind::Duality);
        assert_eq!(d.order() % 2, 0);
        distinct.insert(d.image().to_vec());
    }
    assert_eq!(distinct.len(), 168);
}

#[test]
fn rejects_non_automorphisms() {
    let pl = plane(2);
    let g = pl.geometry();
    let mut image: Vec<u16> = (0..14).collect();
    image.swap(0, 1);
    assert!(matches!(GeometryMap::new(g, image), Err(Error::PreconditionViolated(_))));
    let mut mixed: Vec<u16> = (0..14).collect();
    mixed.swap(0, 7);
    assert!(GeometryMap::new(g, mixed).is_err());
    assert!(GeometryMap::new(g, vec![0; 14]).is_err());
}

#[test]
fn absolute_points_of_the_standard_polarity() {
    let pl2 = plane(2);
    let abs = absolute_points(pl2.geometry(), &standard_correlation(&pl2)).unwrap();
    assert_eq!(abs.len(), 3);
    let line = pl2.geometry().join(abs[0] as usize, abs[1] as usize).unwrap();
    assert!(pl2.geometry().incident(abs[2] as usize, line));

    let pl3 = plane(3);
    let abs = absolute_points(pl3.geometry(), &standard_correlation(&pl3)).unwrap();
    assert_eq!(abs.len(), 4);
    for l in 0..pl3.geometry().line_count() {
        assert!(abs.iter().filter(|&&p| pl3.geometry().incident(p as usize, l)).count() <= 2);
    }

    let pl5 = plane(5);
    assert_eq!(absolute_points(pl5.geometry(), &standard_correlation(&pl5)).unwrap().len(), 6);

    let id = GeometryMap::identity(pl2.geometry());
    assert!(matches!(absolute_points(pl2.geometry(), &id), Err(Error::PreconditionViolated(_))));
}

#[test]
fn order_decomposition_examples() {
    let pl = plane(2);
    let g = collineation_group(&pl).unwrap();
    let c = standard_correlation(&pl);
    let coset = DualityCoset::new(&g, &c);
    let tau = coset.iter().find(|d| d.order() == 8).expect("a duality of order 8");
    let dec = order_decomposition(&tau, 2).unwrap();
    assert_eq!((dec.n, dec.q_prime, dec.r), (8, 2, 2));
    assert_eq!(dec.case, InvolutionCase::Elation);
    assert_eq!(dec.tau_prime.kind(), MapKind::Collineation);
    assert_eq!(dec.tau_prime.order(), 2);
    assert!(dec.p.is_none());

    let pl3 = plane(3);
    let g3 = collineation_group(&pl3).unwrap();
    let c3 = standard_correlation(&pl3);
    let coset3 = DualityCoset::new(&g3, &c3);
    let tau = coset3.iter().find(|d| d.order() == 6).expect("a duality of order 6");
    let dec = order_decomposition(&tau, 3).unwrap();
    assert_eq!((dec.n, dec.q_prime, dec.r), (6, 3, 1));
    assert_eq!(dec.case, InvolutionCase::Polarity);
    assert_eq!(dec.tau_prime.kind(), MapKind::Duality);
    assert_eq!((dec.p, dec.h, dec.ell), (Some(3), 1, 2));
    let t2 = dec.tau_double_prime.unwrap();
    assert_eq!((t2.kind(), t2.order()), (MapKind::Collineation, 3));

    let c2 = standard_correlation(&pl);
    assert!(matches!(order_decomposition(&c2, 2), Err(Error::NotApplicable(_))));
    let pl4 = plane(4);
    assert!(matches!(order_decomposition(&standard_correlation(&pl4), 4), Err(Error::NotApplicable(_))));
    assert!(matches!(
        order_decomposition(&GeometryMap::identity(pl.geometry()), 2),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn order_decomposition_cases_over_small_planes() {
    for q in [2u32, 3] {
        let pl = plane(q);
        let g = collineation_group(&pl).unwrap();
        let c = standard_correlation(&pl);
        for d in DualityCoset::new(&g, &c).iter() {
            match order_decomposition(&d, q) {
                Ok(dec) => {
                    assert_eq!(dec.tau_prime.order(), 2);
                    assert_eq!(dec.n, 2 * dec.q_prime as u64 * dec.r);
                }
                Err(Error::NotApplicable(_)) => assert!(d.order() % (2 * q as u64) != 0),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn classification_examples() {
    let pl2 = plane(2);
    let t = linear_map(&pl2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]], 0);
    let class = classify_involutory_collineation(pl2.geometry(), &t).unwrap();
    assert_eq!(class.name(), "elation");
    assert_eq!(fixed_substructure(pl2.geometry(), &t).points.len(), 3);

    let pl9 = plane(9);
    let minus = pl9.field().neg(1);
    let h = linear_map(&pl9, [[minus, 0, 0], [0, 1, 0], [0, 0, 1]], 0);
    let class = classify_involutory_collineation(pl9.geometry(), &h).unwrap();
    assert_eq!(class.name(), "homology");
    assert_eq!(fixed_substructure(pl9.geometry(), &h).points.len(), 11);
    if let InvolutionClass::Homology { center, axis } = class {
        assert!(!pl9.geometry().incident(center as usize, axis as usize));
    }

    let pl4 = plane(4);
    let b = linear_map(&pl4, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1);
    match classify_involutory_collineation(pl4.geometry(), &b).unwrap() {
        InvolutionClass::Baer { points } => assert_eq!(points.len(), 7),
        other => panic!("expected Baer, got {other:?}"),
    }

    assert!(matches!(
        classify_involutory_collineation(pl2.geometry(), &GeometryMap::identity(pl2.geometry())),
        Err(Error::NotInvolution)
    ));
}

#[test]
fn fixed_substructure_examples() {
    let pl4 = plane(4);
    let id = GeometryMap::identity(pl4.geometry());
    let all = fixed_substructure(pl4.geometry(), &id);
    assert_eq!(all.points.len(), 21);
    assert!(all.is_plane);
    assert_eq!(all.order, Some(4));

    let b = linear_map(&pl4, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1);
    let baer = fixed_substructure(pl4.geometry(), &b);
    assert!(baer.is_plane);
    assert_eq!(baer.order, Some(2));
    assert_eq!(baer.lines.len(), 7);
    assert!(baer.orbits_divide_order);

    let pl2 = plane(2);
    let g = collineation_group(&pl2).unwrap();
    let singer = g
        .iter()
        .map(|x| GeometryMap::new(pl2.geometry(), x.to_vec()).unwrap())
        .find(|m| m.order() == 7)
        .unwrap();
    let none = fixed_substructure(pl2.geometry(), &singer);
    assert!(none.points.is_empty());
    assert!(!none.is_plane);
    assert!(none.orbits_divide_order);
}

#[test]
fn involution_enumeration_matches_group_filter() {
    for q in [2u32, 3, 4, 5] {
        let pl = plane(q);
        let g = collineation_group(&pl).unwrap();
        let mut from_group: Vec<Vec<u16>> = g.iter().filter(|x| order(x) == 2).map(|x| x.to_vec()).collect();
        let mut enumerated: Vec<Vec<u16>> =
            involutory_collineations(&pl).into_iter().map(|(_, m)| m.image().to_vec()).collect();
        from_group.sort();
        enumerated.sort();
        let before = enumerated.len();
        enumerated.dedup();
        assert_eq!(before, enumerated.len(), "q = {q}: duplicate semilinear representatives");
        assert_eq!(from_group, enumerated, "q = {q}");
    }
}

#[test]
fn involution_classes_by_field() {
    let count = |q: u32| {
        let pl = plane(q);
        let mut by = std::collections::BTreeMap::new();
        for (_, m) in involutory_collineations(&pl) {
            *by.entry(classify_involutory_collineation(pl.geometry(), &m).unwrap().name()).or_insert(0) += 1;
        }
        by
    };
    let c2 = count(2);
    assert_eq!(c2.get("elation"), Some(&21));
    assert_eq!(c2.len(), 1);
    let c3 = count(3);
    assert_eq!(c3.get("homology"), Some(&117));
    assert_eq!(c3.len(), 1);
    let c4 = count(4);
    assert_eq!(c4.get("elation"), Some(&315));
    assert_eq!(c4.get("baer"), Some(&360));
}

#[test]
fn commuting_maps_permute_fixed_points() {
    let pl = plane(3);
    let g = collineation_group(&pl).unwrap();
    let geo = pl.geometry();
    let invols: Vec<GeometryMap> = involutory_collineations(&pl).into_iter().map(|(_, m)| m).collect();
    let h = &invols[0];
    let fixed: Vec<u32> = fixed_substructure(geo, h).points;
    let mut checked = 0;
    for x in g.iter().step_by(3) {
        let m = GeometryMap::new(geo, x.to_vec()).unwrap();
        if m.commutes_with(h) {
            checked += 1;
            let mut img: Vec<u32> = fixed.iter().map(|&p| m.point_image(p as usize) as u32).collect();
            img.sort_unstable();
            assert_eq!(img, fixed);
        }
    }
    assert!(checked > 1);
}

#[test]
fn absolute_points_are_fixed_flags_of_polarities() {
    let pl = plane(3);
    let geo = pl.geometry();
    let complex = building_from_geometry(geo).unwrap();
    let g = collineation_group(&pl).unwrap();
    let c = standard_correlation(&pl);
    let p = geo.point_count();
    for d in DualityCoset::new(&g, &c).iter().filter(|d| d.order() == 2) {
        let lifted = lift_to_building(&d, &complex).unwrap();
        let abs = absolute_points(geo, &d).unwrap();
        for x in 0..p {
            let l = d.point_image(x) - p;
            let is_abs = abs.contains(&(x as u32));
            if geo.incident(x, l) {
                let flag = [x as u16, (p + l) as u16];
                let c = complex.chamber_of(&flag).unwrap();
                assert_eq!(lifted.apply(c) == c, is_abs);
            } else {
                assert!(!is_abs);
            }
        }
    }
}

#[test]
fn lift_types() {
    let pl = plane(2);
    let complex = building_from_geometry(pl.geometry()).unwrap();
    let g = collineation_group(&pl).unwrap();
    let col = lift_to_building(&GeometryMap::new(pl.geometry(), g.element(5).to_vec()).unwrap(), &complex).unwrap();
    assert!(col.sigma().is_identity());
    let dual = lift_to_building(&standard_correlation(&pl), &complex).unwrap();
    assert_eq!(dual.sigma().apply(0), 1);
    assert!(dual.is_involution());
    let b = complex.building();
    for s in 0..2 {
        for c in 0..b.chamber_count() {
            for d in b.panel(s, c) {
                let t = dual.sigma().apply(s);
                assert_eq!(b.panel_id(t, dual.apply(c)), b.panel_id(t, dual.apply(*d as usize)));
            }
        }
    }
}

#[test]
fn quadrangle_group_and_duality() {
    let w = SymplecticQuadrangle::new();
    let (group, duality) = quadrangle_maps(&w).unwrap();
    assert_eq!(group.order(), 720);
    let geo = w.geometry();
    let f0 = geo.flags()[0];
    let mut orbit = std::collections::HashSet::new();
    for x in group.iter() {
        let m = GeometryMap::new(geo, x.to_vec()).unwrap();
        orbit.insert((m.point_image(f0.point as usize), m.line_image(f0.line as usize)));
    }
    assert_eq!(orbit.len(), 45);
    assert_eq!(duality.kind(), MapKind::Duality);
    assert!(GeometryMap::new(geo, duality.image().to_vec()).is_ok());
    let complex = building_from_geometry(geo).unwrap();
    let lifted = lift_to_building(&duality, &complex).unwrap();
    assert_eq!(lifted.sigma().apply(0), 1);
}

#[test]
fn self_duality_search() {
    let pl = plane(2);
    assert!(find_duality(pl.geometry()).is_some());
    let triangle = crate::geometry::IncidenceGeometry::new(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    assert!(find_duality(&triangle).is_some());
    let grid: Vec<Vec<u32>> = (0..3)
        .map(|i| (0..3).map(|j| 3 * i + j).collect())
        .chain((0..3).map(|j| (0..3).map(|i| 3 * i + j).collect()))
        .collect();
    let grid = crate::geometry::IncidenceGeometry::new(9, grid).unwrap();
    assert!(find_duality(&grid).is_none());
}

#[test]
fn rank3_group() {
    let space = ProjectiveSpace3::new();
    let g = rank3_automorphisms(&space).unwrap();
    assert_eq!(g.collineations.order(), 20160);
    assert_eq!(g.len(), 40320);
    assert!(is_identity(&compose(&g.polarity, &g.polarity)));
    let (_, complex) = flag_building_rank3(2).unwrap();
    let (kind, image) = g.get(20160 + 7);
    assert_eq!(kind, MapKind::Duality);
    let lifted = complex.lift(&image).unwrap();
    assert_eq!(lifted.sigma().perm(), &[2, 1, 0]);
    let (kind, image) = g.get(7);
    assert_eq!(kind, MapKind::Collineation);
    assert!(complex.lift(&image).unwrap().sigma().is_identity());
    for v in 0..space.vertex_count() {
        let t = ProjectiveSpace3::vertex_type(v);
        assert_eq!(ProjectiveSpace3::vertex_type(g.polarity[v] as usize), 2 - t);
    }
}
