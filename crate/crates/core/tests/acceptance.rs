//! Acceptance criteria AC1–AC10 at zero tolerance. Prints one line per
//! criterion and exits nonzero when an outcome differs from the expectation
//! in `EXPECTED_FAILURES`.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chamberlab::coxeter::{CoxeterMatrix, CoxeterSystem, GenSet, PermutationOracle};
use chamberlab::geometry::ProjectivePlane;
use chamberlab::models::{DeskModel, ModelKind};
use chamberlab::opposition::{
    baer_polarity_checks, beukje_condition, is_j_opposite, verify_absolute_point_theorem, verify_fixed_simplex,
    verify_local_descent, verify_main0, verify_main2_all, verify_no_opposite_automorphism, verify_point_displacement,
    BeukjeCondition,
};
use chamberlab::report::CheckReport;
use chamberlab::symmetry::{
    absolute_points, classify_involutory_collineation, collineation_group, involutory_collineations, order_decomposition,
    standard_correlation, DualityCoset, InvolutionClass,
};

/// Criteria that cannot hold as stated; they still run in full and print FAIL.
const EXPECTED_FAILURES: &[(&str, &str)] =
    &[("AC6", "steepest descent from a fixed chamber can stop at a local minimum above the global one")];

type Outcome = std::result::Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn prime_power(q: u64) -> (u64, u32) {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    assert_eq!(m, 1, "{q} is not a prime power");
    (p, e)
}

/// `|PΓL(n+1, q)|`.
fn pgaml(n: u32, q: u64) -> u64 {
    let (_, e) = prime_power(q);
    let mut order = q.pow(n * (n + 1) / 2);
    for i in 2..=n + 1 {
        order *= q.pow(i) - 1;
    }
    order * e as u64
}

fn check(report: &CheckReport, total: u64) -> Result<(), String> {
    if report.total != total {
        return Err(format!("{} {}: {} cases, expected {total}", report.check, report.model, report.total));
    }
    match report.failures.first() {
        Some(f) => Err(format!(
            "{} {}: {} failures, first element {}: {}",
            report.check,
            report.model,
            report.failures.len(),
            f.element,
            f.witness
        )),
        None => Ok(()),
    }
}

fn thick_models() -> Vec<(DeskModel, u64)> {
    vec![
        (DeskModel::pg(2).unwrap(), 2 * pgaml(2, 2)),
        (DeskModel::pg(3).unwrap(), 2 * pgaml(2, 3)),
        (DeskModel::pg(4).unwrap(), 2 * pgaml(2, 4)),
        (DeskModel::gq().unwrap(), 2 * 720),
        (DeskModel::a3().unwrap(), 2 * pgaml(3, 2)),
    ]
}

fn thin_models() -> Vec<DeskModel> {
    ["A2", "B2"].iter().map(|t| DeskModel::load(ModelKind::Thin, None, Some(t)).unwrap()).collect()
}

fn ac1() -> Outcome {
    let mut counts = Vec::new();
    for q in [2u32, 3, 4, 5] {
        let scan = verify_absolute_point_theorem(&ProjectivePlane::new(q).unwrap()).map_err(|e| e.to_string())?;
        check(&scan.report, pgaml(2, q as u64))?;
        counts.push(format!("q={q}: {}", scan.report.total));
    }
    Ok(format!("every duality has an absolute point ({})", counts.join(", ")))
}

fn ac2() -> Outcome {
    for q in [2u32, 3, 5, 7, 8] {
        let plane = ProjectivePlane::new(q).unwrap();
        let polarity = standard_correlation(&plane);
        let report = baer_polarity_checks(&plane, &polarity).map_err(|e| e.to_string())?;
        check(&report, 2)?;
        let abs = absolute_points(plane.geometry(), &polarity).unwrap();
        if abs.len() != q as usize + 1 {
            return Err(format!("q={q}: {} absolute points", abs.len()));
        }
    }
    Ok("q+1 absolute points for q in {2,3,5,7,8}; collinear for even q, at most 2 per line for odd q".into())
}

fn ac3() -> Outcome {
    let scan = verify_point_displacement(&DeskModel::gq().unwrap()).map_err(|e| e.to_string())?;
    check(&scan.report, 720)?;
    if scan.max_min_displacement > 2 {
        return Err(format!("some collineation moves every point by {}", scan.max_min_displacement));
    }
    Ok(format!("720 collineations, largest minimal displacement {}", scan.max_min_displacement))
}

fn ac4(models: &[(DeskModel, u64)]) -> Outcome {
    for (m, total) in models {
        check(&verify_no_opposite_automorphism(m), *total)?;
    }
    Ok(summary(models))
}

fn summary(models: &[(DeskModel, u64)]) -> String {
    models.iter().map(|(m, t)| format!("{} {t}", m.name())).collect::<Vec<_>>().join(", ")
}

fn ac5(models: &[(DeskModel, u64)]) -> Outcome {
    for (m, total) in models {
        check(&verify_main2_all(m), *total)?;
    }
    for m in thin_models() {
        check(&verify_main2_all(&m), m.map_count() as u64)?;
        let twin = m.twin();
        let rank = twin.rank();
        let mut opposite = 0;
        for i in 0..m.map_count() {
            let theta = m.twin_map(i).unwrap();
            if !is_j_opposite(twin, &theta, GenSet::full(rank)).unwrap() {
                continue;
            }
            opposite += 1;
            if !theta.sigma().is_identity() {
                return Err(format!("{}: opposite map {i} has nontrivial twin type", m.name()));
            }
            if let Some(j) = GenSet::all_subsets(rank).find(|&j| !is_j_opposite(twin, &theta, j).unwrap()) {
                return Err(format!("{}: opposite map {i} is not {j}-opposite", m.name()));
            }
        }
        if opposite == 0 {
            return Err(format!("{}: positive control found no opposite map", m.name()));
        }
    }
    Ok(format!("{}; thin A2/B2 controls have opposite maps with σ = id", summary(models)))
}

fn ac6(models: &[(DeskModel, u64)]) -> Outcome {
    for (m, total) in models {
        check(&verify_main0(m), *total)?;
    }
    let mut stuck = Vec::new();
    for (m, total) in models {
        let report = verify_local_descent(m);
        if report.total != *total {
            return Err(format!("local descent on {}: {} cases", m.name(), report.total));
        }
        if !report.passed() {
            stuck.push(format!("{} {}/{total}", m.name(), report.failures.len()));
        }
    }
    if !stuck.is_empty() {
        return Err(format!("global witnesses validate on all maps; local descent stops above the minimum on {}", stuck.join(", ")));
    }
    Ok(format!("validated witnesses and matching local descent on {}", summary(models)))
}

fn oracle_order(oracle: &PermutationOracle) -> usize {
    let id: Vec<u16> = (0..oracle.degree() as u16).collect();
    let mut seen = vec![id.clone()];
    let mut i = 0;
    while i < seen.len() {
        for g in oracle.generators() {
            let next: Vec<u16> = seen[i].iter().map(|&x| g[x as usize]).collect();
            if !seen.contains(&next) {
                seen.push(next);
            }
        }
        i += 1;
    }
    seen.len()
}

fn oracle_equivalence(name: &str, matrix: CoxeterMatrix, order: usize) -> Result<(), String> {
    let system = CoxeterSystem::new(matrix);
    let oracle = PermutationOracle::new(&system).map_err(|e| e.to_string())?;
    if oracle_order(&oracle) != order {
        return Err(format!("{name}: permutation group of order {}", oracle_order(&oracle)));
    }
    let rank = system.rank() as u8;
    let max_len = system.longest_element(GenSet::full(rank as usize)).unwrap().length();
    let mut by_form = HashMap::new();
    let mut by_perm = HashMap::new();
    let mut words = vec![vec![]];
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for word in &words {
            let form = system.reduce(word);
            let perm = oracle.realize(word);
            if *by_form.entry(form.clone()).or_insert_with(|| perm.clone()) != perm
                || *by_perm.entry(perm).or_insert_with(|| form.clone()) != form
            {
                return Err(format!("{name}: normal form and permutation disagree on {word:?}"));
            }
            if oracle.realize(form.letters()) != oracle.realize(word) {
                return Err(format!("{name}: {form} does not represent {word:?}"));
            }
            next.extend((0..rank).map(|s| [word.as_slice(), &[s]].concat()));
        }
        words = next;
    }
    if by_form.len() != order {
        return Err(format!("{name}: {} normal forms", by_form.len()));
    }
    Ok(())
}

/// Window `[f(1), f(2), f(3)]` of the affine permutation of a word in Ã2.
fn affine_window(word: &[u8]) -> [i64; 3] {
    let mut f = [1, 2, 3];
    for &s in word {
        match s {
            0 => f = [f[2] - 3, f[1], f[0] + 3],
            1 => f.swap(0, 1),
            _ => f.swap(1, 2),
        }
    }
    f
}

fn affine_length(f: [i64; 3]) -> usize {
    let mut len = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            len += (f[j] - f[i]).div_euclid(3).unsigned_abs() as usize;
        }
    }
    len
}

fn random_affine_words(count: usize) -> Result<(), String> {
    let system = CoxeterSystem::new(CoxeterMatrix::affine_a(2));
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_eda2);
    for _ in 0..count {
        let len = rng.random_range(0..=12usize);
        let word: Vec<u8> = (0..len).map(|_| rng.random_range(0..3u8)).collect();
        let form = system.reduce(&word);
        let window = affine_window(&word);
        if affine_window(form.letters()) != window || form.length() != affine_length(window) {
            return Err(format!("{word:?} reduces to {form}, which is a different element or not reduced"));
        }
        if system.reduce(form.letters()) != form {
            return Err(format!("{word:?}: reducing {form} again changes it"));
        }
        if form.length() < word.len() {
            let deletable = (0..len).any(|i| {
                (i + 1..len).any(|j| {
                    let shorter: Vec<u8> =
                        word.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &s)| s).collect();
                    affine_window(&shorter) == window
                })
            });
            if !deletable {
                return Err(format!("{word:?}: no pair of letters can be deleted"));
            }
        }
    }
    Ok(())
}

fn ac7() -> Outcome {
    oracle_equivalence("A2", CoxeterMatrix::type_a(2), 6)?;
    oracle_equivalence("B2", CoxeterMatrix::type_b(2), 8)?;
    oracle_equivalence("A3", CoxeterMatrix::type_a(3), 24)?;
    oracle_equivalence("B3", CoxeterMatrix::type_b(3), 48)?;
    oracle_equivalence("I2(6)", CoxeterMatrix::dihedral(6), 12)?;
    random_affine_words(10_000)?;
    Ok("oracle equivalence on A2, B2, A3, B3, I2(6); deletion and idempotence on 10000 random Ã2 words".into())
}

fn ac8() -> Outcome {
    let m = DeskModel::a3().unwrap();
    let scan = verify_fixed_simplex(&m);
    check(&scan.report, scan.involutions as u64)?;
    if scan.involutions == 0 || scan.without_fixed_residue != 0 {
        return Err(format!("{} involutions, {} without a fixed residue", scan.involutions, scan.without_fixed_residue));
    }
    Ok(format!("{} involutions among {} maps each fix a residue", scan.involutions, m.map_count()))
}

fn ac9(models: &[(DeskModel, u64)]) -> Outcome {
    let thin = thin_models();
    let all = models.iter().map(|(m, _)| m).chain(thin.iter());
    let mut names = Vec::new();
    for m in all {
        let axioms = m.twin().verify_twin_axioms(m.name());
        check(&axioms, axioms.total)?;
        let gate = m.twin().plus().verify_gate_property(m.name());
        check(&gate, gate.total)?;
        if axioms.total == 0 || gate.total == 0 {
            return Err(format!("{}: empty suite", m.name()));
        }
        names.push(m.name().to_string());
    }
    Ok(format!("twin axioms and gate property on {}", names.join(", ")))
}

fn ac10() -> Outcome {
    let mut flagged = 0usize;
    for q in [2u32, 3, 4, 5] {
        let plane = ProjectivePlane::new(q).unwrap();
        let group = collineation_group(&plane).map_err(|e| e.to_string())?;
        let correlation = standard_correlation(&plane);
        let coset = DualityCoset::new(&group, &correlation);
        for (i, tau) in coset.iter().enumerate() {
            let condition = beukje_condition(q, tau.order());
            if condition != BeukjeCondition::None {
                flagged += 1;
                if absolute_points(plane.geometry(), &tau).unwrap().is_empty() {
                    return Err(format!("q={q}: duality {i} meets condition {condition} without an absolute point"));
                }
            }
            match order_decomposition(&tau, q) {
                Ok(_) | Err(chamberlab::error::Error::NotApplicable(_)) => {}
                Err(e) => return Err(format!("q={q}: duality {i}: {e}")),
            }
        }
    }
    let mut counts = Vec::new();
    for q in [2u32, 3, 4, 5, 9] {
        let plane = ProjectivePlane::new(q).unwrap();
        let g = plane.geometry();
        let root = (1..=q).find(|r| r * r == q);
        let (mut elations, mut homologies, mut baer) = (0, 0, 0);
        for (_, map) in involutory_collineations(&plane) {
            let class = classify_involutory_collineation(g, &map).map_err(|e| format!("q={q}: {e}"))?;
            let fixed = (0..g.point_count()).filter(|&p| map.point_image(p) == p).count() as u32;
            let (expected, allowed) = match &class {
                InvolutionClass::Elation { .. } => {
                    elations += 1;
                    (q + 1, q % 2 == 0)
                }
                InvolutionClass::Homology { .. } => {
                    homologies += 1;
                    (q + 2, q % 2 == 1)
                }
                InvolutionClass::Baer { .. } => {
                    baer += 1;
                    (q + root.unwrap_or(0) + 1, root.is_some())
                }
            };
            if fixed != expected || !allowed {
                return Err(format!("q={q}: {} with {fixed} fixed points", class.name()));
            }
        }
        counts.push(format!("q={q}: {elations}/{homologies}/{baer}"));
    }
    Ok(format!(
        "{flagged} dualities meet an order condition, all with absolute points; involutions elation/homology/baer {}",
        counts.join(", ")
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let models = thick_models();
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("AC1", Box::new(ac1)),
        ("AC2", Box::new(ac2)),
        ("AC3", Box::new(ac3)),
        ("AC4", Box::new(|| ac4(&models))),
        ("AC5", Box::new(|| ac5(&models))),
        ("AC6", Box::new(|| ac6(&models))),
        ("AC7", Box::new(ac7)),
        ("AC8", Box::new(ac8)),
        ("AC9", Box::new(|| ac9(&models))),
        ("AC10", Box::new(ac10)),
    ];
    let mut unexpected = 0;
    for (id, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let expected = EXPECTED_FAILURES.iter().find(|(e, _)| *e == id).map(|(_, why)| *why);
        let secs = t.elapsed().as_secs_f64();
        match (&outcome, expected) {
            (Ok(detail), None) => println!("{id:<4} PASS  {detail} [{secs:.1}s]"),
            (Err(detail), None) => {
                unexpected += 1;
                println!("{id:<4} FAIL  {detail} [{secs:.1}s]");
            }
            (Err(detail), Some(why)) => println!("{id:<4} FAIL  {detail} (expected: {why}) [{secs:.1}s]"),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("{id:<4} PASS  {detail} (unexpected: listed as an expected failure) [{secs:.1}s]");
            }
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
