//! End-to-end acceptance gate. Each test evaluates one criterion over its
//! full parameter range and prints a single verdict line (visible with
//! `cargo test -- --nocapture`).

use gu11_cli::report::{
    anchor_list, classgroup_checks, cm_checks, hondatate_checks, invariants_checks,
    lattice_checks, qseries_checks, verify_all, weierstrass_checks, CheckResult, Status,
};
use gu11_core::arith::is_squarefree;
use gu11_core::quadfield::{class_group, QuadField};

fn verdict_line(idx: u32, name: &str, ok: bool) {
    println!(
        "criterion {idx:02} ({name}): {}",
        if ok { "pass" } else { "FAIL" }
    );
}

/// All checks whose id starts with one of the prefixes pass; at least one
/// such check exists.
fn ids_pass(checks: &[CheckResult], prefixes: &[&str]) -> bool {
    let mut seen = false;
    for c in checks {
        if prefixes.iter().any(|p| c.id.starts_with(p)) {
            seen = true;
            if c.status != Status::Pass {
                return false;
            }
        }
    }
    seen
}

fn squarefree_up_to(max: u64) -> impl Iterator<Item = u64> {
    (1..=max).filter(|&n| is_squarefree(n))
}

#[test]
fn criterion_01_lattice_self_duality() {
    let ok = squarefree_up_to(50)
        .all(|n| ids_pass(&lattice_checks(n), &["lattice.selfdual", "lattice.standard"]));
    verdict_line(1, "lattice self-duality for all N <= 50", ok);
    assert!(ok);
}

#[test]
fn criterion_02_class_number_chain() {
    let chain = squarefree_up_to(50).all(|n| {
        ids_pass(
            &classgroup_checks(n),
            &["classgroup.forms", "classgroup.ambiguous", "classgroup.gu"],
        )
    });
    let gauss = class_group(&QuadField::new(1).unwrap()).h == 1
        && class_group(&QuadField::new(3).unwrap()).h == 1;
    let ok = chain && gauss;
    verdict_line(2, "class-number chain for all N <= 50", ok);
    assert!(ok);
}

#[test]
fn criterion_03_cm_identities() {
    let ok = squarefree_up_to(50)
        .all(|n| ids_pass(&cm_checks(n), &["cm.matrix", "cm.positivity"]));
    verdict_line(3, "CM matrix identities and positivity for all N <= 50", ok);
    assert!(ok);
}

#[test]
fn criterion_04_automorphism_orders() {
    let ok = squarefree_up_to(50)
        .all(|n| ids_pass(&cm_checks(n), &["cm.aut", "cm.units", "cm.branch"]));
    verdict_line(4, "automorphism orders and empty mixed branch for all N <= 50", ok);
    assert!(ok);
}

#[test]
fn criterion_05_surface_classification() {
    let runs = [
        (1u64, 5u64, vec![11u64, 19, 31]),
        (2, 11, vec![6, 7]),
        (3, 7, vec![5, 13, 19]),
    ];
    let ok = runs.iter().all(|(n, p, aux)| {
        match hondatate_checks(*n, *p, aux) {
            Ok(checks) => checks.iter().all(|c| c.status == Status::Pass),
            Err(_) => false,
        }
    });
    verdict_line(5, "surface classification, minimality, and bijection", ok);
    assert!(ok);
}

#[test]
fn criterion_06_self_map_laws() {
    let l2 = invariants_checks(2, None, 24, 2);
    let l3 = invariants_checks(3, None, 24, 2);
    let ok = ids_pass(&l2, &["invariants.level2.tsquared", "invariants.level2.fricke"])
        && ids_pass(&l3, &["invariants.level3.tsquared", "invariants.level3.fricke"]);
    verdict_line(6, "squared self-maps and involution formulas", ok);
    assert!(ok);
}

#[test]
fn criterion_07_ring_identities() {
    let l2 = invariants_checks(2, None, 24, 2);
    let l3 = invariants_checks(3, None, 24, 2);
    let ok = ids_pass(&l2, &["invariants.level2.delta"])
        && ids_pass(&l3, &["invariants.level3.delta"]);
    verdict_line(7, "discriminant identities in cleared form", ok);
    assert!(ok);
}

#[test]
fn criterion_08_invariant_subrings() {
    let l1 = invariants_checks(1, None, 24, 2);
    let l2 = invariants_checks(2, None, 24, 2);
    let l3 = invariants_checks(3, None, 24, 2);
    let ok = ids_pass(
        &l1,
        &[
            "invariants.level1.order2",
            "invariants.level1.order3",
            "invariants.level1.integrality",
        ],
    ) && ids_pass(
        &l2,
        &["invariants.level2.generation", "invariants.level2.integrality"],
    ) && ids_pass(
        &l3,
        &["invariants.level3.generation", "invariants.level3.integrality"],
    );
    verdict_line(8, "invariant subring generation and integrality", ok);
    assert!(ok);
}

#[test]
fn criterion_09_qseries_oracle() {
    let q = qseries_checks(200).unwrap();
    let w = weierstrass_checks();
    let ok = q.iter().all(|c| c.status == Status::Pass)
        && w.iter().all(|c| c.status == Status::Pass);
    verdict_line(9, "q-expansion oracle at precision 200 and symbolic identity", ok);
    assert!(ok);
}

#[test]
fn criterion_10_report_stability() {
    let a = verify_all(10);
    let b = verify_all(10);
    let byte_identical = a.to_json() == b.to_json();
    let flagged: Vec<&str> = a
        .checks
        .iter()
        .filter(|c| c.status == Status::Flagged)
        .map(|c| c.id.as_str())
        .collect();
    let anchored = a
        .checks
        .iter()
        .all(|c| anchor_list().contains(&c.paper_ref.as_str()));
    let ok = byte_identical
        && !a.has_fail()
        && flagged == ["hermitian.indexef", "invariants.level2.degree"]
        && anchored;
    verdict_line(
        10,
        "byte-identical report with two flagged and zero failed entries",
        ok,
    );
    assert!(ok);
}
