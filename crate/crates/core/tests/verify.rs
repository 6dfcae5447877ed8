use std::sync::Arc;

use finhtop::io::{from_json, to_json};
use finhtop::models::{circle, circle_to_point, sphere_pushout, w_poset};
use finhtop::verify::*;
use finhtop::{Budget, Diagram, FinitePoset, PosetDiagram, PosetMap};

fn budget() -> Budget {
    Budget::default()
}

fn status(r: &CheckReport) -> &'static str {
    match (&r.hypothesis, r.conclusion) {
        (_, ConclusionStatus::Verified) => "verified",
        (_, ConclusionStatus::Refuted) => "refuted",
        (HypothesisStatus::NotEstablished { .. }, _) => "not-established",
        (HypothesisStatus::OracleUnknown { .. }, _) => "unknown",
        _ => "skipped",
    }
}

#[test]
fn hand_built_examples_have_expected_outcomes() {
    let expected = [
        (TheoremId::Ubp, vec!["verified", "not-established"]),
        (TheoremId::Maximum, vec!["verified", "verified", "not-established"]),
        (TheoremId::Homotopy, vec!["verified", "verified"]),
        (TheoremId::Dbp, vec!["verified", "not-established"]),
        (TheoremId::Dbpgen, vec!["verified", "not-established", "verified"]),
        (TheoremId::UpWp, vec!["verified", "not-established", "verified"]),
        (TheoremId::Cofinality, vec!["verified", "verified", "not-established"]),
        (TheoremId::Thomason, vec!["verified", "verified"]),
        (TheoremId::Barycentric, vec!["verified", "verified"]),
        (TheoremId::IndexContractible, vec!["verified", "not-established"]),
        (TheoremId::GammaIndex, vec!["verified", "not-established"]),
    ];
    for (theorem, outcomes) in expected {
        let reports = run_examples(theorem, &budget()).unwrap();
        let got: Vec<&str> = reports.iter().map(status).collect();
        assert_eq!(got, outcomes, "{theorem}");
    }
}

#[test]
fn up_beat_removal_on_a_chain_is_all_beat() {
    let d = PosetDiagram::from_map(&circle_to_point());
    let r = check_ubp(&d, "0").unwrap();
    assert!(r.is_verified());
    assert!(r.evidence.removals["hocolim"].all_beat());
    assert_eq!(r.evidence.removals["hocolim"].len(), 4);
}

#[test]
fn singleton_index_is_trivially_a_maximum() {
    let index = Arc::new(FinitePoset::chain(1));
    let d = Diagram::constant(index, Arc::new(circle())).unwrap();
    let r = check_maximum(&d).unwrap();
    assert!(r.is_verified());
    assert!(r.evidence.removals["hocolim"].is_empty());
}

#[test]
fn wrong_dominator_is_rejected() {
    let d = Diagram::constant(Arc::new(FinitePoset::chain(3)), Arc::new(circle())).unwrap();
    let r = check_dbp(&d, "2", Some("0")).unwrap();
    assert!(matches!(r.hypothesis, HypothesisStatus::NotEstablished { .. }));
    assert!(check_dbp(&d, "2", Some("1")).unwrap().is_verified());
}

#[test]
fn non_weak_equivalence_transition_blocks_dbpgen() {
    let r = check_dbpgen(&sphere_pushout(), "1", Some("0"), &budget()).unwrap();
    assert!(matches!(r.hypothesis, HypothesisStatus::NotEstablished { .. }));
    assert_eq!(r.conclusion, ConclusionStatus::Skipped);
}

#[test]
fn w_over_a_point_is_cofinal() {
    let index = Arc::new(FinitePoset::chain(1));
    let d = Diagram::constant(index.clone(), Arc::new(circle())).unwrap();
    let phi = PosetMap::constant(Arc::new(w_poset()), index, "0").unwrap();
    let r = check_cofinality(&phi, &d, &budget()).unwrap();
    assert!(r.is_verified(), "{r}");
    assert!(r.evidence.removals.contains_key("R up phase"));
    assert!(r.evidence.removals["R down phase"].all_beat());
}

#[test]
fn cofinality_rejects_a_map_into_another_index() {
    let d = sphere_pushout();
    let phi = PosetMap::identity(Arc::new(FinitePoset::chain(2)));
    assert!(check_cofinality(&phi, &d, &budget()).is_err());
}

#[test]
fn thomason_on_the_sphere_pushout() {
    let r = check_thomason_roundtrip(&sphere_pushout()).unwrap();
    assert!(r.is_verified());
    let p = &r.evidence.profiles["hocolim"];
    assert_eq!((p.betti(0), p.betti(1), p.betti(2)), (1, 0, 1));
}

#[test]
fn random_suites_verify_every_planted_instance() {
    for theorem in TheoremId::ALL {
        let reports = run_suite(theorem, 25, 3, &budget()).unwrap();
        let t = tally(&reports);
        assert_eq!(t.verified, 25, "{theorem}: {t:?}");
    }
}

#[test]
fn skipped_exactly_when_hypothesis_fails() {
    let mut reports = Vec::new();
    for theorem in TheoremId::ALL {
        reports.extend(run_examples(theorem, &budget()).unwrap());
    }
    for r in &reports {
        assert_eq!(r.conclusion == ConclusionStatus::Skipped, !r.hypothesis_established(), "{r}");
        assert_eq!(r.is_refuted(), r.evidence.counterexample.is_some());
    }
}

#[test]
fn suite_json_is_deterministic_and_round_trips() {
    let a = to_json(&run_suite(TheoremId::Cofinality, 12, 9, &budget()).unwrap());
    let b = to_json(&run_suite(TheoremId::Cofinality, 12, 9, &budget()).unwrap());
    assert_eq!(a, b);
    let back: Vec<CheckReport> = from_json(&a).unwrap();
    assert_eq!(to_json(&back), a);
}

#[test]
fn check_inputs_round_trip_through_json() {
    for theorem in TheoremId::ALL {
        for i in 0..3 {
            let input = random_instance(theorem, i);
            let back: CheckInput = from_json(&to_json(&input)).unwrap();
            assert_eq!(back, input, "{theorem}");
        }
    }
}

#[test]
fn run_check_rejects_mismatched_inputs() {
    let input = CheckInput::Diagram {
        diagram: sphere_pushout(),
        point: None,
        dominator: None,
    };
    assert!(run_check(TheoremId::Ubp, &input, &budget()).is_err());
    assert!(run_check(TheoremId::Homotopy, &input, &budget()).is_err());
    assert!(run_check(TheoremId::Thomason, &input, &budget()).is_ok());
}

#[test]
fn theorem_ids_parse() {
    for t in TheoremId::ALL {
        assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
    }
    assert!("nope".parse::<TheoremId>().is_err());
}
