use scorza_core::verify::{verify_suite, Suite, ALL_OPS};
use scorza_core::Error;

#[test]
fn reports_are_deterministic_and_sorted() {
    for suite in [Suite::Composition, Suite::Jordan, Suite::Catalog] {
        let a = serde_json::to_string(&verify_suite(suite, 4, 99).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_suite(suite, 4, 99).unwrap()).unwrap();
        assert_eq!(a, b, "{suite}");
    }
    let rep = verify_suite(Suite::Composition, 3, 1).unwrap();
    let names: Vec<&str> = rep.checks.iter().map(|c| c.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(!serde_json::to_string(&rep).unwrap().contains("wall"));
}

#[test]
fn composition_records_the_associativity_counterexample() {
    let rep = verify_suite(Suite::Composition, 100, 42).unwrap();
    assert!(rep.pass);
    let ev = rep.check("composition/octonions_not_associative").unwrap().evidence.clone().unwrap();
    assert_ne!(ev["(ab)c"], ev["a(bc)"]);
}

#[test]
fn all_suite_covers_every_operation() {
    let rep = verify_suite(Suite::All, 2, 5).unwrap();
    assert!(rep.pass, "{:?}", rep.failures().map(|c| &c.name).collect::<Vec<_>>());
    assert!(rep.check("all/op_coverage").unwrap().pass);
    for op in ALL_OPS {
        assert!(rep.ops_covered.iter().any(|c| c == op), "{op}");
    }
}

#[test]
fn bad_requests_are_input_errors() {
    assert!(matches!(verify_suite(Suite::All, 0, 0), Err(Error::Input(_))));
    assert!(matches!("everything".parse::<Suite>(), Err(Error::Input(_))));
}
