use serde_json::Value;
use syncgroups_wasm::{catalogue_names, cerny_analysis, classify_named_group, graph_invariants};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn cerny_trace_shrinks_to_a_point() {
    for n in 2..=8 {
        let r = parse(cerny_analysis(n).unwrap());
        assert_eq!(r["length"], (n - 1) * (n - 1));
        let trace = r["trace"].as_array().unwrap();
        assert_eq!(trace.len(), (n - 1) * (n - 1) + 1);
        assert_eq!(trace[0].as_array().unwrap().len(), n);
        assert_eq!(trace.last().unwrap().as_array().unwrap().len(), 1);
    }
    assert!(cerny_analysis(1).is_err());
    assert!(cerny_analysis(99).is_err());
}

#[test]
fn petersen_invariants() {
    let r = parse(graph_invariants("petersen", "", false).unwrap());
    assert_eq!((r["clique_number"].as_u64(), r["chromatic_number"].as_u64()), (Some(2), Some(3)));
    assert_eq!(r["edges"].as_array().unwrap().len(), 15);
    let c = parse(graph_invariants("petersen", "", true).unwrap());
    assert_eq!((c["clique_number"].as_u64(), c["chromatic_number"].as_u64()), (Some(4), Some(5)));
    let j = parse(graph_invariants("johnson", "7, 3, 0", false).unwrap());
    assert_eq!(j["order"], 35);
    assert!(graph_invariants("petersen", "x", false).is_err());
    assert!(graph_invariants("complete", "100", false).is_err());
}

#[test]
fn classify_by_name() {
    let r = parse(classify_named_group("petersen-aut").unwrap());
    assert_eq!(r["flags"]["synchronizing"], "YES");
    assert_eq!(r["flags"]["spreading"], "NO");
    assert!(r["ns_ranks"].is_null());
    assert!(classify_named_group("subsets-12-3").is_err());
    assert!(classify_named_group("bogus").is_err());
    let names = parse(catalogue_names());
    assert!(names.as_array().unwrap().iter().any(|n| n["name"] == "petersen-aut"));
}
