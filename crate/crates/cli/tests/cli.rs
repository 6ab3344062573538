use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use syncgroups_cli::commands::group_of_report;
use syncgroups_cli::formats::{load_automaton, load_group};
use syncgroups_core::classify::{
    EndoWitness, PartitionPairWitness, SectionRegularWitness, SeparationWitness, SpreadingWitness,
};
use syncgroups_core::transform::cerny_automaton;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syncgroups")).args(args).output().expect("binary runs")
}

fn bin_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syncgroups")).args(args).env(key, value).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("syncgroups-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn cerny_four_has_shortest_reset_nine() {
    let out = bin(&["cerny", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["shortest"]["word"]["length"], 9);
    assert_eq!(r["result"]["matches"], true);
}

#[test]
fn classify_petersen_group() {
    let out = bin(&["classify-group", "petersen-aut"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let flags = &r["result"]["flags"];
    assert_eq!(flags["synchronizing"], "YES");
    assert_eq!(flags["separating"], "YES");
    assert_eq!(flags["spreading"], "NO");
    assert_eq!(r["result"]["witnesses"]["spreading"]["lambda"], 2);

    let spreading = bin(&["classify-group", "petersen-aut", "--property", "spreading"]);
    assert_eq!(spreading.status.code(), Some(1));
}

fn revalidate(r: &Value) {
    let g = group_of_report(r).unwrap();
    let w = &r["result"]["witnesses"];
    let parse = |k: &str| (!w[k].is_null()).then(|| w[k].clone());
    if let Some(v) = parse("synchronizing") {
        serde_json::from_value::<SectionRegularWitness>(v).unwrap().validate(&g).unwrap();
    }
    if let Some(v) = parse("separating") {
        serde_json::from_value::<SeparationWitness>(v).unwrap().validate(&g).unwrap();
    }
    if let Some(v) = parse("partition_separating") {
        serde_json::from_value::<PartitionPairWitness>(v).unwrap().validate(&g).unwrap();
    }
    if let Some(v) = parse("spreading") {
        serde_json::from_value::<SpreadingWitness>(v).unwrap().validate(&g).unwrap();
    }
    if let Some(v) = parse("almost_synchronizing") {
        serde_json::from_value::<EndoWitness>(v).unwrap().validate_non_uniform(&g).unwrap();
    }
}

#[test]
fn reports_are_self_contained() {
    for name in ["petersen-aut", "grid-3", "subsets-6-2", "cyclic-6", "wreath-2-3"] {
        let out = bin(&["classify-group", name, "--no-ns"]);
        let r = report(&out);
        revalidate(&r);
        // The embedded input also works as a group file.
        let file = temp_file(&format!("{name}.json"), &serde_json::to_string(&r["input"]).unwrap());
        let again = bin(&["classify-group", file.to_str().unwrap(), "--no-ns"]);
        assert_eq!(report(&again)["result"], r["result"], "{name}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = bin(&["classify-group", "grid-3"]);
    let b = bin(&["classify-group", "grid-3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1), "grid group is not synchronizing");
    let e1 = bin(&["random-experiment", "n=6", "k=2", "samples=30", "seed=7"]);
    let e2 = bin(&["random-experiment", "--n", "6", "--k", "2", "--samples", "30", "--seed", "7"]);
    assert_eq!(e1.stdout, e2.stdout);
}

#[test]
fn group_file_formats() {
    let f = temp_file("c5.json", r#"{"degree": 5, "generators": ["(0 1 2 3 4)"]}"#);
    let g = load_group(&f).unwrap();
    assert_eq!(g.degree(), 5);
    assert_eq!(g.cayley_enumerate(100).order, 5);

    let bad = temp_file("bad.json", r#"{"degree": 3, "generators": ["[0,0,1]"]}"#);
    assert!(load_group(&bad).is_err());
    let out = bin(&["classify-group", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators[0]"));

    let out = bin(&["classify-group", "no-such-group"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn automaton_file_is_cerny_four() {
    let f = temp_file("c4.json", r#"{"states": 4, "letters": {"R": [1,2,3,0], "B": [1,1,2,3]}}"#);
    assert_eq!(load_automaton(&f).unwrap(), cerny_automaton(4).unwrap());
    let out = bin(&["reset-word", f.to_str().unwrap(), "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["shortest"]["word"]["length"], 9);
    assert!(r["result"]["greedy"]["length"].as_u64().unwrap() >= 9);

    let ragged = temp_file("ragged.json", r#"{"states": 3, "letters": {"a": [0,1]}}"#);
    assert_eq!(bin(&["classify-automaton", ragged.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn non_synchronizing_automaton_is_refuted() {
    let f = temp_file("perm.json", r#"{"states": 3, "letters": {"a": [1,2,0], "b": [1,0,2]}}"#);
    let out = bin(&["classify-automaton", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["result"]["synchronizing"], false);
    assert!(r["result"]["non_collapsible_pair"].is_array());
}

#[test]
fn graph_command() {
    let out = bin(&["graph", "petersen", "--ops", "omega,chi,alpha"]);
    let r = report(&out);
    assert_eq!(r["result"]["clique_number"], 2);
    assert_eq!(r["result"]["chromatic_number"], 3);
    assert_eq!(r["result"]["independence_number"], 4);

    let r = report(&bin(&["graph", "petersen", "--complement", "--ops", "omega,chi"]));
    assert_eq!(r["result"]["clique_number"], 4);
    assert_eq!(r["result"]["chromatic_number"], 5);

    let r = report(&bin(&["graph", "path", "4", "--ops", "hull,aut"]));
    assert_eq!(r["result"]["hull"]["added"], serde_json::json!([[0, 3]]));

    let r = report(&bin(&["graph", "cycle", "6", "--ops", "core"]));
    assert_eq!(r["result"]["core"]["order"], 2);
    assert_eq!(r["result"]["core"]["uniform_kernel"], true);

    let f = temp_file("c4.edges", "4\n0 1\n1 2\n2 3\n3 0\n");
    let r = report(&bin(&["graph", f.to_str().unwrap(), "--ops", "aut,chi"]));
    assert_eq!(r["result"]["automorphisms"], 8);
    assert_eq!(r["result"]["chromatic_number"], 2);

    assert_eq!(bin(&["graph", "cycle", "2"]).status.code(), Some(2));
}

#[test]
fn bounds_command() {
    let out = bin(&["bounds", "cyclic-7", "--map", "[0,0,2,3,4,5,6]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["cerny_bound"], 36);
    assert_eq!(r["result"]["instance"]["within_cerny"], true);
    assert_eq!(r["result"]["instance"]["within_spreading_bound"], true);

    // C6 does not synchronize a map folding its blocks.
    let out = bin(&["bounds", "cyclic-6", "--map", "[0,1,2,0,1,2]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(bin(&["bounds", "cyclic-6", "--map", "[0,1]"]).status.code(), Some(2));
}

#[test]
fn ns_ranks_and_budget_overrides() {
    let r = report(&bin(&["ns-ranks", "grid-3"]));
    assert_eq!(r["result"]["ranks"], serde_json::json!([3]));
    assert_eq!(r["result"]["exhaustive"], true);

    let starved = bin_env(&["ns-ranks", "subsets-6-2"], "SYNCGROUPS_NS_BUDGET", "1");
    assert_eq!(starved.status.code(), Some(3));
    assert_eq!(report(&starved)["result"]["exhaustive"], false);
}

#[test]
fn fixtures_all_match() {
    let out = bin(&["fixtures"]);
    let r = report(&out);
    assert_eq!(r["result"]["failed"], 0, "{}", serde_json::to_string_pretty(&r).unwrap());
    assert_eq!(out.status.code(), Some(0));
    assert!(r["result"]["checks"].as_u64().unwrap() >= 40);
}

#[test]
fn random_experiment_mostly_synchronizes() {
    let out = bin(&["random-experiment", "n=8", "k=2", "samples=200", "seed=1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let fraction = r["result"]["fraction_synchronizing"].as_f64().unwrap();
    assert!(fraction > 0.7, "fraction {fraction}");
    assert_eq!(r["result"]["exceeding_cerny_bound"], 0);
    assert!(bin(&["random-experiment", "n=8", "k=2"]).status.code() == Some(2), "seed is mandatory");
}
