//! Catalogued examples with their expected values. Each fixture rebuilds its
//! objects from parameters and recomputes every ledger entry from scratch.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use syncgroups_core::catalogue;
use syncgroups_core::classify::{
    average_product_check, classify_group, is_partition_separating, is_separating, is_synchronizing_group,
    synchronizes_map, Limits, Verdict,
};
use syncgroups_core::graph::{automorphism_count, chromatic_number, clique_number, core, hull, Graph};
use syncgroups_core::reset::{spreading_greedy_reset, GreedyReset};
use syncgroups_core::transform::{cerny_automaton, shortest_reset_word, Automaton, Transformation, DEFAULT_SUBSET_CAP};
use syncgroups_core::Result;

use crate::formats::parse_automaton;

/// One expected value: property name, value, and why it is expected.
pub struct Expectation {
    pub property: String,
    pub expected: Value,
    pub reason: &'static str,
}

pub struct Fixture {
    pub name: String,
    pub params: Value,
    pub ledger: Vec<Expectation>,
    evaluate: Box<dyn Fn() -> Result<BTreeMap<String, Value>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub fixture: String,
    pub params: Value,
    pub property: String,
    pub expected: Value,
    pub actual: Value,
    pub ok: bool,
    pub reason: &'static str,
}

fn expect(property: impl Into<String>, expected: Value, reason: &'static str) -> Expectation {
    Expectation { property: property.into(), expected, reason }
}

fn fixture(
    name: impl Into<String>,
    params: Value,
    ledger: Vec<Expectation>,
    evaluate: impl Fn() -> Result<BTreeMap<String, Value>> + 'static,
) -> Fixture {
    Fixture { name: name.into(), params, ledger, evaluate: Box::new(evaluate) }
}

fn values<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn verdict(v: Verdict) -> Value {
    json!(v)
}

fn shortest_length(a: &Automaton) -> Value {
    json!(shortest_reset_word(a, DEFAULT_SUBSET_CAP).word().map(|w| w.length))
}

fn word_image(a: &Automaton, letters: &str) -> Option<usize> {
    let idx: Option<Vec<usize>> = letters.chars().map(|c| a.letter_index(&c.to_string())).collect();
    a.reset_image(&idx?)
}

fn dungeon() -> Automaton {
    // Rooms 1..4 relabelled 0..3.
    parse_automaton(r#"{"states": 4, "letters": {"Red": [2,0,3,1], "Blue": [2,2,0,0]}}"#, "dungeon")
        .expect("fixture document is well formed")
}

pub fn catalogue_fixtures() -> Vec<Fixture> {
    let mut out = vec![
        fixture(
            "cerny-4",
            json!({ "n": 4 }),
            vec![
                expect("shortest_length", json!(9), "shortest reset word of the 4-state Černý automaton"),
                expect("BRRRBRRRB_image", json!(1), "BRRRBRRRB sends every state to state 2 of the 1-based table"),
            ],
            || {
                let a = cerny_automaton(4)?;
                Ok(values([("shortest_length", shortest_length(&a)), ("BRRRBRRRB_image", json!(word_image(&a, "BRRRBRRRB")))]))
            },
        ),
        fixture(
            "cerny-file-format",
            json!({ "states": 4, "letters": { "R": [1, 2, 3, 0], "B": [1, 1, 2, 3] } }),
            vec![expect("equals_cerny_4", json!(true), "the file describes the 4-state Černý automaton")],
            || {
                let a = parse_automaton(r#"{"states": 4, "letters": {"R": [1,2,3,0], "B": [1,1,2,3]}}"#, "fixture")
                    .expect("fixture document is well formed");
                Ok(values([("equals_cerny_4", json!(a == cerny_automaton(4)?))]))
            },
        ),
        fixture(
            "dungeon",
            json!({ "rooms": 4 }),
            vec![
                expect("blue_red_blue_image", json!(0), "Blue, Red, Blue leads to room 1 from anywhere"),
                expect("shortest_length", json!(3), "no word of length 2 resets the dungeon"),
            ],
            || {
                let a = dungeon();
                let (r, b) = (a.letter_index("Red").unwrap(), a.letter_index("Blue").unwrap());
                Ok(values([("blue_red_blue_image", json!(a.reset_image(&[b, r, b]))), ("shortest_length", shortest_length(&a))]))
            },
        ),
        fixture(
            "petersen-graph",
            json!({ "family": "petersen" }),
            vec![
                expect("omega", json!(2), "Petersen graph is triangle-free"),
                expect("chi", json!(3), "Petersen graph has chromatic number 3"),
                expect("complement_omega", json!(4), "complement has clique number 4"),
                expect("complement_chi", json!(5), "complement has chromatic number 5"),
                expect("core_order", json!(10), "Petersen graph is a core"),
            ],
            || {
                let p = Graph::petersen();
                let c = p.complement();
                let chi = |g: &Graph| json!(chromatic_number(g, Limits::default().colour_budget).exact());
                Ok(values([
                    ("omega", json!(clique_number(&p))),
                    ("chi", chi(&p)),
                    ("complement_omega", json!(clique_number(&c))),
                    ("complement_chi", chi(&c)),
                    ("core_order", json!(core(&p, Limits::default().endo_budget).vertices.len())),
                ]))
            },
        ),
        fixture(
            "petersen-aut",
            json!({ "group": "petersen-aut" }),
            vec![
                expect("order", json!(120), "Aut(Petersen) ≅ S5"),
                expect("rank", json!(3), "rank 3 action"),
                expect("synchronizing", verdict(Verdict::Yes), "no invariant graph has ω = χ"),
                expect("separating", verdict(Verdict::Yes), "ω·ω̄ = 8 ≠ 10"),
                expect("spreading", verdict(Verdict::No), "pentagon and 4-coclique meet in a constant number"),
                expect("spreading_lambda", json!(2), "every coclique image meets the pentagon twice"),
                expect("spreading_a_is_pentagon", json!(true), "A induces a 5-cycle"),
                expect("spreading_b_is_coclique", json!(true), "B is a 4-coclique"),
                expect("ns_empty", json!(true), "synchronizing groups synchronize every singular map"),
            ],
            || {
                let g = catalogue::petersen_automorphisms();
                let r = classify_group(&g, &Limits::default());
                let p = Graph::petersen();
                let w = r.witnesses.spreading.clone();
                let a: Option<Vec<usize>> =
                    w.as_ref().map(|w| (0..w.a.len()).filter(|&i| w.a[i] > 0).collect());
                let pentagon = match (&w, &a) {
                    (Some(w), Some(a)) => {
                        let h = p.induced(a);
                        w.a.iter().all(|&m| m <= 1) && a.len() == 5 && h.edge_count() == 5 && h.is_regular()
                    }
                    _ => false,
                };
                let coclique = w.as_ref().is_some_and(|w| w.b.len() == 4 && p.is_independent(&w.b));
                Ok(values([
                    ("order", json!(r.order)),
                    ("rank", json!(r.rank)),
                    ("synchronizing", verdict(r.flags.synchronizing)),
                    ("separating", verdict(r.flags.separating)),
                    ("spreading", verdict(r.flags.spreading)),
                    ("spreading_lambda", json!(w.as_ref().map(|w| w.lambda))),
                    ("spreading_a_is_pentagon", json!(pentagon)),
                    ("spreading_b_is_coclique", json!(coclique)),
                    ("ns_empty", json!(r.ns_ranks.as_ref().map(|ns| ns.exhaustive && ns.ranks.is_empty()))),
                ]))
            },
        ),
        fixture(
            "petersen-average",
            json!({ "group": "petersen-aut", "a": "pentagon", "b": "4-coclique" }),
            vec![expect("average", json!([2, 1]), "average of |A * Bg| is |A|·|B|/n = 5·4/10")],
            || {
                let g = catalogue::petersen_automorphisms();
                let p = Graph::petersen();
                let n = p.order();
                // Any induced 5-cycle and any 4-coclique will do.
                let pentagon = (0u32..1 << n)
                    .filter(|m| m.count_ones() == 5)
                    .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
                    .find(|s| {
                        let h = p.induced(s);
                        h.edge_count() == 5 && h.is_regular()
                    })
                    .expect("Petersen graph has 5-cycles");
                let coclique = (0u32..1 << n)
                    .filter(|m| m.count_ones() == 4)
                    .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
                    .find(|s| p.is_independent(s))
                    .expect("Petersen graph has 4-cocliques");
                let ind = |s: &[usize]| {
                    let mut v = vec![0u64; n];
                    s.iter().for_each(|&x| v[x] = 1);
                    v
                };
                let c = average_product_check(&g, &ind(&pentagon), &ind(&coclique), Limits::default().element_cap)?;
                Ok(values([("average", json!([c.average.0, c.average.1]))]))
            },
        ),
        fixture(
            "grid-3",
            json!({ "group": "grid-3" }),
            vec![
                expect("primitive", verdict(Verdict::Yes), "product action of S3 wr S2 is primitive"),
                expect("synchronizing", verdict(Verdict::No), "the rook's graph has ω = χ = 3"),
                expect("ns_contains_3", json!(true), "a rank-3 map is not synchronized"),
                expect("almost_synchronizing_probe", verdict(Verdict::Yes), "only uniform maps of rank 3 fail"),
            ],
            || {
                let g = catalogue::grid(3);
                let r = classify_group(&g, &Limits::default());
                Ok(values([
                    ("primitive", verdict(r.flags.primitive)),
                    ("synchronizing", verdict(r.flags.synchronizing)),
                    ("ns_contains_3", json!(r.ns_ranks.as_ref().map(|ns| ns.ranks.contains(&3)))),
                    ("almost_synchronizing_probe", verdict(r.flags.almost_synchronizing_probe)),
                ]))
            },
        ),
        fixture(
            "subsets-7-3",
            json!({ "group": "subsets-7-3" }),
            vec![
                expect("synchronizing", verdict(Verdict::No), "7 disjoint Fano planes partition the 35 triples"),
                expect("parts", json!(7), "7 parts"),
                expect("part_size", json!(5), "of size 5, since 5·7 = 35"),
                expect("section_size", json!(7), "the section is a Fano plane"),
            ],
            || {
                let g = catalogue::symmetric_on_k_subsets(7, 3);
                let r = is_synchronizing_group(&g, &Limits::default())?;
                let w = r.witness.as_ref();
                Ok(values([
                    ("synchronizing", verdict(r.verdict)),
                    ("parts", json!(w.map(|w| w.partition.len()))),
                    ("part_size", json!(w.map(|w| w.partition[0].len()))),
                    ("section_size", json!(w.map(|w| w.section.len()))),
                ]))
            },
        ),
        fixture(
            "hull-path-4",
            json!({ "family": "path", "params": [4] }),
            vec![
                expect("hull_is_cycle_4", json!(true), "hull of the 4-vertex path is the 4-cycle"),
                expect("hull_automorphisms", json!(8), "|Aut(C4)| = 8"),
            ],
            || {
                let budget = Limits::default().endo_budget;
                let h = hull(&Graph::path(4), budget);
                Ok(values([
                    ("hull_is_cycle_4", json!(h.undecided.is_empty() && h.graph == Graph::cycle(4)?)),
                    ("hull_automorphisms", json!(automorphism_count(&h.graph, budget))),
                ]))
            },
        ),
        fixture(
            "core-cycle-6",
            json!({ "family": "cycle", "params": [6] }),
            vec![
                expect("core_is_k2", json!(true), "even cycles retract onto an edge"),
                expect("uniform_kernel", json!(true), "retraction of a vertex-transitive graph has uniform kernel"),
                expect("order_divides", json!(true), "|core| divides 6"),
            ],
            || {
                let c = core(&Graph::cycle(6)?, Limits::default().endo_budget);
                let t = Transformation::new(c.retraction.clone())?;
                Ok(values([
                    ("core_is_k2", json!(c.graph == Graph::complete(2))),
                    ("uniform_kernel", json!(t.has_uniform_kernel())),
                    ("order_divides", json!(6 % c.vertices.len() == 0)),
                ]))
            },
        ),
        fixture(
            "cyclic-7-greedy",
            json!({ "group": "cyclic-7", "map": [0, 0, 2, 3, 4, 5, 6] }),
            vec![expect("within_square", json!(true), "greedy reset length ≤ 1 + p(p−2) = (p−1)²")],
            || {
                let g = catalogue::cyclic(7);
                let f = Transformation::new(vec![0, 0, 2, 3, 4, 5, 6])?;
                let ok = match spreading_greedy_reset(&g, &f, Limits::default().element_cap)? {
                    GreedyReset::Reset { word, .. } => word.length <= 36,
                    GreedyReset::Stuck { .. } => false,
                };
                Ok(values([("within_square", json!(ok))]))
            },
        ),
        fixture(
            "petersen-rank-2",
            json!({ "group": "petersen-aut", "map": [0, 1, 0, 1, 0, 1, 0, 1, 0, 1] }),
            vec![expect("synchronized", json!(true), "primitive groups synchronize every rank 2 map")],
            || {
                let f = Transformation::new(vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1])?;
                Ok(values([("synchronized", json!(synchronizes_map(&catalogue::petersen_automorphisms(), &f)?))]))
            },
        ),
    ];
    out.push(fixture(
        "cerny-family",
        json!({ "n": [2, 3, 4, 5, 6, 7, 8] }),
        (2..=8).map(|n| expect(format!("shortest_length[{n}]"), json!((n - 1) * (n - 1)), "(n−1)²")).collect(),
        || {
            let mut m = BTreeMap::new();
            for n in 2..=8 {
                m.insert(format!("shortest_length[{n}]"), shortest_length(&cerny_automaton(n)?));
            }
            Ok(m)
        },
    ));
    for m in 5..=8usize {
        let odd = m % 2 == 1;
        let yes_iff_odd = verdict(Verdict::from_bool(odd));
        let mut ledger = vec![
            expect("synchronizing", yes_iff_odd.clone(), "S_m on 2-subsets synchronizes iff m is odd"),
            expect("separating", yes_iff_odd, "S_m on 2-subsets separates iff m is odd"),
        ];
        if !odd {
            ledger.push(expect("section_parts", json!(m - 1), "1-factorization: χ(L(K_m)) = m−1 = ω"));
        }
        if m == 6 {
            ledger.push(expect(
                "partition_separating",
                verdict(Verdict::Yes),
                "L(K_6) has ω = χ but its complement does not",
            ));
        }
        out.push(fixture(format!("subsets-{m}-2"), json!({ "group": format!("subsets-{m}-2") }), ledger, move || {
            let g = catalogue::symmetric_on_k_subsets(m, 2);
            let limits = Limits::default();
            let s = is_synchronizing_group(&g, &limits)?;
            let mut v = values([
                ("synchronizing", verdict(s.verdict)),
                ("separating", verdict(is_separating(&g, &limits)?.verdict)),
            ]);
            if m % 2 == 0 {
                v.insert("section_parts".into(), json!(s.witness.map(|w| w.partition.len())));
            }
            if m == 6 {
                v.insert("partition_separating".into(), verdict(is_partition_separating(&g, &limits)?.verdict));
            }
            Ok(v)
        }));
    }
    for m in 5..=7usize {
        out.push(fixture(
            format!("line-of-complete-{m}"),
            json!({ "family": "line-of-complete", "params": [m] }),
            vec![
                expect("omega", json!(m - 1), "edges through one vertex"),
                expect("complement_chi", json!(m - 2), "Kneser graph K(m,2) has chromatic number m−2"),
            ],
            move || {
                let l = Graph::line_of_complete(m)?;
                Ok(values([
                    ("omega", json!(clique_number(&l))),
                    ("complement_chi", json!(chromatic_number(&l.complement(), Limits::default().colour_budget).exact())),
                ]))
            },
        ));
    }
    out
}

/// Runs every fixture whose name contains `only` (all if `None`).
pub fn run_all(only: Option<&str>) -> Vec<Entry> {
    let mut entries = Vec::new();
    for f in catalogue_fixtures() {
        if only.is_some_and(|s| !f.name.contains(s)) {
            continue;
        }
        let actual = (f.evaluate)();
        for e in &f.ledger {
            let value = match &actual {
                Ok(m) => m.get(&e.property).cloned().unwrap_or(Value::Null),
                Err(err) => json!({ "error": err.to_string() }),
            };
            entries.push(Entry {
                fixture: f.name.clone(),
                params: f.params.clone(),
                property: e.property.clone(),
                ok: value == e.expected,
                expected: e.expected.clone(),
                actual: value,
                reason: e.reason,
            });
        }
    }
    entries
}
