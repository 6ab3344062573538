use std::path::Path;

use serde_json::{json, Value};
use syncgroups_core::classify::{classify_group, ns_ranks, ClassificationReport, Verdict};
use syncgroups_core::graph::{automorphism_count, core, hull, Graph};
use syncgroups_core::reset::{bound_report, verify_within_cerny};
use syncgroups_core::transform::{
    cerny_automaton, greedy_reset_word, is_synchronizing_automaton, shortest_reset_word, Automaton, ShortestReset,
    Transformation,
};
use syncgroups_core::Error;

use crate::args::{Budgets, Command, GraphOp, Property, ResetMethod};
use crate::error::{CliError, CliResult};
use crate::formats::{self, AutomatonDocument, GroupDocument, FORMAT_VERSION};
use crate::{experiment, fixtures};

/// Exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// The property in question is false; the report carries a witness.
    Refuted,
    Malformed,
    BudgetExhausted,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Refuted => 1,
            Status::Malformed => 2,
            Status::BudgetExhausted => 3,
        }
    }

    fn of_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Yes => Status::Success,
            Verdict::No => Status::Refuted,
            Verdict::Unknown => Status::BudgetExhausted,
        }
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(Error::EnumerationCap { .. }) => Status::BudgetExhausted,
            _ => Status::Malformed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

impl Outcome {
    /// The report as pretty-printed JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn envelope(command: &str, input: Value, result: Value) -> Value {
    json!({ "command": command, "version": FORMAT_VERSION, "input": input, "result": result })
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("domain types serialize")
}

pub fn run(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::ClassifyGroup { group, property, strongly_separating, no_ns, timing, budgets } => {
            let (g, doc) = formats::resolve_group(group)?;
            let mut limits = budgets.limits();
            limits.strongly_separating = *strongly_separating || *property == Property::StronglySeparating;
            limits.compute_ns = !no_ns;
            limits.timing = *timing;
            let report = classify_group(&g, &limits);
            let status = Status::of_verdict(verdict_of(&report, *property));
            Ok(Outcome { status, report: envelope("classify-group", to_value(&doc), to_value(&report)) })
        }
        Command::ClassifyAutomaton { file, budgets } => {
            let a = formats::load_automaton(file)?;
            Ok(classify_automaton(&a, budgets))
        }
        Command::ResetWord { file, method, budgets } => {
            let a = formats::load_automaton(file)?;
            Ok(reset_word(&a, *method, budgets))
        }
        Command::Bounds { group, map, budgets } => {
            let (g, doc) = formats::resolve_group(group)?;
            let f = map.as_deref().map(parse_map).transpose()?;
            let report = bound_report(&g, f.as_ref(), budgets.bound_limits())?;
            let status = match &report.instance {
                Some(i) if !i.synchronizing => Status::Refuted,
                _ => Status::Success,
            };
            let input = json!({ "group": to_value(&doc), "map": f.as_ref().map(|t| t.images().to_vec()) });
            Ok(Outcome { status, report: envelope("bounds", input, to_value(&report)) })
        }
        Command::Cerny { n, budgets } => {
            let a = cerny_automaton(*n)?;
            Ok(cerny(&a, budgets))
        }
        Command::Graph { source, params, ops, complement, budgets } => {
            let (mut g, input) = if Path::new(source).is_file() {
                (formats::load_edge_list(Path::new(source))?, json!({ "file": source }))
            } else {
                (Graph::build(source, params)?, json!({ "family": source, "params": params }))
            };
            if *complement {
                g = g.complement();
            }
            let mut input = input;
            input["complement"] = json!(complement);
            let (result, exhausted) = graph_report(&g, ops, budgets);
            let status = if exhausted { Status::BudgetExhausted } else { Status::Success };
            Ok(Outcome { status, report: envelope("graph", input, result) })
        }
        Command::NsRanks { group, budgets } => {
            let (g, doc) = formats::resolve_group(group)?;
            let ns = ns_ranks(&g, &budgets.limits())?;
            let status = if ns.exhaustive { Status::Success } else { Status::BudgetExhausted };
            Ok(Outcome { status, report: envelope("ns-ranks", to_value(&doc), to_value(&ns)) })
        }
        Command::Fixtures { only } => {
            let results = fixtures::run_all(only.as_deref());
            let failed = results.iter().filter(|r| !r.ok).count();
            let status = if failed == 0 { Status::Success } else { Status::Refuted };
            let result = json!({ "checks": results.len(), "failed": failed, "entries": to_value(&results) });
            Ok(Outcome { status, report: envelope("fixtures", json!({ "only": only }), result) })
        }
        Command::RandomExperiment { n, k, samples, seed, budgets } => {
            let summary = experiment::run(*n, *k, *samples, *seed, budgets.subset_cap)?;
            let input = json!({ "n": n, "k": k, "samples": samples, "seed": seed });
            Ok(Outcome { status: Status::Success, report: envelope("random-experiment", input, to_value(&summary)) })
        }
    }
}

pub fn verdict_of(report: &ClassificationReport, property: Property) -> Verdict {
    let f = &report.flags;
    match property {
        Property::Transitive => f.transitive,
        Property::Primitive => f.primitive,
        Property::Synchronizing => f.synchronizing,
        Property::Separating => f.separating,
        Property::PartitionSeparating => f.partition_separating,
        Property::Spreading => f.spreading,
        Property::AlmostSynchronizingProbe => f.almost_synchronizing_probe,
        Property::StronglySeparating => f.strongly_separating.unwrap_or(Verdict::Unknown),
    }
}

/// Parses a map given as a JSON image list.
pub fn parse_map(text: &str) -> CliResult<Transformation> {
    let images: Vec<usize> = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("--map expects an image list such as [0,0,1]: {e}")))?;
    Ok(Transformation::new(images)?)
}

fn shortest_value(a: &Automaton, cap: u64) -> (Value, Option<usize>, bool) {
    let s = shortest_reset_word(a, cap);
    let len = s.word().map(|w| w.length);
    let truncated = matches!(s, ShortestReset::Truncated { .. });
    (to_value(&s), len, truncated)
}

fn classify_automaton(a: &Automaton, budgets: &Budgets) -> Outcome {
    let check = is_synchronizing_automaton(a);
    let stuck_pair = (0..a.states())
        .flat_map(|u| (u + 1..a.states()).map(move |v| (u, v)))
        .find(|&(u, v)| !check.pairs.is_collapsible(u, v));
    let greedy = greedy_reset_word(a);
    let (shortest, _, _) = shortest_value(a, budgets.subset_cap);
    let result = json!({
        "states": a.states(),
        "letters": a.letters().len(),
        "synchronizing": check.synchronizing,
        "non_collapsible_pair": stuck_pair.map(|(u, v)| [u, v]),
        "greedy": greedy,
        "shortest": shortest,
        "cerny": verify_within_cerny(a, budgets.subset_cap),
    });
    let status = if check.synchronizing { Status::Success } else { Status::Refuted };
    Outcome { status, report: envelope("classify-automaton", to_value(&AutomatonDocument::from_automaton(a)), result) }
}

fn reset_word(a: &Automaton, method: ResetMethod, budgets: &Budgets) -> Outcome {
    let mut result = serde_json::Map::new();
    let synchronizing = is_synchronizing_automaton(a).synchronizing;
    result.insert("synchronizing".into(), json!(synchronizing));
    let mut status = if synchronizing { Status::Success } else { Status::Refuted };
    if matches!(method, ResetMethod::Greedy | ResetMethod::Both) {
        result.insert("greedy".into(), to_value(&greedy_reset_word(a)));
    }
    if matches!(method, ResetMethod::Shortest | ResetMethod::Both) {
        let (v, _, truncated) = shortest_value(a, budgets.subset_cap);
        if truncated && synchronizing && method == ResetMethod::Shortest {
            status = Status::BudgetExhausted;
        }
        result.insert("shortest".into(), v);
    }
    let input = to_value(&AutomatonDocument::from_automaton(a));
    Outcome { status, report: envelope("reset-word", input, Value::Object(result)) }
}

fn cerny(a: &Automaton, budgets: &Budgets) -> Outcome {
    let n = a.states();
    let expected = (n - 1) * (n - 1);
    let (shortest, len, truncated) = shortest_value(a, budgets.subset_cap);
    let greedy = greedy_reset_word(a).map(|w| w.length);
    let result = json!({
        "n": n,
        "expected_shortest": expected,
        "shortest": shortest,
        "matches": len.map(|l| l == expected),
        "greedy_length": greedy,
    });
    let status = match len {
        Some(l) if l == expected => Status::Success,
        Some(_) => Status::Refuted,
        None if truncated => Status::BudgetExhausted,
        None => Status::Refuted,
    };
    Outcome { status, report: envelope("cerny", to_value(&AutomatonDocument::from_automaton(a)), result) }
}

fn graph_report(g: &Graph, ops: &[GraphOp], budgets: &Budgets) -> (Value, bool) {
    let mut out = serde_json::Map::new();
    let mut exhausted = false;
    out.insert("order".into(), json!(g.order()));
    out.insert("edges".into(), json!(g.edge_count()));
    let mut ops = ops.to_vec();
    ops.sort_by_key(|op| *op as u8);
    ops.dedup();
    for op in ops {
        match op {
            GraphOp::Omega => {
                let c = syncgroups_core::graph::maximum_clique(g);
                out.insert("clique_number".into(), json!(c.len()));
                out.insert("maximum_clique".into(), json!(c));
            }
            GraphOp::Chi => {
                let c = syncgroups_core::graph::chromatic_number(g, budgets.colour_budget);
                exhausted |= c.budget_exhausted;
                out.insert("chromatic_number".into(), json!(c.exact()));
                out.insert("chromatic".into(), to_value(&c));
            }
            GraphOp::Alpha => {
                let s = syncgroups_core::graph::maximum_clique(&g.complement());
                out.insert("independence_number".into(), json!(s.len()));
                out.insert("maximum_independent_set".into(), json!(s));
            }
            GraphOp::Core => {
                let c = core(g, budgets.endo_budget);
                exhausted |= c.budget_exhausted;
                let r = Transformation::new(c.retraction.clone()).ok();
                out.insert(
                    "core".into(),
                    json!({
                        "order": c.vertices.len(),
                        "vertices": c.vertices,
                        "edges": c.graph.edges(),
                        "retraction": c.retraction,
                        "uniform_kernel": r.map(|t| t.has_uniform_kernel()),
                        "order_divides": !c.vertices.is_empty() && g.order().is_multiple_of(c.vertices.len()),
                        "budget_exhausted": c.budget_exhausted,
                    }),
                );
            }
            GraphOp::Hull => {
                let h = hull(g, budgets.endo_budget);
                exhausted |= !h.undecided.is_empty();
                let added: Vec<(usize, usize)> =
                    h.graph.edges().into_iter().filter(|&(u, v)| !g.adjacent(u, v)).collect();
                out.insert(
                    "hull".into(),
                    json!({ "edges": h.graph.edges(), "added": added, "undecided": h.undecided }),
                );
            }
            GraphOp::Aut => {
                let count = automorphism_count(g, budgets.endo_budget);
                exhausted |= count.is_none();
                out.insert("automorphisms".into(), json!(count));
            }
        }
    }
    (Value::Object(out), exhausted)
}

/// Rebuilds the group named in a `classify-group` report's input section.
pub fn group_of_report(report: &Value) -> CliResult<syncgroups_core::PermGroup> {
    let doc: GroupDocument = serde_json::from_value(report["input"].clone())
        .map_err(|e| CliError::Usage(format!("report input is not a group document: {e}")))?;
    doc.to_group("report")
}
