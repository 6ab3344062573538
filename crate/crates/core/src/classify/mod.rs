//! The synchronization hierarchy of permutation groups.

mod invariant;
mod ns;
mod spreading;
mod sync;
mod witness;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use invariant::{complementary_pairs, graph_of_mask, invariant_graphs, InvariantGraph, DEFAULT_MAX_TWO_SUBSET_ORBITS};
pub use ns::{almost_synchronizing_probe, ns_ranks, AlmostSynchronizingResult, EndoWitness, NsRanks};
pub use spreading::{
    average_product_check, spreading_search, strongly_separating_search, AverageCheck, SpreadingResult,
    StrongSeparationResult, StrongSeparationWitness,
};
pub use sync::{
    block_witness, check_rystsov, is_partition_separating, is_section, is_separating, is_synchronizing_group,
    synchronizes_map, PartitionSeparatingResult, RystsovCheck, SeparatingResult, SynchronizingResult,
};
pub use witness::{
    multiset_is_trivial, multiset_size, PartitionPairWitness, SectionRegularWitness, SeparationWitness,
    SpreadingWitness,
};

use crate::graph::{DEFAULT_COLOUR_BUDGET, DEFAULT_ENDO_BUDGET};
use crate::perm::{PermGroup, DEFAULT_ELEMENT_CAP};
use crate::transform::Transformation;
use crate::util::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// Search limits. Every `Unknown` names the limit that bound it.
#[derive(Clone, Debug, Serialize)]
pub struct Limits {
    pub element_cap: usize,
    pub max_two_subset_orbits: usize,
    pub colour_budget: u64,
    pub endo_budget: u64,
    /// Per graph and rank, for NS(G).
    pub ns_budget: u64,
    pub spreading_max_set_size: usize,
    /// Total sets of all sizes tracked by the orbit enumeration.
    pub spreading_max_sets: usize,
    pub spreading_node_budget: u64,
    /// Largest multiplicity tried; `None` means `n`, which is exhaustive.
    pub multiset_cap: Option<u64>,
    pub strongly_separating: bool,
    pub compute_ns: bool,
    /// Record wall-clock timings in the report (makes reports non-reproducible).
    pub timing: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
            max_two_subset_orbits: DEFAULT_MAX_TWO_SUBSET_ORBITS,
            colour_budget: DEFAULT_COLOUR_BUDGET,
            endo_budget: DEFAULT_ENDO_BUDGET,
            ns_budget: 200_000,
            spreading_max_set_size: 12,
            spreading_max_sets: 2_000_000,
            spreading_node_budget: 20_000_000,
            multiset_cap: None,
            strongly_separating: false,
            compute_ns: true,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub transitive: Verdict,
    pub primitive: Verdict,
    pub two_homogeneous: Verdict,
    pub two_transitive: Verdict,
    pub generously_transitive: Verdict,
    pub synchronizing: Verdict,
    pub separating: Verdict,
    pub partition_separating: Verdict,
    pub spreading: Verdict,
    pub almost_synchronizing_probe: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_separating: Option<Verdict>,
}

/// Evidence for the orbit-structure flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrbitEvidence {
    /// Orbits when intransitive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<usize>>>,
    /// A minimal block system when imprimitive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    /// Two 2-subsets in different orbits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_two_subsets: Option<[(usize, usize); 2]>,
    /// Two ordered pairs of distinct points in different orbitals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_ordered_pairs: Option<[(usize, usize); 2]>,
    /// `(a, b)` whose orbital does not contain `(b, a)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unpaired: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub structure: OrbitEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synchronizing: Option<SectionRegularWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separating: Option<SeparationWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition_separating: Option<PartitionPairWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spreading: Option<SpreadingWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_synchronizing: Option<EndoWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_separating: Option<StrongSeparationWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub degree: usize,
    /// Number of orbitals (0 for intransitive groups).
    pub rank: usize,
    /// Group order when enumerable within the element cap.
    pub order: Option<usize>,
    pub flags: Flags,
    pub basic: &'static str,
    pub witnesses: Witnesses,
    /// `None` when not computed.
    pub ns_ranks: Option<NsRanks>,
    /// Limit that bound each `UNKNOWN` flag.
    pub unknown: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

impl Flags {
    fn all(v: Verdict) -> Self {
        Flags {
            transitive: v,
            primitive: v,
            two_homogeneous: v,
            two_transitive: v,
            generously_transitive: v,
            synchronizing: v,
            separating: v,
            partition_separating: v,
            spreading: v,
            almost_synchronizing_probe: v,
            strongly_separating: None,
        }
    }

    /// Implications `(stronger, weaker)` of the hierarchy.
    pub fn implications(&self) -> Vec<(&'static str, Verdict, &'static str, Verdict)> {
        let f = self;
        vec![
            ("two_transitive", f.two_transitive, "two_homogeneous", f.two_homogeneous),
            ("two_transitive", f.two_transitive, "generously_transitive", f.generously_transitive),
            ("two_homogeneous", f.two_homogeneous, "spreading", f.spreading),
            ("spreading", f.spreading, "separating", f.separating),
            ("separating", f.separating, "synchronizing", f.synchronizing),
            ("synchronizing", f.synchronizing, "partition_separating", f.partition_separating),
            ("synchronizing", f.synchronizing, "almost_synchronizing_probe", f.almost_synchronizing_probe),
            ("almost_synchronizing_probe", f.almost_synchronizing_probe, "primitive", f.primitive),
            ("partition_separating", f.partition_separating, "primitive", f.primitive),
            ("primitive", f.primitive, "transitive", f.transitive),
            ("generously_transitive", f.generously_transitive, "transitive", f.transitive),
            (
                "strongly_separating",
                f.strongly_separating.unwrap_or(Verdict::Unknown),
                "separating",
                f.separating,
            ),
        ]
    }
}

impl ClassificationReport {
    /// Implications contradicted by the flags (YES on the stronger side, NO on
    /// the weaker), plus NS/synchronizing disagreements. Always empty for
    /// reports produced by [`classify_group`].
    pub fn hierarchy_violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .flags
            .implications()
            .into_iter()
            .filter(|&(_, a, _, b)| a == Verdict::Yes && b == Verdict::No)
            .map(|(a, _, b, _)| format!("{a} holds but {b} fails"))
            .collect();
        if let Some(ns) = &self.ns_ranks {
            if ns.exhaustive && self.flags.transitive == Verdict::Yes && self.degree > 2 {
                let sync = self.flags.synchronizing;
                if (sync == Verdict::Yes) != ns.ranks.is_empty() && sync != Verdict::Unknown {
                    out.push(format!("NS(G) = {:?} disagrees with synchronizing = {sync}", ns.ranks));
                }
            }
        }
        out
    }

    /// Re-checks every embedded witness against the group.
    pub fn validate_witnesses(&self, g: &PermGroup) -> Result<(), String> {
        let w = &self.witnesses;
        if let Some(blocks) = &w.structure.blocks {
            if !g.preserves_partition(blocks) || blocks.len() < 2 || blocks.len() == g.degree() {
                return Err("block system is not a nontrivial invariant partition".into());
            }
        }
        if let Some(x) = &w.synchronizing {
            x.validate(g)?;
        }
        if let Some(x) = &w.separating {
            x.validate(g)?;
        }
        if let Some(x) = &w.partition_separating {
            x.validate(g)?;
        }
        if let Some(x) = &w.spreading {
            x.validate(g)?;
        }
        if let Some(x) = &w.almost_synchronizing {
            x.validate_non_uniform(g)?;
        }
        if let Some(x) = &w.strongly_separating {
            x.validate(g)?;
        }
        Ok(())
    }
}

/// Reads the clock only when timing is requested: `Instant` is unavailable on
/// some targets (wasm32 in the browser).
struct Clock {
    times: BTreeMap<String, u64>,
    start: Option<Instant>,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if let Some(start) = self.start {
            self.times.insert(name.to_string(), start.elapsed().as_millis() as u64);
            self.start = Some(Instant::now());
        }
    }
}

fn structure_evidence(g: &PermGroup) -> (Flags, OrbitEvidence) {
    let profile = g.transitivity_profile();
    let data = g.orbitals();
    let mut flags = Flags::all(Verdict::Unknown);
    let mut ev = OrbitEvidence::default();
    flags.transitive = Verdict::Yes;
    flags.two_homogeneous = Verdict::from_bool(profile.two_homogeneous);
    flags.two_transitive = Verdict::from_bool(profile.two_transitive);
    flags.generously_transitive = Verdict::from_bool(profile.generously_transitive);
    if !profile.two_homogeneous {
        ev.distinct_two_subsets = Some([data.two_subset_orbits[0][0], data.two_subset_orbits[1][0]]);
    }
    if !profile.two_transitive {
        let reps: Vec<(usize, usize)> = data.non_diagonal().map(|o| o.representative).take(2).collect();
        ev.distinct_ordered_pairs = Some([reps[0], reps[1]]);
    }
    if !profile.generously_transitive {
        ev.unpaired = data.orbitals.iter().find(|o| o.paired_with != o.index).map(|o| o.representative);
    }
    (flags, ev)
}

/// Transversal-style partition: the `j`-th point of every block.
fn block_positions(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..blocks[0].len()).map(|j| blocks.iter().map(|b| b[j]).collect()).collect()
}

fn block_collapse_witness(g: &PermGroup, blocks: &[Vec<usize>]) -> EndoWitness {
    let n = g.degree();
    let mut label = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            label[x] = i;
        }
    }
    let graph_orbits = g
        .orbitals()
        .two_subset_orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| label[o[0].0] != label[o[0].1])
        .map(|(i, _)| i)
        .collect();
    let (a, b) = (blocks[0][0], blocks[0][1]);
    let map = (0..n).map(|x| if x == a { b } else { x }).collect();
    EndoWitness { graph_orbits, map }
}

/// Classifies a group through the hierarchy, cheapest tests first.
pub fn classify_group(g: &PermGroup, limits: &Limits) -> ClassificationReport {
    let n = g.degree();
    let mut clock = Clock { times: BTreeMap::new(), start: limits.timing.then(Instant::now) };
    let order = {
        let c = g.cayley_enumerate(limits.element_cap);
        (!c.truncated).then_some(c.order)
    };
    let mut report = ClassificationReport {
        degree: n,
        rank: 0,
        order,
        flags: Flags::all(Verdict::No),
        basic: "not computed",
        witnesses: Witnesses::default(),
        ns_ranks: None,
        unknown: BTreeMap::new(),
        timing_ms: None,
    };
    clock.lap("enumeration");
    if !g.is_transitive() {
        report.witnesses.structure.orbits = Some(g.orbits().to_vec());
        return finish(report, g, clock);
    }
    report.rank = g.rank();
    let (mut flags, ev) = structure_evidence(g);
    report.witnesses.structure = ev;
    let blocks = g.block_systems().expect("transitive");
    clock.lap("structure");

    if let Some(system) = blocks.systems.first() {
        flags.primitive = Verdict::No;
        for f in [
            &mut flags.synchronizing,
            &mut flags.separating,
            &mut flags.partition_separating,
            &mut flags.spreading,
            &mut flags.almost_synchronizing_probe,
        ] {
            *f = Verdict::No;
        }
        let w = &mut report.witnesses;
        w.structure.blocks = Some(system.clone());
        w.synchronizing = Some(block_witness(system));
        let transversal: Vec<usize> = system.iter().map(|b| b[0]).collect();
        let sep = SeparationWitness { a: system[0].clone(), b: transversal, source: "block and transversal".into() };
        w.spreading = Some(SpreadingWitness {
            a: (0..n).map(|x| sep.a.contains(&x) as u64).collect(),
            b: sep.b.clone(),
            lambda: 1,
        });
        w.separating = Some(sep);
        w.partition_separating = Some(PartitionPairWitness {
            p: system.clone(),
            q: block_positions(system),
            source: "block system and block positions".into(),
        });
        w.almost_synchronizing = Some(block_collapse_witness(g, system));
    } else if n <= 2 || flags.two_homogeneous == Verdict::Yes {
        flags.primitive = Verdict::Yes;
        for f in [
            &mut flags.synchronizing,
            &mut flags.separating,
            &mut flags.partition_separating,
            &mut flags.spreading,
            &mut flags.almost_synchronizing_probe,
        ] {
            *f = Verdict::Yes;
        }
    } else {
        flags.primitive = Verdict::Yes;
        classify_primitive(g, limits, &mut flags, &mut report, &mut clock);
    }
    report.flags = flags;

    if limits.strongly_separating {
        match strongly_separating_search(g, limits) {
            Ok(r) => {
                report.flags.strongly_separating = Some(r.verdict);
                report.witnesses.strongly_separating = r.witness;
                if let Some(l) = r.binding_limit {
                    report.unknown.insert("strongly_separating".into(), l);
                }
            }
            Err(e) => {
                report.flags.strongly_separating = Some(Verdict::Unknown);
                report.unknown.insert("strongly_separating".into(), e.to_string());
            }
        }
        clock.lap("strongly_separating");
    }
    if limits.compute_ns {
        if report.flags.synchronizing == Verdict::Yes {
            report.ns_ranks = Some(NsRanks { ranks: vec![], exhaustive: true, undecided: vec![] });
        } else {
            match ns_ranks(g, limits) {
                Ok(mut ns) => {
                    if let Some(w) = &report.witnesses.synchronizing {
                        add_projection_rank(g, w, &mut ns);
                    }
                    report.ns_ranks = Some(ns);
                }
                Err(e) => {
                    report.unknown.insert("ns_ranks".into(), e.to_string());
                }
            }
        }
        clock.lap("ns_ranks");
    }
    finish(report, g, clock)
}

fn classify_primitive(
    g: &PermGroup,
    limits: &Limits,
    flags: &mut Flags,
    report: &mut ClassificationReport,
    clock: &mut Clock,
) {
    let n = g.degree();
    let mut unknown = |name: &str, limit: String, flag: &mut Verdict| {
        *flag = Verdict::Unknown;
        report.unknown.insert(name.into(), limit);
    };
    let too_many = g.orbitals().two_subset_orbits.len() > limits.max_two_subset_orbits;
    let orbit_limit = || format!("{} orbits on 2-subsets exceed the limit", g.orbitals().two_subset_orbits.len());

    if is_prime(n) {
        flags.separating = Verdict::Yes;
    } else if too_many {
        unknown("separating", orbit_limit(), &mut flags.separating);
    } else {
        let s = is_separating(g, limits).expect("transitive");
        flags.separating = s.verdict;
        report.witnesses.separating = s.witness;
    }
    clock.lap("separating");

    if flags.separating == Verdict::Yes {
        flags.synchronizing = Verdict::Yes;
    } else if too_many {
        unknown("synchronizing", orbit_limit(), &mut flags.synchronizing);
    } else {
        let s = is_synchronizing_group(g, limits).expect("transitive");
        flags.synchronizing = s.verdict;
        report.witnesses.synchronizing = s.witness;
        if let Some(l) = s.binding_limit {
            unknown("synchronizing", l, &mut flags.synchronizing);
        }
    }
    clock.lap("synchronizing");

    if flags.synchronizing == Verdict::Yes {
        flags.partition_separating = Verdict::Yes;
    } else if too_many {
        unknown("partition_separating", orbit_limit(), &mut flags.partition_separating);
    } else {
        let s = is_partition_separating(g, limits).expect("transitive");
        flags.partition_separating = s.verdict;
        report.witnesses.partition_separating = s.witness;
        if let Some(l) = s.binding_limit {
            unknown("partition_separating", l, &mut flags.partition_separating);
        }
    }
    clock.lap("partition_separating");

    if let Some(sep) = &report.witnesses.separating {
        // A separating pair is a spreading pair with λ = 1.
        flags.spreading = Verdict::No;
        report.witnesses.spreading = Some(SpreadingWitness {
            a: (0..n).map(|x| sep.a.contains(&x) as u64).collect(),
            b: sep.b.clone(),
            lambda: 1,
        });
    } else {
        let s = spreading_search(g, limits).expect("transitive");
        flags.spreading = s.verdict;
        report.witnesses.spreading = s.witness;
        if let Some(l) = s.binding_limit {
            unknown("spreading", l, &mut flags.spreading);
        }
    }
    clock.lap("spreading");

    if flags.synchronizing == Verdict::Yes {
        flags.almost_synchronizing_probe = Verdict::Yes;
    } else if too_many {
        unknown("almost_synchronizing_probe", orbit_limit(), &mut flags.almost_synchronizing_probe);
    } else {
        let s = almost_synchronizing_probe(g, limits).expect("transitive");
        flags.almost_synchronizing_probe = s.verdict;
        report.witnesses.almost_synchronizing = s.witness;
        if let Some(l) = s.binding_limit {
            unknown("almost_synchronizing_probe", l, &mut flags.almost_synchronizing_probe);
        }
    }
    clock.lap("almost_synchronizing_probe");
}

/// Projecting each part onto its section point is a map `G` cannot synchronize.
pub fn section_projection(w: &SectionRegularWitness, n: usize) -> Transformation {
    let mut images = vec![0; n];
    for part in &w.partition {
        let rep = *part.iter().find(|x| w.section.contains(x)).expect("section meets every part");
        for &x in part {
            images[x] = rep;
        }
    }
    Transformation::new(images).expect("images are points")
}

fn add_projection_rank(g: &PermGroup, w: &SectionRegularWitness, ns: &mut NsRanks) {
    let f = section_projection(w, g.degree());
    if synchronizes_map(g, &f) == Ok(false) {
        let r = f.rank();
        if let Err(i) = ns.ranks.binary_search(&r) {
            ns.ranks.insert(i, r);
        }
        ns.undecided.retain(|&u| u != r);
        ns.exhaustive = ns.undecided.is_empty();
    }
}

fn finish(mut report: ClassificationReport, g: &PermGroup, clock: Clock) -> ClassificationReport {
    if clock.start.is_some() {
        report.timing_ms = Some(clock.times);
    }
    let violations = report.hierarchy_violations();
    assert!(violations.is_empty(), "hierarchy violated: {violations:?}");
    if let Err(e) = report.validate_witnesses(g) {
        panic!("emitted witness failed validation: {e}");
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn petersen_group_report() {
        let r = classify_group(&catalogue::petersen_automorphisms(), &Limits::default());
        assert_eq!(r.flags.primitive, Verdict::Yes);
        assert_eq!(r.flags.synchronizing, Verdict::Yes);
        assert_eq!(r.flags.separating, Verdict::Yes);
        assert_eq!(r.flags.spreading, Verdict::No);
        assert_eq!(r.witnesses.spreading.as_ref().unwrap().lambda, 2);
        assert_eq!(r.order, Some(120));
        assert_eq!(r.ns_ranks.unwrap().ranks, Vec::<usize>::new());
    }

    #[test]
    fn s6_on_pairs_report() {
        let r = classify_group(&catalogue::symmetric_on_k_subsets(6, 2), &Limits::default());
        assert_eq!(r.flags.primitive, Verdict::Yes);
        assert_eq!(r.flags.separating, Verdict::No);
        assert_eq!(r.flags.synchronizing, Verdict::No);
        assert_eq!(r.flags.partition_separating, Verdict::Yes);
        assert_eq!(r.flags.spreading, Verdict::No);
    }

    #[test]
    fn two_transitive_report() {
        let r = classify_group(&catalogue::symmetric(5), &Limits::default());
        assert_eq!(r.flags, Flags { strongly_separating: None, ..Flags::all(Verdict::Yes) });
    }

    #[test]
    fn intransitive_and_imprimitive_reports() {
        let g = PermGroup::from_strings(5, &["(0 1 2)"]).unwrap();
        let r = classify_group(&g, &Limits::default());
        assert_eq!(r.flags, Flags::all(Verdict::No));
        assert_eq!(r.witnesses.structure.orbits.as_ref().unwrap().len(), 3);

        let g = catalogue::cyclic(8);
        let r = classify_group(&g, &Limits::default());
        assert_eq!(r.flags.transitive, Verdict::Yes);
        assert_eq!(r.flags.primitive, Verdict::No);
        assert!(r.witnesses.almost_synchronizing.is_some());
        assert!(r.ns_ranks.unwrap().ranks.contains(&4));
    }

    #[test]
    fn grid_report() {
        let r = classify_group(&catalogue::grid(3), &Limits::default());
        assert_eq!(r.flags.primitive, Verdict::Yes);
        assert_eq!(r.flags.synchronizing, Verdict::No);
        assert_eq!(r.flags.almost_synchronizing_probe, Verdict::Yes);
        assert_eq!(r.ns_ranks.unwrap().ranks, vec![3]);
    }

    #[test]
    fn strongly_separating_flag() {
        let limits = Limits { strongly_separating: true, ..Limits::default() };
        let r = classify_group(&catalogue::petersen_automorphisms(), &limits);
        // Pentagon and coclique meet in exactly two points under every element.
        assert_eq!(r.flags.strongly_separating, Some(Verdict::No));
        let r = classify_group(&catalogue::cyclic(7), &limits);
        assert_eq!(r.flags.strongly_separating, Some(Verdict::Yes));
    }

    #[test]
    fn timing_is_opt_in() {
        let r = classify_group(&catalogue::cyclic(5), &Limits::default());
        assert!(r.timing_ms.is_none());
        let r = classify_group(&catalogue::cyclic(5), &Limits { timing: true, ..Limits::default() });
        assert!(r.timing_ms.is_some());
    }
}
