//! Ranks of unsynchronized maps and the almost-synchronizing probe, both by
//! endomorphism searches on invariant graphs.

use serde::{Deserialize, Serialize};

use super::invariant::{graph_of_mask, invariant_graphs};
use super::{Limits, Verdict};
use crate::error::Result;
use crate::graph::{clique_number, find_endomorphism, EndoConstraints, RankConstraint, SearchOutcome};
use crate::perm::PermGroup;
use crate::transform::Transformation;

/// A proper endomorphism of an invariant graph, given by its 2-subset orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoWitness {
    pub graph_orbits: Vec<usize>,
    pub map: Vec<usize>,
}

impl EndoWitness {
    /// Checks the map is a proper endomorphism with non-uniform kernel of the
    /// named invariant graph.
    pub fn validate_non_uniform(&self, g: &PermGroup) -> Result<(), String> {
        let r = g.orbitals().two_subset_orbits.len();
        if self.graph_orbits.is_empty() || self.graph_orbits.len() >= r || self.graph_orbits.iter().any(|&o| o >= r) {
            return Err("not a nontrivial invariant graph".into());
        }
        let mask = self.graph_orbits.iter().fold(0u64, |m, &o| m | 1 << o);
        let graph = graph_of_mask(g, mask).graph;
        if !graph.is_endomorphism(&self.map) {
            return Err("map is not an endomorphism".into());
        }
        let t = Transformation::new(self.map.clone()).map_err(|e| e.to_string())?;
        if t.is_permutation() {
            return Err("map is an automorphism".into());
        }
        if t.has_uniform_kernel() {
            return Err("kernel is uniform".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NsRanks {
    /// Ranks shown to be unsynchronized.
    pub ranks: Vec<usize>,
    /// Whether `ranks` is exactly NS(G) rather than a lower bound.
    pub exhaustive: bool,
    /// Ranks some search could not settle.
    pub undecided: Vec<usize>,
}

/// `r ∈ NS(G)` iff some nontrivial invariant graph has an endomorphism of rank
/// `r < n`. Searches per graph per rank, skipping graphs that are cores.
pub fn ns_ranks(g: &PermGroup, limits: &Limits) -> Result<NsRanks> {
    let n = g.degree();
    let graphs = invariant_graphs(g, limits.max_two_subset_orbits)?;
    let mut found = vec![false; n];
    let mut open = vec![false; n];
    for ig in &graphs {
        let proper = EndoConstraints::proper().with_budget(limits.ns_budget);
        match find_endomorphism(&ig.graph, &proper)? {
            SearchOutcome::None => continue,
            SearchOutcome::Found(m) => {
                found[Transformation::new(m).expect("endomorphisms are maps").rank()] = true;
            }
            SearchOutcome::BudgetExhausted => {}
        }
        for r in clique_number(&ig.graph)..n {
            if found[r] {
                continue;
            }
            let c = EndoConstraints { rank: RankConstraint::Exactly(r), budget: limits.ns_budget, ..Default::default() };
            match find_endomorphism(&ig.graph, &c)? {
                SearchOutcome::Found(_) => found[r] = true,
                SearchOutcome::None => {}
                SearchOutcome::BudgetExhausted => open[r] = true,
            }
        }
    }
    let ranks: Vec<usize> = (0..n).filter(|&r| found[r]).collect();
    let undecided: Vec<usize> = (0..n).filter(|&r| open[r] && !found[r]).collect();
    Ok(NsRanks { exhaustive: undecided.is_empty(), ranks, undecided })
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostSynchronizingResult {
    pub verdict: Verdict,
    pub witness: Option<EndoWitness>,
    pub binding_limit: Option<String>,
}

/// Looks for a proper endomorphism with non-uniform kernel on every invariant graph.
pub fn almost_synchronizing_probe(g: &PermGroup, limits: &Limits) -> Result<AlmostSynchronizingResult> {
    let graphs = invariant_graphs(g, limits.max_two_subset_orbits)?;
    let mut exhausted = false;
    for ig in &graphs {
        let c = EndoConstraints { non_uniform_kernel: true, ..EndoConstraints::proper().with_budget(limits.endo_budget) };
        match find_endomorphism(&ig.graph, &c)? {
            SearchOutcome::Found(map) => {
                let w = EndoWitness { graph_orbits: ig.orbits.clone(), map };
                w.validate_non_uniform(g).expect("search returns non-uniform proper endomorphisms");
                return Ok(AlmostSynchronizingResult { verdict: Verdict::No, witness: Some(w), binding_limit: None });
            }
            SearchOutcome::None => {}
            SearchOutcome::BudgetExhausted => exhausted = true,
        }
    }
    Ok(if exhausted {
        AlmostSynchronizingResult {
            verdict: Verdict::Unknown,
            witness: None,
            binding_limit: Some(format!("endomorphism budget {} nodes", limits.endo_budget)),
        }
    } else {
        AlmostSynchronizingResult { verdict: Verdict::Yes, witness: None, binding_limit: None }
    })
}
