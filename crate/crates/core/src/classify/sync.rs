//! Separation, synchronization and partition separation through invariant graphs.

use serde::Serialize;

use super::invariant::{complementary_pairs, InvariantGraph};
use super::witness::{PartitionPairWitness, SectionRegularWitness, SeparationWitness};
use super::{Limits, Verdict};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{colour_with, maximum_clique, ColourOutcome, Graph};
use crate::perm::PermGroup;
use crate::transform::{PairAutomaton, Transformation};
use crate::util::is_prime;

#[derive(Clone, Debug, Serialize)]
pub struct SeparatingResult {
    pub verdict: Verdict,
    pub witness: Option<SeparationWitness>,
    /// Complementary pairs with `ω(Γ)·ω(Γ̄) = n`, as `Γ` masks.
    pub flagged: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SynchronizingResult {
    pub verdict: Verdict,
    pub witness: Option<SectionRegularWitness>,
    pub binding_limit: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionSeparatingResult {
    pub verdict: Verdict,
    pub witness: Option<PartitionPairWitness>,
    pub binding_limit: Option<String>,
}

fn label(g: &InvariantGraph) -> String {
    format!("invariant graph on 2-subset orbits {:?}", g.orbits)
}

fn classes(colouring: &[usize]) -> Vec<Vec<usize>> {
    let k = colouring.iter().max().map_or(0, |&c| c + 1);
    let mut parts = vec![Vec::new(); k];
    for (v, &c) in colouring.iter().enumerate() {
        parts[c].push(v);
    }
    parts.retain(|p| !p.is_empty());
    parts.sort();
    parts
}

/// Block system as a section-regular partition, with a transversal as section.
pub fn block_witness(blocks: &[Vec<usize>]) -> SectionRegularWitness {
    SectionRegularWitness {
        partition: blocks.to_vec(),
        section: blocks.iter().map(|b| b[0]).collect(),
        source: "block system".into(),
    }
}

struct Pair {
    gamma: InvariantGraph,
    co: InvariantGraph,
    clique: Vec<usize>,
    co_clique: Vec<usize>,
}

fn analysed_pairs(g: &PermGroup, limits: &Limits) -> Result<Vec<Pair>> {
    Ok(complementary_pairs(g, limits.max_two_subset_orbits)?
        .into_iter()
        .map(|(gamma, co)| {
            let clique = maximum_clique(&gamma.graph);
            let co_clique = maximum_clique(&co.graph);
            Pair { gamma, co, clique, co_clique }
        })
        .collect())
}

/// Runs `k`-colourability tests with geometrically growing budgets, so that an
/// easy colouring late in the list is not starved by a hard refutation early on.
fn deepening(tasks: &[(&Graph, usize)], budget: u64, want_all: bool) -> Deepened {
    let mut open: Vec<usize> = (0..tasks.len()).collect();
    let mut colourings: Vec<Option<Vec<usize>>> = vec![None; tasks.len()];
    let mut b = budget.min(10_000);
    loop {
        let mut still = Vec::new();
        for &i in &open {
            let (graph, k) = tasks[i];
            match colour_with(graph, k, b) {
                ColourOutcome::Colouring(c) => {
                    colourings[i] = Some(c);
                    if !want_all {
                        return Deepened { colourings, exhausted: vec![] };
                    }
                }
                ColourOutcome::Impossible => {}
                ColourOutcome::BudgetExhausted => still.push(i),
            }
        }
        open = still;
        if open.is_empty() || b >= budget {
            return Deepened { colourings, exhausted: open };
        }
        b = (b.saturating_mul(10)).min(budget);
    }
}

struct Deepened {
    colourings: Vec<Option<Vec<usize>>>,
    exhausted: Vec<usize>,
}

/// Separating iff no invariant graph has `ω(Γ)·ω(Γ̄) = n`.
pub fn is_separating(g: &PermGroup, limits: &Limits) -> Result<SeparatingResult> {
    g.require_transitive()?;
    let n = g.degree();
    if is_prime(n) {
        return Ok(SeparatingResult { verdict: Verdict::Yes, witness: None, flagged: vec![] });
    }
    let pairs = analysed_pairs(g, limits)?;
    let flagged: Vec<&Pair> = pairs.iter().filter(|p| p.clique.len() * p.co_clique.len() == n).collect();
    let witness = flagged.first().map(|p| SeparationWitness {
        a: p.clique.clone(),
        b: p.co_clique.clone(),
        source: format!("maximum cliques of {} and its complement", label(&p.gamma)),
    });
    if let Some(w) = &witness {
        w.validate(g).expect("clique pair with product n separates nothing");
    }
    Ok(SeparatingResult {
        verdict: if witness.is_some() { Verdict::No } else { Verdict::Yes },
        witness,
        flagged: flagged.iter().map(|p| p.gamma.mask).collect(),
    })
}

/// Synchronizing iff no invariant graph has clique number equal to chromatic
/// number; only pairs flagged by the clique test can qualify.
pub fn is_synchronizing_group(g: &PermGroup, limits: &Limits) -> Result<SynchronizingResult> {
    g.require_transitive()?;
    let blocks = g.block_systems()?;
    if let Some(system) = blocks.systems.first() {
        let w = block_witness(system);
        w.validate(g).expect("block transversals are sections");
        return Ok(SynchronizingResult { verdict: Verdict::No, witness: Some(w), binding_limit: None });
    }
    let n = g.degree();
    if is_prime(n) {
        return Ok(SynchronizingResult { verdict: Verdict::Yes, witness: None, binding_limit: None });
    }
    let pairs = analysed_pairs(g, limits)?;
    let flagged: Vec<&Pair> = pairs.iter().filter(|p| p.clique.len() * p.co_clique.len() == n).collect();
    let mut tasks: Vec<(&Graph, usize)> = Vec::new();
    let mut meta: Vec<(&InvariantGraph, &Vec<usize>)> = Vec::new();
    for p in &flagged {
        tasks.push((&p.gamma.graph, p.clique.len()));
        meta.push((&p.gamma, &p.clique));
        tasks.push((&p.co.graph, p.co_clique.len()));
        meta.push((&p.co, &p.co_clique));
    }
    let result = deepening(&tasks, limits.colour_budget, false);
    if let Some(i) = result.colourings.iter().position(Option::is_some) {
        let (graph, clique) = meta[i];
        let w = SectionRegularWitness {
            partition: classes(result.colourings[i].as_ref().unwrap()),
            section: clique.clone(),
            source: format!("ω-colouring of {}", label(graph)),
        };
        w.validate(g).expect("colour classes of an ω-colourable invariant graph are section-regular");
        return Ok(SynchronizingResult { verdict: Verdict::No, witness: Some(w), binding_limit: None });
    }
    if result.exhausted.is_empty() {
        Ok(SynchronizingResult { verdict: Verdict::Yes, witness: None, binding_limit: None })
    } else {
        Ok(SynchronizingResult {
            verdict: Verdict::Unknown,
            witness: None,
            binding_limit: Some(format!("colour budget {} nodes", limits.colour_budget)),
        })
    }
}

/// Partition-separating iff no invariant graph has `χ(Γ)·χ(Γ̄) = n`.
pub fn is_partition_separating(g: &PermGroup, limits: &Limits) -> Result<PartitionSeparatingResult> {
    g.require_transitive()?;
    let n = g.degree();
    if is_prime(n) {
        return Ok(PartitionSeparatingResult { verdict: Verdict::Yes, witness: None, binding_limit: None });
    }
    let pairs = analysed_pairs(g, limits)?;
    // χ(Γ)χ(Γ̄) = n forces χ(Γ) = n/ω(Γ̄) and χ(Γ̄) = n/ω(Γ).
    let candidates: Vec<&Pair> = pairs
        .iter()
        .filter(|p| n.is_multiple_of(p.clique.len()) && n.is_multiple_of(p.co_clique.len()))
        .filter(|p| n / p.co_clique.len() >= p.clique.len() && n / p.clique.len() >= p.co_clique.len())
        .collect();
    let mut tasks = Vec::new();
    for p in &candidates {
        tasks.push((&p.gamma.graph, n / p.co_clique.len()));
        tasks.push((&p.co.graph, n / p.clique.len()));
    }
    let result = deepening(&tasks, limits.colour_budget, true);
    let mut undecided = false;
    for (j, p) in candidates.iter().enumerate() {
        let (a, b) = (&result.colourings[2 * j], &result.colourings[2 * j + 1]);
        if let (Some(a), Some(b)) = (a, b) {
            let w = PartitionPairWitness {
                p: classes(a),
                q: classes(b),
                source: format!("colourings of {} and its complement", label(&p.gamma)),
            };
            w.validate(g).expect("colourings with χχ̄ = n give a partition pair");
            return Ok(PartitionSeparatingResult { verdict: Verdict::No, witness: Some(w), binding_limit: None });
        }
        let open = |i: usize| result.exhausted.contains(&i);
        let settled_no = (a.is_none() && !open(2 * j)) || (b.is_none() && !open(2 * j + 1));
        undecided |= !settled_no;
    }
    if undecided {
        Ok(PartitionSeparatingResult {
            verdict: Verdict::Unknown,
            witness: None,
            binding_limit: Some(format!("colour budget {} nodes", limits.colour_budget)),
        })
    } else {
        Ok(PartitionSeparatingResult { verdict: Verdict::Yes, witness: None, binding_limit: None })
    }
}

/// Whether `⟨G, f⟩` contains a constant map.
pub fn synchronizes_map(g: &PermGroup, f: &Transformation) -> Result<bool> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch { left: g.degree(), right: f.degree() });
    }
    if f.is_permutation() {
        return Err(Error::BijectiveMap);
    }
    let mut gens: Vec<Transformation> = g.generators().iter().map(Transformation::from).collect();
    gens.push(f.clone());
    Ok(PairAutomaton::from_transformations(&gens)?.is_synchronizing())
}

#[derive(Clone, Debug, Serialize)]
pub struct RystsovCheck {
    pub primitive: bool,
    pub all_idempotents_synchronized: bool,
    /// Orbital representatives `(a, b)` whose idempotent `a ↦ b` is not synchronized.
    pub failing: Vec<(usize, usize)>,
}

impl RystsovCheck {
    pub fn agrees(&self) -> bool {
        self.primitive == self.all_idempotents_synchronized
    }
}

/// Transitive `G` is primitive iff it synchronizes every rank `n−1` idempotent;
/// one idempotent per orbital suffices.
pub fn check_rystsov(g: &PermGroup) -> Result<RystsovCheck> {
    g.require_transitive()?;
    let n = g.degree();
    let mut failing = Vec::new();
    for o in g.orbitals().non_diagonal() {
        let (a, b) = o.representative;
        if !synchronizes_map(g, &Transformation::elementary_collapse(n, a, b))? {
            failing.push((a, b));
        }
    }
    Ok(RystsovCheck { primitive: g.is_primitive(), all_idempotents_synchronized: failing.is_empty(), failing })
}

/// `true` when `set` meets each part of `partition` exactly once.
pub fn is_section(partition: &[Vec<usize>], set: &BitSet) -> bool {
    partition.iter().all(|p| p.iter().filter(|&&x| set.contains(x)).count() == 1)
}
