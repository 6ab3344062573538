//! Reset words with guaranteed length bounds.

use num_integer::Integer;
use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::transform::{greedy_reset_word, shortest_reset_word, Automaton, ResetWord, ShortestReset, Transformation};

/// Outcome of [`spreading_greedy_reset`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GreedyReset {
    Reset {
        word: ResetWord,
        f_occurrences: usize,
        /// `|S_k|` after each step, starting from the largest preimage of a point.
        set_sizes: Vec<usize>,
    },
    /// No `g` enlarges `|S g f⁻¹|`: every image `Sg` satisfies `|Sgf⁻¹| ≤ |S|`,
    /// which the preimage-count multiset of `f` turns into a non-spreading witness.
    Stuck { set: Vec<usize>, word_so_far: Vec<String> },
}

impl GreedyReset {
    pub fn word(&self) -> Option<&ResetWord> {
        match self {
            GreedyReset::Reset { word, .. } => Some(word),
            GreedyReset::Stuck { .. } => None,
        }
    }
}

/// The automaton over the generators `g0, g1, …` of `G` and the letter `f`.
pub fn group_automaton(g: &PermGroup, f: &Transformation) -> Result<Automaton> {
    let mut letters: Vec<(String, Transformation)> =
        g.generators().iter().enumerate().map(|(i, p)| (format!("g{i}"), Transformation::from(p))).collect();
    letters.push(("f".into(), f.clone()));
    Automaton::new(g.degree(), letters)
}

/// Builds a reset word over the generators of `G` and `f` by growing preimages.
///
/// Starts from `S = x f⁻¹` for the least point `x` with the most preimages,
/// reset by the word `f`. Each step picks `g` maximizing `|S g f⁻¹|` and
/// prepends `f · word(g⁻¹)`. Candidates are scanned as the emitted element
/// `g⁻¹` in Cayley order, so ties go to the shortest, then least, word.
pub fn spreading_greedy_reset(g: &PermGroup, f: &Transformation, element_cap: usize) -> Result<GreedyReset> {
    let n = g.degree();
    if f.degree() != n {
        return Err(Error::DegreeMismatch { left: n, right: f.degree() });
    }
    if f.is_permutation() {
        return Err(Error::BijectiveMap);
    }
    let cayley = g.elements(element_cap)?;
    let automaton = group_automaton(g, f)?;
    let f_letter = g.generators().len();

    let mut counts = vec![0usize; n];
    for &y in f.images() {
        counts[y] += 1;
    }
    let x = (0..n).max_by_key(|&x| (counts[x], std::cmp::Reverse(x))).expect("n > 0");
    let mut set = f.preimage(&BitSet::from_points(n, [x]));
    let mut word = vec![f_letter];
    let mut set_sizes = vec![set.count()];
    while set.count() < n {
        // z ∈ S g f⁻¹ iff (z f) h ∈ S where h = g⁻¹ is the emitted element.
        let mut best: Option<(usize, usize)> = None;
        for h in 0..cayley.order {
            let size = (0..n).filter(|&z| set.contains(cayley.image_of(h, f.image(z)))).count();
            if best.is_none_or(|(s, _)| size > s) {
                best = Some((size, h));
            }
        }
        let (size, h) = best.expect("group is nonempty");
        if size <= set.count() {
            return Ok(GreedyReset::Stuck {
                set: set.to_vec(),
                word_so_far: word.iter().map(|&l| automaton.letter_name(l).to_string()).collect(),
            });
        }
        let next = BitSet::from_points(n, (0..n).filter(|&z| set.contains(cayley.image_of(h, f.image(z)))));
        let mut prefix = vec![f_letter];
        prefix.extend(cayley.word(h));
        prefix.extend(word);
        word = prefix;
        set = next;
        set_sizes.push(size);
    }
    let f_occurrences = word.iter().filter(|&&l| l == f_letter).count();
    Ok(GreedyReset::Reset { word: automaton.reset_word(word), f_occurrences, set_sizes })
}

/// `⌈1 + (n − (n−1)/(r−1) + d)(n−2)⌉`, or `None` when `r < 2`.
pub fn rank_bound(n: u64, r: u64, d: u64) -> Option<u64> {
    if r < 2 || n < 2 {
        return None;
    }
    // (n(r−1) − (n−1) + d(r−1))(n−2) / (r−1), all exact.
    let num = ((n * (r - 1) + d * (r - 1)) as i128 - (n - 1) as i128) * (n as i128 - 2);
    Some(1 + Integer::div_ceil(&num, &((r - 1) as i128)).max(0) as u64)
}

/// `1 + (d+1)(n−2)`: the spreading construction's length bound.
pub fn spreading_bound(n: u64, d: u64) -> u64 {
    1 + (d + 1) * n.saturating_sub(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceLengths {
    pub synchronizing: bool,
    /// Length from the spreading greedy, `None` if it got stuck.
    pub spreading_greedy: Option<usize>,
    pub f_occurrences: Option<usize>,
    /// Length from pair-merging greedy.
    pub pair_greedy: Option<usize>,
    /// Exact shortest length when subset search was feasible.
    pub shortest: Option<usize>,
    pub within_cerny: Option<bool>,
    pub within_rank_bound: Option<bool>,
    pub within_spreading_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub rank: usize,
    pub d_a: usize,
    /// `d_a` is only a lower bound because enumeration was truncated.
    pub d_a_lower_bound: bool,
    pub rank_bound: Option<u64>,
    pub spreading_bound: u64,
    pub cerny_bound: u64,
    pub instance: Option<InstanceLengths>,
}

#[derive(Clone, Copy, Debug)]
pub struct BoundLimits {
    pub element_cap: usize,
    pub subset_cap: u64,
}

impl Default for BoundLimits {
    fn default() -> Self {
        BoundLimits { element_cap: crate::perm::DEFAULT_ELEMENT_CAP, subset_cap: crate::transform::DEFAULT_SUBSET_CAP }
    }
}

/// Length bounds for a transitive group over its generators, plus achieved
/// lengths when a singular map `f` is supplied.
pub fn bound_report(g: &PermGroup, f: Option<&Transformation>, limits: BoundLimits) -> Result<BoundReport> {
    g.require_transitive()?;
    let n = g.degree();
    let cayley = g.cayley_enumerate(limits.element_cap);
    let rank = g.rank();
    let d = cayley.diameter;
    let rb = rank_bound(n as u64, rank as u64, d as u64);
    let sb = spreading_bound(n as u64, d as u64);
    let cerny = ((n - 1) * (n - 1)) as u64;
    let instance = match f {
        None => None,
        Some(f) => {
            let a = group_automaton(g, f)?;
            let pair_greedy = greedy_reset_word(&a).map(|w| w.length);
            let synchronizing = pair_greedy.is_some();
            let greedy = if cayley.truncated { None } else { Some(spreading_greedy_reset(g, f, limits.element_cap)?) };
            let (spreading_greedy, f_occurrences) = match &greedy {
                Some(GreedyReset::Reset { word, f_occurrences, .. }) => (Some(word.length), Some(*f_occurrences)),
                _ => (None, None),
            };
            let shortest = match shortest_reset_word(&a, limits.subset_cap) {
                ShortestReset::Found { word } => Some(word.length),
                _ => None,
            };
            let best = shortest.or(pair_greedy);
            let exact = shortest.is_some();
            let within = |bound: u64| best.map(|l| l as u64 <= bound).filter(|&ok| ok || exact);
            let instance = InstanceLengths {
                synchronizing,
                spreading_greedy,
                f_occurrences,
                pair_greedy,
                shortest,
                within_cerny: within(cerny),
                within_rank_bound: if cayley.truncated { None } else { rb.and_then(within) },
                within_spreading_bound: spreading_greedy.map(|l| l as u64 <= sb),
            };
            if let Some(s) = shortest {
                // The rank bound holds for every synchronizing ⟨G, f⟩ over A ∪ {f}.
                if let (Some(b), false) = (rb, cayley.truncated) {
                    assert!(s as u64 <= b, "shortest reset word {s} exceeds the rank bound {b}");
                }
            }
            Some(instance)
        }
    };
    Ok(BoundReport {
        n,
        rank,
        d_a: d,
        d_a_lower_bound: cayley.truncated,
        rank_bound: rb,
        spreading_bound: sb,
        cerny_bound: cerny,
        instance,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CernyCheck {
    pub n: usize,
    pub bound: u64,
    pub synchronizing: bool,
    pub shortest: Option<usize>,
    /// Greedy upper bound, used when the exact search is infeasible.
    pub upper: Option<usize>,
    /// `None` when not synchronizing or when only a greedy length above the
    /// bound is known.
    pub within: Option<bool>,
}

/// Compares the shortest (or greedy) reset length with `(n−1)²`.
pub fn verify_within_cerny(a: &Automaton, subset_cap: u64) -> CernyCheck {
    let n = a.states();
    let bound = ((n - 1) * (n - 1)) as u64;
    let upper = greedy_reset_word(a).map(|w| w.length);
    let shortest = match shortest_reset_word(a, subset_cap) {
        ShortestReset::Found { word } => Some(word.length),
        _ => None,
    };
    let within = match (shortest, upper) {
        (Some(s), _) => Some(s as u64 <= bound),
        (None, Some(u)) if u as u64 <= bound => Some(true),
        _ => None,
    };
    CernyCheck { n, bound, synchronizing: upper.is_some(), shortest, upper, within }
}
