//! Transformations, automata and reset words.
//!
//! Letters act on the right and words are read left to right: applying the
//! word `ab` to a state means applying `a` first.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::util::{gcd, DisjointSets};

/// Default cap on the number of subsets the exact reset-word search may visit.
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 22;

/// A total map on `0..degree`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::PointOutOfRange { point: bad, degree: n });
        }
        Ok(Transformation { images })
    }

    pub fn identity(n: usize) -> Self {
        Transformation { images: (0..n).collect() }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        Transformation { images: vec![value; n] }
    }

    /// The idempotent moving `from` to `to` and fixing everything else.
    pub fn elementary_collapse(n: usize, from: usize, to: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images[from] = to;
        Transformation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_set(&self) -> BitSet {
        BitSet::from_points(self.degree(), self.images.iter().copied())
    }

    pub fn rank(&self) -> usize {
        self.image_set().count()
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    /// Kernel classes, ordered by least element.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let mut ds = DisjointSets::new(self.degree());
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (x, &y) in self.images.iter().enumerate() {
            let r = *first.entry(y).or_insert(x);
            ds.union(r, x);
        }
        ds.classes()
    }

    /// Whether all kernel classes have the same size.
    pub fn has_uniform_kernel(&self) -> bool {
        let k = self.kernel();
        k.iter().all(|c| c.len() == k[0].len())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(Transformation { images: self.images.iter().map(|&x| other.images[x]).collect() })
    }

    /// Full preimage of a set.
    pub fn preimage(&self, set: &BitSet) -> BitSet {
        BitSet::from_points(self.degree(), (0..self.degree()).filter(|&x| set.contains(self.images[x])))
    }
}

impl std::fmt::Debug for Transformation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Transformation{:?}", self.images)
    }
}

impl From<&crate::perm::Permutation> for Transformation {
    fn from(p: &crate::perm::Permutation) -> Self {
        Transformation { images: p.images().to_vec() }
    }
}

/// A deterministic automaton without initial or final states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automaton {
    states: usize,
    letters: Vec<(String, Transformation)>,
}

impl Automaton {
    pub fn new(states: usize, letters: Vec<(String, Transformation)>) -> Result<Self> {
        if states == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut names = HashSet::new();
        for (name, t) in &letters {
            if t.degree() != states {
                return Err(Error::DegreeMismatch { left: states, right: t.degree() });
            }
            if !names.insert(name.as_str()) {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        Ok(Automaton { states, letters })
    }

    /// Letters named `a0, a1, …`.
    pub fn from_transformations(gens: &[Transformation]) -> Result<Self> {
        let n = gens.first().map(|t| t.degree()).ok_or_else(|| {
            Error::InvalidParameters("need at least one transformation".into())
        })?;
        Self::new(n, gens.iter().enumerate().map(|(i, t)| (format!("a{i}"), t.clone())).collect())
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn letters(&self) -> &[(String, Transformation)] {
        &self.letters
    }

    pub fn letter_name(&self, i: usize) -> &str {
        &self.letters[i].0
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|(n, _)| n == name)
    }

    fn actions(&self) -> Vec<&[usize]> {
        self.letters.iter().map(|(_, t)| t.images()).collect()
    }

    /// Composite map of a word given as letter indices.
    pub fn apply_word(&self, word: &[usize]) -> Transformation {
        let mut images: Vec<usize> = (0..self.states).collect();
        for &l in word {
            let t = &self.letters[l].1;
            for x in images.iter_mut() {
                *x = t.image(*x);
            }
        }
        Transformation { images }
    }

    /// The single state reached from every state, if `word` is a reset word.
    pub fn reset_image(&self, word: &[usize]) -> Option<usize> {
        let t = self.apply_word(word);
        let first = t.image(0);
        t.images().iter().all(|&x| x == first).then_some(first)
    }

    pub(crate) fn reset_word(&self, word: Vec<usize>) -> ResetWord {
        let image = self.reset_image(&word).expect("constructed word must reset the automaton");
        ResetWord {
            letters: word.iter().map(|&l| self.letters[l].0.clone()).collect(),
            length: word.len(),
            image,
            indices: word,
        }
    }

    /// Underlying digraph: one arc per state and letter.
    pub fn underlying_digraph(&self) -> Vec<Vec<usize>> {
        (0..self.states).map(|x| self.letters.iter().map(|(_, t)| t.image(x)).collect()).collect()
    }
}

/// A word that maps every state to `image`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResetWord {
    pub letters: Vec<String>,
    pub length: usize,
    pub image: usize,
    #[serde(skip)]
    pub indices: Vec<usize>,
}

/// The automaton on unordered state pairs plus one absorbing "merged" node.
///
/// A single reverse breadth-first search from the merged node gives, for every
/// pair, the length of a shortest collapsing word and its first letter.
#[derive(Clone, Debug)]
pub struct PairAutomaton {
    n: usize,
    letters: Vec<Vec<usize>>,
    /// Shortest collapse length per pair index; `u32::MAX` if not collapsible.
    distance: Vec<u32>,
    /// First letter of the lexicographically least shortest collapsing word.
    next_letter: Vec<u32>,
}

#[inline]
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl PairAutomaton {
    pub fn new(n: usize, letters: &[&[usize]]) -> Self {
        let pairs = n * n.saturating_sub(1) / 2;
        let sink = pairs;
        let letters: Vec<Vec<usize>> = letters.iter().map(|l| l.to_vec()).collect();
        let target = |u: usize, v: usize, l: &[usize]| {
            let (x, y) = (l[u], l[v]);
            if x == y {
                sink
            } else {
                pair_index(n, x, y)
            }
        };
        let mut rev_start = vec![0u32; pairs + 2];
        let mut pair_list = Vec::with_capacity(pairs);
        for u in 0..n {
            for v in u + 1..n {
                pair_list.push((u, v));
            }
        }
        for &(u, v) in &pair_list {
            for l in &letters {
                rev_start[target(u, v, l) + 1] += 1;
            }
        }
        for i in 1..rev_start.len() {
            rev_start[i] += rev_start[i - 1];
        }
        let mut fill = rev_start.clone();
        let mut rev = vec![0u32; pairs * letters.len()];
        for (p, &(u, v)) in pair_list.iter().enumerate() {
            for l in &letters {
                let t = target(u, v, l);
                rev[fill[t] as usize] = p as u32;
                fill[t] += 1;
            }
        }
        let mut dist = vec![u32::MAX; pairs + 1];
        dist[sink] = 0;
        let mut queue = VecDeque::from([sink]);
        while let Some(t) = queue.pop_front() {
            for &p in &rev[rev_start[t] as usize..rev_start[t + 1] as usize] {
                let p = p as usize;
                if dist[p] == u32::MAX {
                    dist[p] = dist[t] + 1;
                    queue.push_back(p);
                }
            }
        }
        let next_letter = pair_list
            .iter()
            .enumerate()
            .map(|(p, &(u, v))| {
                if dist[p] == u32::MAX {
                    return u32::MAX;
                }
                letters
                    .iter()
                    .position(|l| dist[target(u, v, l)] == dist[p] - 1)
                    .expect("BFS parent exists") as u32
            })
            .collect();
        dist.truncate(pairs);
        PairAutomaton { n, letters, distance: dist, next_letter }
    }

    pub fn from_transformations(gens: &[Transformation]) -> Result<Self> {
        let n = gens.first().map(|t| t.degree()).unwrap_or(0);
        if let Some(bad) = gens.iter().find(|t| t.degree() != n) {
            return Err(Error::DegreeMismatch { left: n, right: bad.degree() });
        }
        let refs: Vec<&[usize]> = gens.iter().map(|t| t.images()).collect();
        Ok(Self::new(n, &refs))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn collapse_distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        match self.distance[pair_index(self.n, u, v)] {
            u32::MAX => None,
            d => Some(d as usize),
        }
    }

    pub fn is_collapsible(&self, u: usize, v: usize) -> bool {
        self.collapse_distance(u, v).is_some()
    }

    /// Every pair collapses, i.e. the generated monoid holds a constant map.
    pub fn is_synchronizing(&self) -> bool {
        self.distance.iter().all(|&d| d != u32::MAX)
    }

    /// Lexicographically least shortest word (letter indices) merging `u` and `v`.
    pub fn collapsing_word(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        self.collapse_distance(u, v)?;
        let (mut u, mut v) = (u, v);
        let mut word = Vec::new();
        while u != v {
            let l = self.next_letter[pair_index(self.n, u, v)] as usize;
            word.push(l);
            u = self.letters[l][u];
            v = self.letters[l][v];
        }
        Some(word)
    }

    pub fn collapsible_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.is_collapsible(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Longest shortest-collapse length over collapsible pairs.
    pub fn collapse_diameter(&self) -> usize {
        self.distance.iter().filter(|&&d| d != u32::MAX).max().copied().unwrap_or(0) as usize
    }
}

/// Pairs `{v, w}` that some word over `gens` maps to a single point.
pub fn collapsible_pairs(gens: &[Transformation]) -> Result<Vec<(usize, usize)>> {
    Ok(PairAutomaton::from_transformations(gens)?.collapsible_pairs())
}

#[derive(Clone, Debug)]
pub struct SyncCheck {
    pub synchronizing: bool,
    pub pairs: PairAutomaton,
}

pub fn is_synchronizing_automaton(a: &Automaton) -> SyncCheck {
    let pairs = PairAutomaton::new(a.states, &a.actions());
    SyncCheck { synchronizing: pairs.is_synchronizing(), pairs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ShortestReset {
    Found { word: ResetWord },
    None,
    Truncated { subsets: u64, cap: u64 },
}

impl ShortestReset {
    pub fn word(&self) -> Option<&ResetWord> {
        match self {
            ShortestReset::Found { word } => Some(word),
            _ => None,
        }
    }
}

/// Exact shortest reset word by breadth-first search over image subsets.
///
/// Among shortest words the lexicographically least (by letter order) is
/// returned. Reports `Truncated` when `2^n` exceeds `state_cap`.
pub fn shortest_reset_word(a: &Automaton, state_cap: u64) -> ShortestReset {
    let n = a.states;
    if n >= 64 || (1u64 << n) > state_cap {
        let subsets = if n >= 64 { u64::MAX } else { 1u64 << n };
        return ShortestReset::Truncated { subsets, cap: state_cap };
    }
    if n == 1 {
        return match a.letters.is_empty() {
            true => ShortestReset::None,
            // The empty word already resets a one-state automaton.
            false => ShortestReset::Found { word: a.reset_word(Vec::new()) },
        };
    }
    let actions = a.actions();
    let apply = |mask: u64, act: &[usize]| {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1u64 << act[i];
        }
        out
    };
    let full = (1u64 << n) - 1;
    let mut parent: HashMap<u64, (u64, u32)> = HashMap::new();
    parent.insert(full, (u64::MAX, u32::MAX));
    let mut queue = VecDeque::from([full]);
    while let Some(s) = queue.pop_front() {
        for (li, act) in actions.iter().enumerate() {
            let t = apply(s, act);
            if parent.contains_key(&t) {
                continue;
            }
            parent.insert(t, (s, li as u32));
            if t.count_ones() == 1 {
                let mut word = Vec::new();
                let mut cur = t;
                while cur != full {
                    let (p, l) = parent[&cur];
                    word.push(l as usize);
                    cur = p;
                }
                word.reverse();
                return ShortestReset::Found { word: a.reset_word(word) };
            }
            queue.push_back(t);
        }
    }
    ShortestReset::None
}

/// Reset word built by repeatedly merging the closest pair of the current image.
///
/// Ties go to the lexicographically least pair. Returns `None` when the
/// automaton is not synchronizing.
pub fn greedy_reset_word(a: &Automaton) -> Option<ResetWord> {
    let check = is_synchronizing_automaton(a);
    if !check.synchronizing {
        return None;
    }
    let pairs = &check.pairs;
    let n = a.states;
    let mut current = BitSet::full(n);
    let mut word = Vec::new();
    while current.count() > 1 {
        let pts = current.to_vec();
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, &u) in pts.iter().enumerate() {
            for &v in &pts[i + 1..] {
                let d = pairs.collapse_distance(u, v).expect("synchronizing");
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, u, v));
                }
            }
        }
        let (_, u, v) = best.expect("at least two points");
        let w = pairs.collapsing_word(u, v).expect("synchronizing");
        for &l in &w {
            current = current.map(a.letters[l].1.images());
        }
        word.extend(w);
    }
    Some(a.reset_word(word))
}

/// The Černý automaton on `n` states: `R` is the cycle `x ↦ x+1`, `B` fixes
/// every state except `0 ↦ 1`.
pub fn cerny_automaton(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("Černý automaton needs n >= 2, got {n}")));
    }
    let r = Transformation::new((0..n).map(|x| (x + 1) % n).collect())?;
    let b = Transformation::elementary_collapse(n, 0, 1);
    Automaton::new(n, vec![("R".into(), r), ("B".into(), b)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoadColoring {
    pub strongly_connected: bool,
    pub cycle_gcd: u64,
    pub admissible: bool,
}

/// Necessary conditions for a synchronizing colouring: strong connectivity and
/// aperiodicity. `out[v]` lists the heads of the arcs leaving `v`.
pub fn road_coloring_check(out: &[Vec<usize>]) -> Result<RoadColoring> {
    let n = out.len();
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let k = out[0].len();
    for (v, arcs) in out.iter().enumerate() {
        if arcs.len() != k || k == 0 {
            return Err(Error::NonConstantOutDegree { vertex: v, found: arcs.len(), expected: k.max(1) });
        }
        if let Some(&w) = arcs.iter().find(|&&w| w >= n) {
            return Err(Error::PointOutOfRange { point: w, degree: n });
        }
    }
    let mut depth = vec![u64::MAX; n];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in &out[u] {
            if depth[w] == u64::MAX {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut rev = vec![Vec::new(); n];
    for (u, arcs) in out.iter().enumerate() {
        for &w in arcs {
            rev[w].push(u);
        }
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &w in &rev[u] {
            if !std::mem::replace(&mut seen[w], true) {
                stack.push(w);
            }
        }
    }
    let strongly_connected = depth.iter().all(|&d| d != u64::MAX) && seen.iter().all(|&s| s);
    let mut g = 0;
    for (u, arcs) in out.iter().enumerate() {
        if depth[u] == u64::MAX {
            continue;
        }
        for &w in arcs {
            g = gcd(g, (depth[u] + 1).abs_diff(depth[w]));
        }
    }
    Ok(RoadColoring { strongly_connected, cycle_gcd: g, admissible: strongly_connected && g == 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let x = t(&[1, 1, 2, 3]);
        assert_eq!(x.compose(&Transformation::identity(4)).unwrap(), x);
        let c = Transformation::constant(4, 2);
        assert_eq!(c.compose(&x).unwrap().rank(), 1);
        // [1,1,2,3] is idempotent: 0->1->1, 1->1->1, 2->2->2, 3->3->3.
        assert_eq!(x.compose(&x).unwrap(), x);
        let y = t(&[1, 2, 3, 3]);
        let yy = y.compose(&y).unwrap();
        assert_eq!(yy.images(), &[2, 3, 3, 3]);
        assert_eq!(yy.rank(), 2);
        assert!(x.compose(&Transformation::identity(3)).is_err());
    }

    #[test]
    fn kernel_and_rank_agree() {
        let x = t(&[2, 0, 2, 0, 4]);
        assert_eq!(x.kernel(), vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert_eq!(x.rank(), 3);
        assert!(!x.has_uniform_kernel());
        assert!(t(&[1, 0, 2]).is_permutation());
    }

    #[test]
    fn cerny_four_reproduces_the_textbook_word() {
        let a = cerny_automaton(4).unwrap();
        assert_eq!(a.letters()[0].1.images(), &[1, 2, 3, 0]);
        assert_eq!(a.letters()[1].1.images(), &[1, 1, 2, 3]);
        assert!(is_synchronizing_automaton(&a).synchronizing);
        let w = shortest_reset_word(&a, DEFAULT_SUBSET_CAP);
        let w = w.word().unwrap();
        assert_eq!(w.length, 9);
        assert_eq!(w.letters.concat(), "BRRRBRRRB");
        assert_eq!(a.reset_image(&w.indices), Some(w.image));
    }

    #[test]
    fn cerny_small_cases() {
        let a2 = cerny_automaton(2).unwrap();
        assert_eq!(shortest_reset_word(&a2, DEFAULT_SUBSET_CAP).word().unwrap().length, 1);
        let a5 = cerny_automaton(5).unwrap();
        assert_eq!(shortest_reset_word(&a5, DEFAULT_SUBSET_CAP).word().unwrap().length, 16);
        let a6 = cerny_automaton(6).unwrap();
        assert_eq!(shortest_reset_word(&a6, DEFAULT_SUBSET_CAP).word().unwrap().length, 25);
        assert!(cerny_automaton(1).is_err());
    }

    #[test]
    fn permutation_letters_never_synchronize() {
        let a = Automaton::new(3, vec![("x".into(), t(&[1, 2, 0])), ("y".into(), t(&[1, 0, 2]))]).unwrap();
        assert!(!is_synchronizing_automaton(&a).synchronizing);
        assert_eq!(shortest_reset_word(&a, DEFAULT_SUBSET_CAP), ShortestReset::None);
        assert_eq!(greedy_reset_word(&a), None);
        assert!(collapsible_pairs(&[t(&[1, 2, 0])]).unwrap().is_empty());
    }

    #[test]
    fn constant_letter() {
        let a = Automaton::new(5, vec![("c".into(), Transformation::constant(5, 3))]).unwrap();
        assert!(is_synchronizing_automaton(&a).synchronizing);
        assert_eq!(shortest_reset_word(&a, DEFAULT_SUBSET_CAP).word().unwrap().length, 1);
        assert_eq!(greedy_reset_word(&a).unwrap().length, 1);
        assert_eq!(collapsible_pairs(&[Transformation::constant(5, 0)]).unwrap().len(), 10);
    }

    #[test]
    fn greedy_on_cerny_four_is_valid() {
        let a = cerny_automaton(4).unwrap();
        let w = greedy_reset_word(&a).unwrap();
        assert!(w.length >= 9);
        assert_eq!(a.reset_image(&w.indices), Some(w.image));
        let diam = is_synchronizing_automaton(&a).pairs.collapse_diameter();
        assert!(w.length <= 4 * diam);
    }

    #[test]
    fn truncation_is_reported() {
        let a = cerny_automaton(10).unwrap();
        assert!(matches!(shortest_reset_word(&a, 512), ShortestReset::Truncated { subsets: 1024, cap: 512 }));
    }

    #[test]
    fn automaton_validation() {
        assert!(matches!(
            Automaton::new(3, vec![("a".into(), t(&[0, 1, 2])), ("a".into(), t(&[0, 0, 2]))]),
            Err(Error::DuplicateLetter(_))
        ));
        assert!(matches!(Automaton::new(3, vec![("a".into(), t(&[0, 1]))]), Err(Error::DegreeMismatch { .. })));
        assert!(Transformation::new(vec![0, 3]).is_err());
    }

    #[test]
    fn road_coloring_examples() {
        let cerny = cerny_automaton(4).unwrap().underlying_digraph();
        let r = road_coloring_check(&cerny).unwrap();
        assert!(r.admissible && r.strongly_connected && r.cycle_gcd == 1);
        let tri = vec![vec![1, 1], vec![2, 2], vec![0, 0]];
        let r = road_coloring_check(&tri).unwrap();
        assert_eq!((r.strongly_connected, r.cycle_gcd, r.admissible), (true, 3, false));
        let loops = vec![vec![0, 0, 0]];
        assert!(road_coloring_check(&loops).unwrap().admissible);
        assert!(matches!(
            road_coloring_check(&[vec![1], vec![0, 1]]),
            Err(Error::NonConstantOutDegree { vertex: 1, .. })
        ));
        let split = vec![vec![0], vec![1]];
        assert!(!road_coloring_check(&split).unwrap().strongly_connected);
    }
}
