//! Endomorphism search, cores, hulls and the graph of a transformation monoid.

use serde::Serialize;

use super::Graph;
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::transform::{PairAutomaton, Transformation};

/// Default number of search nodes per endomorphism search.
pub const DEFAULT_ENDO_BUDGET: u64 = 5_000_000;

/// Result of a budget-bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    None,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankConstraint {
    #[default]
    Any,
    /// Rank below the order of the graph, i.e. not an automorphism.
    Proper,
    Exactly(usize),
    AtMost(usize),
}

#[derive(Clone, Debug)]
pub struct EndoConstraints {
    /// Pairs `(v, image)` fixed in advance.
    pub fixed: Vec<(usize, usize)>,
    /// Two vertices that must share an image.
    pub collapse: Option<(usize, usize)>,
    pub rank: RankConstraint,
    pub non_uniform_kernel: bool,
    pub budget: u64,
}

impl Default for EndoConstraints {
    fn default() -> Self {
        EndoConstraints {
            fixed: Vec::new(),
            collapse: None,
            rank: RankConstraint::Any,
            non_uniform_kernel: false,
            budget: DEFAULT_ENDO_BUDGET,
        }
    }
}

impl EndoConstraints {
    pub fn proper() -> Self {
        EndoConstraints { rank: RankConstraint::Proper, ..Default::default() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    hits: Vec<usize>,
    distinct: usize,
    min_rank: usize,
    max_rank: usize,
    collapse: Option<(usize, usize)>,
    nodes: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    /// Depth-first over `order`; `accept` inspects each complete map and
    /// returns true to stop. Returns `None` when the budget ran out.
    fn run(&mut self, depth: usize, domains: &mut Vec<BitSet>, accept: &mut dyn FnMut(&[usize]) -> bool) -> Option<bool> {
        if depth == self.order.len() {
            if self.distinct < self.min_rank {
                return Some(false);
            }
            return Some(accept(&self.map));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let remaining = self.order.len() - depth;
        if self.distinct + remaining < self.min_rank {
            return Some(false);
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = domains[v].iter().collect();
        for a in candidates {
            let new_image = self.hits[a] == 0;
            if new_image && self.distinct + 1 > self.max_rank {
                continue;
            }
            // Forward check unassigned neighbours, and the collapse partner.
            let mut saved: Vec<(usize, BitSet)> = Vec::new();
            let mut ok = true;
            for u in self.g.neighbours(v).iter() {
                if self.map[u] != UNSET {
                    continue;
                }
                let mut d = domains[u].clone();
                d.intersect_with(self.g.neighbours(a));
                if d.is_empty() {
                    ok = false;
                    break;
                }
                saved.push((u, std::mem::replace(&mut domains[u], d)));
            }
            if ok {
                if let Some((x, y)) = self.collapse {
                    let partner = if x == v { Some(y) } else if y == v { Some(x) } else { None };
                    if let Some(p) = partner.filter(|&p| self.map[p] == UNSET) {
                        if domains[p].contains(a) {
                            let single = BitSet::from_points(self.g.order(), [a]);
                            saved.push((p, std::mem::replace(&mut domains[p], single)));
                        } else {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                self.map[v] = a;
                self.hits[a] += 1;
                if new_image {
                    self.distinct += 1;
                }
                let r = self.run(depth + 1, domains, accept);
                self.map[v] = UNSET;
                self.hits[a] -= 1;
                if new_image {
                    self.distinct -= 1;
                }
                if r != Some(false) {
                    for (u, d) in saved.into_iter().rev() {
                        domains[u] = d;
                    }
                    return r;
                }
            }
            for (u, d) in saved.into_iter().rev() {
                domains[u] = d;
            }
        }
        Some(false)
    }
}

fn validate(g: &Graph, c: &EndoConstraints) -> Result<(usize, usize)> {
    let n = g.order();
    let mut fixed = vec![UNSET; n];
    for &(v, a) in &c.fixed {
        for x in [v, a] {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
        }
        if fixed[v] != UNSET && fixed[v] != a {
            return Err(Error::ContradictoryConstraints(format!("vertex {v} fixed to two images")));
        }
        fixed[v] = a;
    }
    for (u, v) in g.edges() {
        if fixed[u] != UNSET && fixed[v] != UNSET && !g.adjacent(fixed[u], fixed[v]) {
            return Err(Error::ContradictoryConstraints(format!("edge {u}-{v} fixed onto a non-edge")));
        }
    }
    if let Some((x, y)) = c.collapse {
        if x >= n || y >= n {
            return Err(Error::PointOutOfRange { point: x.max(y), degree: n });
        }
        if g.adjacent(x, y) {
            return Err(Error::ContradictoryConstraints(format!("edge {x}-{y} cannot be collapsed")));
        }
        if fixed[x] != UNSET && fixed[y] != UNSET && fixed[x] != fixed[y] {
            return Err(Error::ContradictoryConstraints(format!("{x} and {y} fixed apart but must collapse")));
        }
    }
    let (min_rank, max_rank) = match c.rank {
        RankConstraint::Any => (0, n),
        RankConstraint::Proper => (0, n.saturating_sub(1)),
        RankConstraint::Exactly(r) => (r, r),
        RankConstraint::AtMost(r) => (0, r),
    };
    if min_rank > n || (n > 0 && max_rank == 0) {
        return Err(Error::ContradictoryConstraints(format!("rank constraint {:?} on {n} vertices", c.rank)));
    }
    Ok((min_rank, max_rank))
}

/// Visits every endomorphism satisfying `c` (except kernel uniformity, which
/// callers filter) in search order until `accept` returns true.
fn search(g: &Graph, c: &EndoConstraints, accept: &mut dyn FnMut(&[usize]) -> bool) -> Result<Option<bool>> {
    let (min_rank, max_rank) = validate(g, c)?;
    let n = g.order();
    if n == 0 {
        return Ok(Some(accept(&[])));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    if let Some((x, y)) = c.collapse {
        // Place the pair next to each other so the forced image propagates early.
        let later = order.iter().position(|&v| v == x).max(order.iter().position(|&v| v == y)).unwrap();
        let earlier_v = if order[later] == x { y } else { x };
        let e = order.iter().position(|&v| v == earlier_v).unwrap();
        let moved = order.remove(later);
        order.insert(e + 1, moved);
    }
    let mut domains = vec![BitSet::full(n); n];
    for &(v, a) in &c.fixed {
        domains[v] = BitSet::from_points(n, [a]);
    }
    let mut s = Search {
        g,
        order,
        map: vec![UNSET; n],
        hits: vec![0; n],
        distinct: 0,
        min_rank,
        max_rank,
        collapse: c.collapse,
        nodes: 0,
        budget: c.budget,
    };
    Ok(s.run(0, &mut domains, accept))
}

/// First endomorphism satisfying the constraints, in search order (vertices by
/// degree descending, images ascending).
pub fn find_endomorphism(g: &Graph, c: &EndoConstraints) -> Result<SearchOutcome<Vec<usize>>> {
    let mut found = None;
    let want_non_uniform = c.non_uniform_kernel;
    let r = search(g, c, &mut |map| {
        if want_non_uniform && Transformation::new(map.to_vec()).map_or(true, |t| t.has_uniform_kernel()) {
            return false;
        }
        found = Some(map.to_vec());
        true
    })?;
    Ok(match (r, found) {
        (_, Some(m)) => SearchOutcome::Found(m),
        (Some(_), None) => SearchOutcome::None,
        (None, None) => SearchOutcome::BudgetExhausted,
    })
}

/// Number of automorphisms, or `None` if the budget ran out.
pub fn automorphism_count(g: &Graph, budget: u64) -> Option<u64> {
    let c = EndoConstraints { rank: RankConstraint::Exactly(g.order()), budget, ..Default::default() };
    let mut count = 0;
    match search(g, &c, &mut |_| {
        count += 1;
        false
    }) {
        Ok(Some(_)) => Some(count),
        _ => None,
    }
}

/// A core of the graph with a retraction onto it.
#[derive(Clone, Debug, Serialize)]
pub struct Core {
    /// Vertices of the original graph spanning the core, ascending.
    pub vertices: Vec<usize>,
    /// Induced subgraph on `vertices`; vertex `i` is `vertices[i]`.
    #[serde(skip)]
    pub graph: Graph,
    /// Endomorphism of the original graph onto `vertices`, identity on them.
    pub retraction: Vec<usize>,
    pub budget_exhausted: bool,
}

/// Repeatedly restricts to the image of a proper endomorphism until none exists.
pub fn core(g: &Graph, budget: u64) -> Core {
    let n = g.order();
    let mut vertices: Vec<usize> = (0..n).collect();
    let mut current = g.clone();
    // composite: original vertex -> index into `vertices`
    let mut composite: Vec<usize> = (0..n).collect();
    let mut budget_exhausted = false;
    while current.order() > 1 {
        let outcome = find_endomorphism(&current, &EndoConstraints::proper().with_budget(budget))
            .expect("unconstrained search is consistent");
        let f = match outcome {
            SearchOutcome::Found(f) => f,
            SearchOutcome::None => break,
            SearchOutcome::BudgetExhausted => {
                budget_exhausted = true;
                break;
            }
        };
        let image: Vec<usize> = BitSet::from_points(current.order(), f.iter().copied()).to_vec();
        let mut slot = vec![UNSET; current.order()];
        for (i, &x) in image.iter().enumerate() {
            slot[x] = i;
        }
        for c in composite.iter_mut() {
            *c = slot[f[*c]];
        }
        current = current.induced(&image);
        vertices = image.iter().map(|&i| vertices[i]).collect();
    }
    // On the core the composite is an automorphism; undo it so the map fixes the core.
    let k = vertices.len();
    let mut undo = vec![0; k];
    for (i, &v) in vertices.iter().enumerate() {
        undo[composite[v]] = i;
    }
    let retraction = composite.iter().map(|&c| vertices[undo[c]]).collect();
    Core { vertices, graph: current, retraction, budget_exhausted }
}

/// `Gr(End(Γ))` with the non-edges whose collapse search ran out of budget.
#[derive(Clone, Debug)]
pub struct Hull {
    pub graph: Graph,
    pub undecided: Vec<(usize, usize)>,
}

/// Joins `v, w` when no endomorphism maps them to one vertex.
pub fn hull(g: &Graph, budget: u64) -> Hull {
    let n = g.order();
    let mut h = g.clone();
    let mut undecided = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            if g.adjacent(v, w) {
                continue;
            }
            let c = EndoConstraints { collapse: Some((v, w)), budget, ..Default::default() };
            match find_endomorphism(g, &c).expect("non-edge collapse is consistent") {
                SearchOutcome::Found(_) => {}
                SearchOutcome::None => h.add_edge(v, w).expect("valid vertices"),
                SearchOutcome::BudgetExhausted => undecided.push((v, w)),
            }
        }
    }
    Hull { graph: h, undecided }
}

/// The graph joining `v, w` when no element of the monoid generated by `gens`
/// maps them to one point.
pub fn gr_of_monoid(gens: &[Transformation]) -> Result<Graph> {
    let pa = PairAutomaton::from_transformations(gens)?;
    let n = pa.degree();
    let mut g = Graph::null(n);
    for v in 0..n {
        for w in v + 1..n {
            if !pa.is_collapsible(v, w) {
                g.add_edge(v, w)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::graph::{chromatic_number, clique_number, DEFAULT_COLOUR_BUDGET};

    /// Oracle: all n^n maps checked directly.
    fn brute_endomorphisms(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut out = Vec::new();
        let mut map = vec![0; n];
        loop {
            if g.is_endomorphism(&map) {
                out.push(map.clone());
            }
            let mut i = 0;
            while i < n {
                map[i] += 1;
                if map[i] < n {
                    break;
                }
                map[i] = 0;
                i += 1;
            }
            if i == n {
                return out;
            }
        }
    }

    fn rank(map: &[usize]) -> usize {
        BitSet::from_points(map.len(), map.iter().copied()).count()
    }

    #[test]
    fn complete_graph_has_no_proper_endomorphism() {
        for n in 2..6 {
            let r = find_endomorphism(&Graph::complete(n), &EndoConstraints::proper()).unwrap();
            assert_eq!(r, SearchOutcome::None);
        }
    }

    #[test]
    fn grid_column_projection() {
        let g = Graph::grid(3).unwrap();
        let c = EndoConstraints { rank: RankConstraint::Exactly(3), ..Default::default() };
        let f = find_endomorphism(&g, &c).unwrap();
        let f = f.found().unwrap();
        assert!(g.is_endomorphism(f));
        assert_eq!(rank(f), 3);
        assert!(Transformation::new(f.clone()).unwrap().has_uniform_kernel());
    }

    #[test]
    fn petersen_is_a_core() {
        let p = Graph::petersen();
        assert_eq!(find_endomorphism(&p, &EndoConstraints::proper()).unwrap(), SearchOutcome::None);
        let c = core(&p, DEFAULT_ENDO_BUDGET);
        assert_eq!(c.vertices, (0..10).collect::<Vec<_>>());
        assert!(!c.budget_exhausted);
    }

    #[test]
    fn search_matches_brute_force_counts() {
        for g in [Graph::path(4), Graph::cycle(5).unwrap(), Graph::cycle(4).unwrap(), Graph::complete_multipartite(&[1, 2]).unwrap()] {
            let mut brute = brute_endomorphisms(&g);
            brute.sort();
            let mut seen = Vec::new();
            search(&g, &EndoConstraints::default(), &mut |m| {
                seen.push(m.to_vec());
                false
            })
            .unwrap();
            seen.sort();
            assert_eq!(seen, brute);
            let proper = brute.iter().filter(|m| rank(m) < g.order()).count();
            let found = find_endomorphism(&g, &EndoConstraints::proper()).unwrap();
            assert_eq!(proper > 0, found.found().is_some());
        }
    }

    #[test]
    fn constraints_are_validated() {
        let g = Graph::cycle(5).unwrap();
        let bad = EndoConstraints { collapse: Some((0, 1)), ..Default::default() };
        assert!(matches!(find_endomorphism(&g, &bad), Err(Error::ContradictoryConstraints(_))));
        let bad = EndoConstraints { fixed: vec![(0, 1), (0, 2)], ..Default::default() };
        assert!(matches!(find_endomorphism(&g, &bad), Err(Error::ContradictoryConstraints(_))));
        let bad = EndoConstraints { fixed: vec![(0, 0), (1, 2)], ..Default::default() };
        assert!(matches!(find_endomorphism(&g, &bad), Err(Error::ContradictoryConstraints(_))));
        let bad = EndoConstraints { rank: RankConstraint::Exactly(9), ..Default::default() };
        assert!(find_endomorphism(&g, &bad).is_err());
        let fixed = EndoConstraints { fixed: vec![(0, 2)], ..Default::default() };
        assert_eq!(find_endomorphism(&g, &fixed).unwrap().found().unwrap()[0], 2);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let g = Graph::petersen();
        let r = find_endomorphism(&g, &EndoConstraints::proper().with_budget(5)).unwrap();
        assert_eq!(r, SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn core_of_even_cycle() {
        let c = core(&Graph::cycle(6).unwrap(), DEFAULT_ENDO_BUDGET);
        assert_eq!(c.graph, Graph::complete(2));
        let t = Transformation::new(c.retraction.clone()).unwrap();
        assert_eq!(t.kernel().iter().map(|k| k.len()).collect::<Vec<_>>(), vec![3, 3]);
        for &v in &c.vertices {
            assert_eq!(c.retraction[v], v);
        }
        assert!(Graph::cycle(6).unwrap().is_endomorphism(&c.retraction));
    }

    #[test]
    fn core_of_complete_and_null() {
        assert_eq!(core(&Graph::complete(4), DEFAULT_ENDO_BUDGET).vertices.len(), 4);
        assert_eq!(core(&Graph::null(3), DEFAULT_ENDO_BUDGET).vertices.len(), 1);
        assert_eq!(core(&Graph::null(0), DEFAULT_ENDO_BUDGET).vertices.len(), 0);
    }

    #[test]
    fn hull_of_path() {
        let p4 = Graph::path(4);
        let h = hull(&p4, DEFAULT_ENDO_BUDGET);
        assert!(h.undecided.is_empty());
        assert_eq!(h.graph, Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap());
        assert_eq!(automorphism_count(&p4, DEFAULT_ENDO_BUDGET), Some(2));
        assert_eq!(automorphism_count(&h.graph, DEFAULT_ENDO_BUDGET), Some(8));
        assert_eq!(hull(&Graph::complete(4), DEFAULT_ENDO_BUDGET).graph, Graph::complete(4));
    }

    #[test]
    fn monoid_graph_examples() {
        let perms: Vec<Transformation> =
            catalogue::cyclic(5).generators().iter().map(Transformation::from).collect();
        assert_eq!(gr_of_monoid(&perms).unwrap(), Graph::complete(5));
        assert_eq!(gr_of_monoid(&[Transformation::constant(4, 0)]).unwrap(), Graph::null(4));
    }

    /// Automorphisms of the rook's graph plus the Latin-square colouring
    /// `(a, b) ↦ (0, a + b mod 3)` folded onto a row triangle: exactly the
    /// non-edges collapse, and the monoid graph has ω = χ.
    #[test]
    fn grid_with_colouring_endomorphism() {
        let g = Graph::grid(3).unwrap();
        let fold = Transformation::new((0..9).map(|x| (x / 3 + x % 3) % 3).collect()).unwrap();
        assert!(g.is_endomorphism(fold.images()));
        let mut gens: Vec<Transformation> =
            catalogue::grid(3).generators().iter().map(Transformation::from).collect();
        gens.push(fold);
        let collapsible = crate::transform::collapsible_pairs(&gens).unwrap();
        assert_eq!(collapsible, g.complement().edges());
        let gr = gr_of_monoid(&gens).unwrap();
        assert_eq!(gr, g);
        let chi = chromatic_number(&gr, DEFAULT_COLOUR_BUDGET).exact();
        assert_eq!(Some(clique_number(&gr)), chi);
    }

    /// The Petersen graph is a core, so no singular map is an endomorphism and
    /// adding any singular map to its (synchronizing) automorphism group
    /// collapses every pair.
    #[test]
    fn petersen_automorphisms_plus_singular_map() {
        let p = Graph::petersen();
        assert_eq!(find_endomorphism(&p, &EndoConstraints::proper()).unwrap(), SearchOutcome::None);
        let colouring = chromatic_number(&p, DEFAULT_COLOUR_BUDGET).colouring;
        let mut gens: Vec<Transformation> =
            catalogue::petersen_automorphisms().generators().iter().map(Transformation::from).collect();
        gens.push(Transformation::new(colouring).unwrap());
        assert_eq!(crate::transform::collapsible_pairs(&gens).unwrap().len(), 45);
        assert_eq!(gr_of_monoid(&gens).unwrap(), Graph::null(10));
    }
}
