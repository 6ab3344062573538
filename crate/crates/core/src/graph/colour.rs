use serde::Serialize;

use super::clique::maximum_clique;
use super::Graph;

/// Default number of search nodes for colouring decisions.
pub const DEFAULT_COLOUR_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColourOutcome {
    Colouring(Vec<usize>),
    Impossible,
    BudgetExhausted,
}

/// Chromatic number, or a bracket when the search budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chromatic {
    pub lower: usize,
    pub upper: usize,
    /// A proper colouring with `upper` colours.
    pub colouring: Vec<usize>,
    pub budget_exhausted: bool,
}

impl Chromatic {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<usize>,
    forbid: Vec<u32>,
    sat: Vec<usize>,
    degree: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const NONE: usize = usize::MAX;

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        let k = self.k;
        for u in self.g.neighbours(v).iter() {
            if self.colour[u] == NONE {
                if self.forbid[u * k + c] == 0 {
                    self.sat[u] += 1;
                }
                self.forbid[u * k + c] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = NONE;
        let k = self.k;
        for u in self.g.neighbours(v).iter() {
            if self.colour[u] == NONE {
                self.forbid[u * k + c] -= 1;
                if self.forbid[u * k + c] == 0 {
                    self.sat[u] -= 1;
                }
            }
        }
    }

    /// Highest saturation, then highest degree, then lowest index.
    fn pick(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.colour.len() {
            if self.colour[v] != NONE {
                continue;
            }
            if best == NONE || (self.sat[v], self.degree[v]) > (self.sat[best], self.degree[best]) {
                best = v;
            }
        }
        best
    }

    fn solve(&mut self, remaining: usize, used: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let v = self.pick();
        if self.sat[v] >= self.k {
            return Some(false);
        }
        for c in 0..self.k.min(used + 1) {
            if self.forbid[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            match self.solve(remaining - 1, used.max(c + 1)) {
                Some(false) => self.unassign(v, c),
                other => return other,
            }
        }
        Some(false)
    }
}

fn dsatur(g: &Graph, k: usize, seed: &[usize], budget: u64) -> (Option<bool>, Vec<usize>, u64) {
    let n = g.order();
    let mut s = Dsatur {
        g,
        k,
        colour: vec![NONE; n],
        forbid: vec![0; n * k],
        sat: vec![0; n],
        degree: (0..n).map(|v| g.degree(v)).collect(),
        nodes: 0,
        budget,
    };
    for (c, &v) in seed.iter().enumerate() {
        s.assign(v, c);
    }
    let r = s.solve(n - seed.len(), seed.len());
    (r, s.colour, s.nodes)
}

/// Decides `k`-colourability; colours of a maximum clique are fixed up front to
/// break colour symmetry.
pub fn colour_with(g: &Graph, k: usize, budget: u64) -> ColourOutcome {
    colour_with_seed(g, k, &maximum_clique(g), budget).0
}

fn colour_with_seed(g: &Graph, k: usize, clique: &[usize], budget: u64) -> (ColourOutcome, u64) {
    if g.order() == 0 {
        return (ColourOutcome::Colouring(Vec::new()), 0);
    }
    if clique.len() > k {
        return (ColourOutcome::Impossible, 0);
    }
    match dsatur(g, k, clique, budget) {
        (Some(true), colour, nodes) => (ColourOutcome::Colouring(colour), nodes),
        (Some(false), _, nodes) => (ColourOutcome::Impossible, nodes),
        (None, _, nodes) => (ColourOutcome::BudgetExhausted, nodes),
    }
}

/// Greedy DSATUR without backtracking.
fn greedy_colouring(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let (_, colour, _) = dsatur(g, n.max(1), &[], u64::MAX);
    colour
}

/// Exact χ, ascending from the clique number; the budget is shared across the
/// successive `k`-colourability tests.
pub fn chromatic_number(g: &Graph, budget: u64) -> Chromatic {
    let n = g.order();
    if n == 0 {
        return Chromatic { lower: 0, upper: 0, colouring: Vec::new(), budget_exhausted: false };
    }
    let clique = maximum_clique(g);
    let mut colouring = greedy_colouring(g);
    let upper = colouring.iter().max().map_or(0, |&c| c + 1);
    let mut remaining = budget;
    for k in clique.len()..upper {
        let (outcome, used) = colour_with_seed(g, k, &clique, remaining);
        remaining = remaining.saturating_sub(used);
        match outcome {
            ColourOutcome::Colouring(c) => {
                return Chromatic { lower: k, upper: k, colouring: c, budget_exhausted: false };
            }
            ColourOutcome::Impossible => {}
            ColourOutcome::BudgetExhausted => {
                return Chromatic { lower: k, upper, colouring, budget_exhausted: true };
            }
        }
    }
    colouring.shrink_to_fit();
    Chromatic { lower: upper, upper, colouring, budget_exhausted: false }
}
