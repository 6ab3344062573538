use super::Graph;
use crate::bits::BitSet;

/// Maximum clique by branch and bound, bounding each branch with a greedy
/// colouring of the candidate set. Returns the clique sorted ascending.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut best = Vec::new();
    if n == 0 {
        return best;
    }
    let mut current = Vec::new();
    expand(g, BitSet::full(n), &mut current, &mut best);
    best.sort_unstable();
    best
}

pub fn clique_number(g: &Graph) -> usize {
    maximum_clique(g).len()
}

/// Greedy sequential colouring of `cand`; returns vertices in colour order
/// together with the colour bound of each prefix.
fn colour_sort(g: &Graph, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count());
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut uncoloured = cand.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut available = uncoloured.clone();
        while let Some(v) = available.first() {
            available.remove(v);
            available.difference_with(g.neighbours(v));
            uncoloured.remove(v);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}

fn expand(g: &Graph, mut cand: BitSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let (order, bounds) = colour_sort(g, &cand);
    for i in (0..order.len()).rev() {
        if current.len() + bounds[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let mut next = cand.clone();
        next.intersect_with(g.neighbours(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, next, current, best);
        }
        current.pop();
        cand.remove(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle over all vertex subsets.
    fn brute_clique(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn named_examples() {
        assert_eq!(clique_number(&Graph::petersen()), 2);
        assert_eq!(clique_number(&Graph::petersen().complement()), 4);
        for n in 1..7 {
            assert_eq!(clique_number(&Graph::complete(n)), n);
        }
        assert_eq!(clique_number(&Graph::null(4)), 1);
        assert_eq!(clique_number(&Graph::null(0)), 0);
    }

    #[test]
    fn witness_is_a_clique() {
        let g = Graph::johnson(7, 3, &[1]).unwrap();
        let c = maximum_clique(&g);
        assert!(g.is_clique(&c));
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::null(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(clique_number(&g), brute_clique(&g));
        }
    }
}
