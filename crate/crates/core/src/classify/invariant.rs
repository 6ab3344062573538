use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::PermGroup;

/// A graph whose edge set is a union of orbits on 2-subsets.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantGraph {
    /// Indices into `OrbitalData::two_subset_orbits`.
    pub orbits: Vec<usize>,
    /// Bitmask of `orbits`.
    pub mask: u64,
    /// Mask of the complementary graph.
    pub complement_mask: u64,
    #[serde(skip)]
    pub graph: Graph,
}

pub const DEFAULT_MAX_TWO_SUBSET_ORBITS: usize = 16;

fn orbit_count(g: &PermGroup, max_orbits: usize) -> Result<usize> {
    g.require_transitive()?;
    let r = g.orbitals().two_subset_orbits.len();
    if r > max_orbits || r > 62 {
        return Err(Error::InvalidParameters(format!(
            "{r} orbits on 2-subsets exceed the invariant-graph limit of {max_orbits}"
        )));
    }
    Ok(r)
}

pub fn graph_of_mask(g: &PermGroup, mask: u64) -> InvariantGraph {
    let data = g.orbitals();
    let r = data.two_subset_orbits.len();
    let mut graph = Graph::null(g.degree());
    let mut orbits = Vec::new();
    for (i, orbit) in data.two_subset_orbits.iter().enumerate() {
        if mask >> i & 1 == 1 {
            orbits.push(i);
            for &(a, b) in orbit {
                graph.add_edge(a, b).expect("orbit pairs are valid");
            }
        }
    }
    let full = (1u64 << r) - 1;
    InvariantGraph { orbits, mask, complement_mask: full & !mask, graph }
}

/// All `2^r − 2` nontrivial invariant graphs, by increasing mask.
pub fn invariant_graphs(g: &PermGroup, max_orbits: usize) -> Result<Vec<InvariantGraph>> {
    let r = orbit_count(g, max_orbits)?;
    Ok((1..(1u64 << r) - 1).map(|m| graph_of_mask(g, m)).collect())
}

/// One `(Γ, Γ̄)` per complementary pair: `Γ` ranges over masks without the last orbit.
pub fn complementary_pairs(g: &PermGroup, max_orbits: usize) -> Result<Vec<(InvariantGraph, InvariantGraph)>> {
    let r = orbit_count(g, max_orbits)?;
    if r < 2 {
        return Ok(Vec::new());
    }
    Ok((1..1u64 << (r - 1))
        .map(|m| {
            let a = graph_of_mask(g, m);
            let b = graph_of_mask(g, a.complement_mask);
            (a, b)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn two_homogeneous_has_none() {
        assert!(invariant_graphs(&catalogue::symmetric(5), 16).unwrap().is_empty());
        assert!(complementary_pairs(&catalogue::affine(7), 16).unwrap().is_empty());
    }

    #[test]
    fn subsets_five_two_gives_line_graph_and_petersen() {
        let gs = invariant_graphs(&catalogue::symmetric_on_k_subsets(5, 2), 16).unwrap();
        assert_eq!(gs.len(), 2);
        // Least pair (0,1) is {0,1},{0,2}: the "meet in a point" orbit comes first.
        assert_eq!(gs[0].graph, Graph::line_of_complete(5).unwrap());
        assert_eq!(gs[1].graph, Graph::petersen());
        assert_eq!(gs[0].complement_mask, gs[1].mask);
    }

    #[test]
    fn counts_and_complements() {
        let g = catalogue::cyclic(7);
        let all = invariant_graphs(&g, 16).unwrap();
        assert_eq!(all.len(), 6);
        let pairs = complementary_pairs(&g, 16).unwrap();
        assert_eq!(pairs.len(), 3);
        for (a, b) in pairs {
            assert_eq!(a.graph.complement(), b.graph);
        }
        assert!(invariant_graphs(&catalogue::cyclic(40), 16).is_err());
        let intrans = PermGroup::from_strings(4, &["(0 1)"]).unwrap();
        assert!(matches!(invariant_graphs(&intrans, 16), Err(Error::Intransitive { .. })));
    }
}
