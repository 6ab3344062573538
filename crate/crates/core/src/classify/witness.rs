//! Certificates for negative classifications, each checkable on its own.
//!
//! "For all g ∈ G" conditions are checked over the orbit of the relevant set
//! under the generators, which is exactly `{Ag : g ∈ G}`.

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::perm::PermGroup;

/// A partition every image of `section` meets in exactly one point per part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRegularWitness {
    pub partition: Vec<Vec<usize>>,
    pub section: Vec<usize>,
    /// Where the witness came from, e.g. `"colouring of invariant graph [1]"`.
    pub source: String,
}

/// Sets with `|A|·|B| = n` and `|Ag ∩ B| = 1` for all `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub source: String,
}

/// Two partitions, each part of one a section for the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPairWitness {
    pub p: Vec<Vec<usize>>,
    pub q: Vec<Vec<usize>>,
    pub source: String,
}

/// Multiset `A` and set `B` with `|A * Bg| = λ` for all `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadingWitness {
    pub a: Vec<u64>,
    pub b: Vec<usize>,
    pub lambda: u64,
}

fn set(n: usize, pts: &[usize]) -> Option<BitSet> {
    if pts.iter().any(|&x| x >= n) {
        return None;
    }
    let s = BitSet::from_points(n, pts.iter().copied());
    (s.count() == pts.len()).then_some(s)
}

fn is_partition(n: usize, parts: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    for part in parts {
        if part.is_empty() {
            return false;
        }
        for &x in part {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
    }
    seen.iter().all(|&s| s)
}

impl SectionRegularWitness {
    pub fn validate(&self, g: &PermGroup) -> Result<(), String> {
        let n = g.degree();
        if !is_partition(n, &self.partition) {
            return Err("not a partition of the points".into());
        }
        if self.partition.len() < 2 || self.partition.len() == n {
            return Err("partition is trivial".into());
        }
        if self.partition.iter().any(|p| p.len() != self.partition[0].len()) {
            return Err("parts have unequal sizes".into());
        }
        let section = set(n, &self.section).ok_or("section is not a set of points")?;
        let parts: Vec<BitSet> = self.partition.iter().map(|p| BitSet::from_points(n, p.iter().copied())).collect();
        for image in g.set_orbit(&section) {
            if let Some(i) = parts.iter().position(|p| p.intersection_count(&image) != 1) {
                return Err(format!("image {:?} meets part {i} not exactly once", image.to_vec()));
            }
        }
        Ok(())
    }
}

impl SeparationWitness {
    pub fn validate(&self, g: &PermGroup) -> Result<(), String> {
        let n = g.degree();
        let a = set(n, &self.a).ok_or("A is not a set of points")?;
        let b = set(n, &self.b).ok_or("B is not a set of points")?;
        if a.count() * b.count() != n || a.count() < 2 || b.count() < 2 {
            return Err("need |A|·|B| = n with both sets nontrivial".into());
        }
        for image in g.set_orbit(&a) {
            if image.intersection_count(&b) != 1 {
                return Err(format!("image {:?} of A meets B not exactly once", image.to_vec()));
            }
        }
        Ok(())
    }
}

impl PartitionPairWitness {
    pub fn validate(&self, g: &PermGroup) -> Result<(), String> {
        for (name, p, q) in [("P", &self.p, &self.q), ("Q", &self.q, &self.p)] {
            for part in q {
                let w = SectionRegularWitness { partition: p.clone(), section: part.clone(), source: String::new() };
                w.validate(g).map_err(|e| format!("{name} with a section from the other partition: {e}"))?;
            }
        }
        Ok(())
    }
}

/// `|A|` as a sum of multiplicities.
pub fn multiset_size(a: &[u64]) -> u64 {
    a.iter().sum()
}

/// Constant, or supported on a single point.
pub fn multiset_is_trivial(a: &[u64]) -> bool {
    a.iter().all(|&x| x == a[0]) || a.iter().filter(|&&x| x > 0).count() <= 1
}

impl SpreadingWitness {
    pub fn validate(&self, g: &PermGroup) -> Result<(), String> {
        let n = g.degree();
        if self.a.len() != n {
            return Err("multiset has the wrong length".into());
        }
        if multiset_is_trivial(&self.a) {
            return Err("A is trivial".into());
        }
        let b = set(n, &self.b).ok_or("B is not a set of points")?;
        if b.count() < 2 || b.count() >= n {
            return Err("B is trivial".into());
        }
        let size = multiset_size(&self.a);
        if size == 0 || !(n as u64).is_multiple_of(size) {
            return Err("|A| does not divide n".into());
        }
        if self.lambda == 0 || self.lambda * n as u64 != size * b.count() as u64 {
            return Err("λ differs from |A|·|B|/n".into());
        }
        for image in g.set_orbit(&b) {
            let s: u64 = image.iter().map(|x| self.a[x]).sum();
            if s != self.lambda {
                return Err(format!("|A * Bg| = {s} ≠ λ for Bg = {:?}", image.to_vec()));
            }
        }
        Ok(())
    }
}
