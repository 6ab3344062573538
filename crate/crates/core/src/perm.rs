//! Permutations and permutation groups given by generators.
//!
//! Points are `0..degree`. Groups act on the right: `x·(pq) = (x·p)·q`, so
//! [`Permutation::compose`] reads "first `self`, then `other`".
//!
//! Nothing here builds a stabilizer chain. Orbits, orbitals and block systems
//! come from union-find closures under the generators, and whole-group questions
//! go through [`PermGroup::cayley_enumerate`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::util::DisjointSets;

/// Default cap on the number of group elements enumerated.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// A bijection of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotBijective(format!("{x} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; omitted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::NotBijective(format!("{x} appears in two cycle positions")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses `"[i0,i1,...]"` image-list form or `"(a b c)(d e)"` cycle form.
    ///
    /// Cycle entries may be separated by spaces or commas; `"()"` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let t = text.trim();
        let syntax = |reason: &str| Error::Syntax { text: text.to_string(), reason: reason.to_string() };
        if let Some(body) = t.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(|| syntax("missing closing ']'"))?;
            let images = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| syntax("expected a nonnegative integer")))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != degree {
                return Err(syntax(&format!("expected {degree} images, found {}", images.len())));
            }
            return Self::from_images(images);
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| syntax("expected '(' or '['"))?;
            let close = open.find(')').ok_or_else(|| syntax("unclosed '('"))?;
            let cycle = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| syntax("expected a nonnegative integer")))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
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

    /// `self` followed by `other`: `x ↦ (x·self)·other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// An orbit of the group on ordered pairs of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbital {
    pub index: usize,
    /// Lexicographically least pair of the orbital.
    pub representative: (usize, usize),
    /// Sorted ordered pairs.
    pub pairs: Vec<(usize, usize)>,
    pub is_diagonal: bool,
    /// Index of the orbital holding the reversed pairs.
    pub paired_with: usize,
}

/// Orbital decomposition of `Ω²` together with the derived orbits on 2-subsets.
#[derive(Clone, Debug)]
pub struct OrbitalData {
    pub orbitals: Vec<Orbital>,
    /// Orbital index of the ordered pair `(a, b)`, at `a * n + b`.
    pub pair_orbital: Vec<usize>,
    /// Orbits on unordered pairs `{a < b}`, ordered by least pair.
    pub two_subset_orbits: Vec<Vec<(usize, usize)>>,
}

impl OrbitalData {
    pub fn rank(&self) -> usize {
        self.orbitals.len()
    }

    pub fn self_paired_count(&self) -> usize {
        self.orbitals.iter().filter(|o| o.paired_with == o.index).count()
    }

    pub fn non_diagonal(&self) -> impl Iterator<Item = &Orbital> {
        self.orbitals.iter().filter(|o| !o.is_diagonal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub weakly_connected: bool,
    pub strongly_connected: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityProfile {
    pub transitive: bool,
    pub two_homogeneous: bool,
    pub two_transitive: bool,
    pub generously_transitive: bool,
}

/// Minimal nontrivial block systems of a transitive group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockAnalysis {
    /// Each system is a partition into blocks, blocks ordered by least point.
    pub systems: Vec<Vec<Vec<usize>>>,
    pub is_primitive: bool,
}

/// A permutation group given by a nonempty generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    orbits: OnceLock<Vec<Vec<usize>>>,
    orbitals: OnceLock<OrbitalData>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
        }
        Ok(PermGroup { degree, generators, orbits: OnceLock::new(), orbitals: OnceLock::new() })
    }

    /// Parses each generator with [`Permutation::parse`].
    pub fn from_strings<S: AsRef<str>>(degree: usize, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbits on points, each sorted, listed by least element.
    pub fn orbits(&self) -> &[Vec<usize>] {
        self.orbits.get_or_init(|| {
            let mut ds = DisjointSets::new(self.degree);
            for g in &self.generators {
                for x in 0..self.degree {
                    ds.union(x, g.image(x));
                }
            }
            ds.classes()
        })
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn require_transitive(&self) -> Result<()> {
        match self.orbits().len() {
            1 => Ok(()),
            k => Err(Error::Intransitive { orbits: k }),
        }
    }

    pub fn orbitals(&self) -> &OrbitalData {
        self.orbitals.get_or_init(|| self.compute_orbitals())
    }

    pub fn rank(&self) -> usize {
        self.orbitals().rank()
    }

    fn compute_orbitals(&self) -> OrbitalData {
        let n = self.degree;
        let mut ds = DisjointSets::new(n * n);
        for g in &self.generators {
            for a in 0..n {
                let ga = g.image(a);
                for b in 0..n {
                    ds.union(a * n + b, ga * n + g.image(b));
                }
            }
        }
        // classes() lists classes by least pair index, i.e. lexicographically least pair.
        let classes = ds.classes();
        let mut pair_orbital = vec![0; n * n];
        for (i, class) in classes.iter().enumerate() {
            for &p in class {
                pair_orbital[p] = i;
            }
        }
        let orbitals: Vec<Orbital> = classes
            .iter()
            .enumerate()
            .map(|(i, class)| {
                let pairs: Vec<(usize, usize)> = class.iter().map(|&p| (p / n, p % n)).collect();
                let (a, b) = pairs[0];
                Orbital {
                    index: i,
                    representative: (a, b),
                    is_diagonal: a == b,
                    paired_with: pair_orbital[b * n + a],
                    pairs,
                }
            })
            .collect();
        let mut two_subset_orbits: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut done = vec![false; orbitals.len()];
        for o in &orbitals {
            if o.is_diagonal || done[o.index] {
                continue;
            }
            done[o.index] = true;
            done[o.paired_with] = true;
            let mut merged: Vec<(usize, usize)> = o
                .pairs
                .iter()
                .chain(orbitals[o.paired_with].pairs.iter())
                .filter(|(a, b)| a < b)
                .copied()
                .collect();
            merged.sort_unstable();
            merged.dedup();
            two_subset_orbits.push(merged);
        }
        two_subset_orbits.sort();
        OrbitalData { orbitals, pair_orbital, two_subset_orbits }
    }

    pub fn orbital_digraph_connectivity(&self, orbital: usize) -> Result<Connectivity> {
        let data = self.orbitals();
        let o = data.orbitals.get(orbital).ok_or_else(|| {
            Error::InvalidParameters(format!("no orbital with index {orbital}"))
        })?;
        if o.is_diagonal {
            return Err(Error::DiagonalOrbital(orbital));
        }
        let n = self.degree;
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut ds = DisjointSets::new(n);
        for &(a, b) in &o.pairs {
            out_adj[a].push(b);
            in_adj[b].push(a);
            ds.union(a, b);
        }
        let weakly_connected = ds.classes().len() == 1;
        let reach_all = |adj: &[Vec<usize>]| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![0];
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            count == n
        };
        let strongly_connected = reach_all(&out_adj) && reach_all(&in_adj);
        if self.is_transitive() {
            assert!(
                !weakly_connected || strongly_connected,
                "orbital digraph {orbital} of a transitive group is weakly but not strongly connected"
            );
        }
        Ok(Connectivity { weakly_connected, strongly_connected })
    }

    /// Primitivity via connectivity of every non-diagonal orbital digraph.
    pub fn is_primitive_by_orbitals(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        let data = self.orbitals();
        data.non_diagonal()
            .all(|o| self.orbital_digraph_connectivity(o.index).map(|c| c.weakly_connected).unwrap_or(false))
    }

    /// Finest block system in which `a` and `b` share a block.
    pub fn minimal_block_system(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut ds = DisjointSets::new(self.degree);
        let mut queue = VecDeque::new();
        if ds.union(a, b) {
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.image(x), g.image(y));
                let (rx, ry) = (ds.find(gx), ds.find(gy));
                if rx != ry {
                    ds.union(rx, ry);
                    queue.push_back((rx, ry));
                }
            }
        }
        ds.classes()
    }

    /// All minimal nontrivial block systems, cross-checked against orbital connectivity.
    pub fn block_systems(&self) -> Result<BlockAnalysis> {
        self.require_transitive()?;
        let n = self.degree;
        let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
        for beta in 1..n {
            let system = self.minimal_block_system(0, beta);
            if system.len() > 1 && !found.contains(&system) {
                found.push(system);
            }
        }
        let refines = |fine: &Vec<Vec<usize>>, coarse: &Vec<Vec<usize>>| {
            let mut label = vec![0; n];
            for (i, block) in coarse.iter().enumerate() {
                for &x in block {
                    label[x] = i;
                }
            }
            fine.iter().all(|block| block.iter().all(|&x| label[x] == label[block[0]]))
        };
        let mut systems: Vec<Vec<Vec<usize>>> = found
            .iter()
            .filter(|s| !found.iter().any(|t| t != *s && refines(t, s)))
            .cloned()
            .collect();
        systems.sort();
        let is_primitive = systems.is_empty();
        assert_eq!(
            is_primitive,
            self.is_primitive_by_orbitals(),
            "block closure and orbital connectivity disagree on primitivity"
        );
        Ok(BlockAnalysis { systems, is_primitive })
    }

    pub fn is_primitive(&self) -> bool {
        self.is_transitive() && self.is_primitive_by_orbitals()
    }

    pub fn transitivity_profile(&self) -> TransitivityProfile {
        let transitive = self.is_transitive();
        let data = self.orbitals();
        let non_diag = data.non_diagonal().count();
        let small = self.degree < 2;
        TransitivityProfile {
            transitive,
            two_homogeneous: transitive && (small || data.two_subset_orbits.len() == 1),
            two_transitive: transitive && (small || non_diag == 1),
            generously_transitive: transitive && data.orbitals.iter().all(|o| o.paired_with == o.index),
        }
    }

    /// Orbit of a point set under the group, starting with `set` itself.
    pub fn set_orbit(&self, set: &BitSet) -> Vec<BitSet> {
        let mut seen: HashSet<BitSet> = HashSet::new();
        seen.insert(set.clone());
        let mut out = vec![set.clone()];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let img = out[i].map(g.images());
                if seen.insert(img.clone()) {
                    out.push(img);
                }
            }
            i += 1;
        }
        out
    }

    /// Whether every generator maps each part of `partition` onto a part.
    pub fn preserves_partition(&self, partition: &[Vec<usize>]) -> bool {
        let mut label = vec![usize::MAX; self.degree];
        for (i, part) in partition.iter().enumerate() {
            for &x in part {
                label[x] = i;
            }
        }
        if label.contains(&usize::MAX) {
            return false;
        }
        self.generators.iter().all(|g| {
            partition.iter().all(|part| {
                let l = label[g.image(part[0])];
                part.iter().all(|&x| label[g.image(x)] == l)
            })
        })
    }

    /// Breadth-first enumeration of the Cayley digraph from the identity.
    ///
    /// Words are lexicographically least among shortest words over the
    /// generator list. Stops once `cap` elements are found.
    pub fn cayley_enumerate(&self, cap: usize) -> CayleyData {
        assert!(cap > 0, "cap must be positive");
        assert!(self.degree <= u16::MAX as usize + 1, "degree too large for element storage");
        let n = self.degree;
        let gens: Vec<Vec<u16>> = self
            .generators
            .iter()
            .map(|g| g.images().iter().map(|&x| x as u16).collect())
            .collect();
        let mut data = CayleyData {
            degree: n,
            order: 0,
            diameter: 0,
            truncated: false,
            elements: Vec::new(),
            word_length: Vec::new(),
            parent: Vec::new(),
            index: HashMap::new(),
        };
        let id: Box<[u16]> = (0..n as u32).map(|x| x as u16).collect();
        data.push(id, 0, (u32::MAX, 0));
        let mut head = 0;
        'bfs: while head < data.order {
            let len = data.word_length[head];
            for (gi, g) in gens.iter().enumerate() {
                let cur = &data.elements[head * n..(head + 1) * n];
                let next: Box<[u16]> = cur.iter().map(|&x| g[x as usize]).collect();
                if data.index.contains_key(&next) {
                    continue;
                }
                if data.order >= cap {
                    data.truncated = true;
                    break 'bfs;
                }
                data.push(next, len + 1, (head as u32, gi as u16));
            }
            head += 1;
        }
        data.diameter = data.word_length.iter().copied().max().unwrap_or(0) as usize;
        data
    }

    /// Full element list, or an error when the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Result<CayleyData> {
        let data = self.cayley_enumerate(cap);
        if data.truncated {
            Err(Error::EnumerationCap { cap })
        } else {
            Ok(data)
        }
    }
}

/// Result of [`PermGroup::cayley_enumerate`].
#[derive(Clone, Debug)]
pub struct CayleyData {
    degree: usize,
    /// Number of elements found; exact unless `truncated`.
    pub order: usize,
    /// Directed diameter; a lower bound when `truncated`.
    pub diameter: usize,
    pub truncated: bool,
    elements: Vec<u16>,
    word_length: Vec<u32>,
    parent: Vec<(u32, u16)>,
    index: HashMap<Box<[u16]>, u32>,
}

impl CayleyData {
    fn push(&mut self, elem: Box<[u16]>, len: u32, parent: (u32, u16)) {
        self.elements.extend_from_slice(&elem);
        self.index.insert(elem, self.order as u32);
        self.word_length.push(len);
        self.parent.push(parent);
        self.order += 1;
    }

    /// Image list of element `i`; element 0 is the identity.
    pub fn images(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.elements[i * self.degree..(i + 1) * self.degree].iter().map(|&x| x as usize)
    }

    pub fn element(&self, i: usize) -> Permutation {
        Permutation { images: self.images(i).collect() }
    }

    pub fn image_of(&self, i: usize, x: usize) -> usize {
        self.elements[i * self.degree + x] as usize
    }

    pub fn word_length(&self, i: usize) -> usize {
        self.word_length[i] as usize
    }

    /// Generator indices of the BFS word for element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.word_length[i] as usize);
        let mut cur = i;
        while self.parent[cur].0 != u32::MAX {
            out.push(self.parent[cur].1 as usize);
            cur = self.parent[cur].0 as usize;
        }
        out.reverse();
        out
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        let key: Box<[u16]> = p.images().iter().map(|&x| x as u16).collect();
        self.index.get(&key).map(|&i| i as usize)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.index_of(&self.element(i).inverse()).expect("enumeration is closed under inverses")
    }
}
