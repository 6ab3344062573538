//! Named permutation groups used as fixtures and CLI inputs.
//!
//! Subset actions label the `k`-subsets of `0..m` in lexicographic order, the
//! same labelling [`crate::graph::Graph::johnson`] uses, so a group built here
//! acts by automorphisms on the matching graph builder.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::util::{is_prime, k_subsets};

fn group(gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(gens).expect("catalogue generators share a degree")
}

fn cycle(n: usize, points: Vec<usize>) -> Permutation {
    Permutation::from_cycles(n, &[points]).expect("valid cycle")
}

fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..n).map(f).collect()).expect("catalogue map is a bijection")
}

/// Cyclic group generated by `(0 1 … n−1)`.
pub fn cyclic(n: usize) -> PermGroup {
    group(vec![from_fn(n, |x| (x + 1) % n)])
}

/// Dihedral group of the `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    group(vec![from_fn(n, |x| (x + 1) % n), from_fn(n, |x| (n - x) % n)])
}

/// `S_n` generated by `(0 1)` and the `n`-cycle.
pub fn symmetric(n: usize) -> PermGroup {
    if n == 1 {
        return group(vec![Permutation::identity(1)]);
    }
    group(vec![cycle(n, vec![0, 1]), from_fn(n, |x| (x + 1) % n)])
}

/// `S_k` with the Coxeter–Moore generators `(i i+1)`.
pub fn symmetric_coxeter(k: usize) -> PermGroup {
    if k == 1 {
        return group(vec![Permutation::identity(1)]);
    }
    group((0..k - 1).map(|i| cycle(k, vec![i, i + 1])).collect())
}

/// `A_n` generated by the 3-cycles `(0 1 i)`.
pub fn alternating(n: usize) -> PermGroup {
    assert!(n >= 3);
    group((2..n).map(|i| cycle(n, vec![0, 1, i])).collect())
}

fn primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&a| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * a % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// The maps `x ↦ ax + b` on `Z_p` with `a` in the subgroup of order `d` of `Z_p^*`.
pub fn semi_affine(p: usize, d: usize) -> PermGroup {
    assert!(is_prime(p) && (p - 1).is_multiple_of(d));
    let a = (0..(p - 1) / d).fold(1, |acc, _| acc * primitive_root(p) % p);
    let mut gens = vec![from_fn(p, |x| (x + 1) % p)];
    if d > 1 {
        gens.push(from_fn(p, |x| x * a % p));
    }
    group(gens)
}

/// `AGL(1, p)`.
pub fn affine(p: usize) -> PermGroup {
    semi_affine(p, p - 1)
}

/// Induced action of a permutation on `k`-subsets of `0..m`, lexicographic labels.
pub fn induced_on_subsets(p: &Permutation, k: usize) -> Permutation {
    let subsets = k_subsets(p.degree(), k);
    let index: std::collections::HashMap<&[usize], usize> =
        subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    from_fn(subsets.len(), |i| {
        let mut img: Vec<usize> = subsets[i].iter().map(|&x| p.image(x)).collect();
        img.sort_unstable();
        index[img.as_slice()]
    })
}

/// `S_m` acting on the `k`-subsets of `0..m`.
pub fn symmetric_on_k_subsets(m: usize, k: usize) -> PermGroup {
    let s = symmetric(m);
    group(s.generators().iter().map(|g| induced_on_subsets(g, k)).collect())
}

/// `S_m` on `k`-subsets with the Coxeter–Moore generators.
pub fn symmetric_coxeter_on_k_subsets(m: usize, k: usize) -> PermGroup {
    let s = symmetric_coxeter(m);
    group(s.generators().iter().map(|g| induced_on_subsets(g, k)).collect())
}

/// Automorphism group of the Petersen graph, as `S_5` on 2-subsets.
pub fn petersen_automorphisms() -> PermGroup {
    symmetric_on_k_subsets(5, 2)
}

/// `S_k wr S_2` in product action on `k²` points; point `(a, b)` is `a·k + b`.
///
/// This is the automorphism group of the `k × k` rook's graph.
pub fn grid(k: usize) -> PermGroup {
    let n = k * k;
    let mut gens: Vec<Permutation> = symmetric(k)
        .generators()
        .iter()
        .map(|s| from_fn(n, |x| s.image(x / k) * k + x % k))
        .collect();
    gens.push(from_fn(n, |x| (x % k) * k + x / k));
    group(gens)
}

/// `S_k wr S_m` in imprimitive action: `m` blocks `{i·k, …, i·k+k−1}`.
pub fn imprimitive_wreath(k: usize, m: usize) -> PermGroup {
    let n = k * m;
    let mut gens: Vec<Permutation> = symmetric(k)
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|s| from_fn(n, |x| if x < k { s.image(x) } else { x }))
        .collect();
    for t in symmetric(m).generators().iter().filter(|g| !g.is_identity()) {
        gens.push(from_fn(n, |x| t.image(x / k) * k + x % k));
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    group(gens)
}

/// Names accepted by [`by_name`], with a short description.
pub const NAMES: &[(&str, &str)] = &[
    ("cyclic-N", "cyclic group C_N"),
    ("dihedral-N", "dihedral group D_N on N points"),
    ("symmetric-N", "S_N natural action"),
    ("alternating-N", "A_N natural action"),
    ("coxeter-N", "S_N with adjacent transpositions"),
    ("affine-P", "AGL(1,P), P prime"),
    ("semi-affine-P-D", "x -> ax+b with a of order dividing D, P prime"),
    ("subsets-M-K", "S_M on K-subsets"),
    ("coxeter-subsets-M-K", "S_M on K-subsets, adjacent transpositions"),
    ("petersen-aut", "automorphisms of the Petersen graph"),
    ("grid-K", "S_K wr S_2 product action on K^2 points"),
    ("wreath-K-M", "S_K wr S_M imprimitive action on K*M points"),
];

/// Looks up a group by the names listed in [`NAMES`].
pub fn by_name(name: &str) -> Result<PermGroup> {
    let bad = || Error::InvalidParameters(format!("unknown group name {name:?}"));
    if name == "petersen-aut" {
        return Ok(petersen_automorphisms());
    }
    let (family, params) = match name.find(|c: char| c.is_ascii_digit()) {
        Some(i) if i > 0 => (&name[..i - 1], &name[i..]),
        _ => return Err(bad()),
    };
    let nums: Vec<usize> = params
        .split('-')
        .map(|s| s.parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{name}: {what}")))
        }
    };
    match (family, nums.as_slice()) {
        ("cyclic", &[n]) => check(n >= 1, "N >= 1").map(|_| cyclic(n)),
        ("dihedral", &[n]) => check(n >= 3, "N >= 3").map(|_| dihedral(n)),
        ("symmetric", &[n]) => check(n >= 1, "N >= 1").map(|_| symmetric(n)),
        ("alternating", &[n]) => check(n >= 3, "N >= 3").map(|_| alternating(n)),
        ("coxeter", &[n]) => check(n >= 1, "N >= 1").map(|_| symmetric_coxeter(n)),
        ("affine", &[p]) => check(is_prime(p), "P prime").map(|_| affine(p)),
        ("semi-affine", &[p, d]) => {
            check(is_prime(p) && d >= 1 && (p - 1) % d == 0, "P prime, D | P-1").map(|_| semi_affine(p, d))
        }
        ("subsets", &[m, k]) => check(k >= 1 && k < m, "1 <= K < M").map(|_| symmetric_on_k_subsets(m, k)),
        ("coxeter-subsets", &[m, k]) => {
            check(k >= 1 && k < m, "1 <= K < M").map(|_| symmetric_coxeter_on_k_subsets(m, k))
        }
        ("grid", &[k]) => check(k >= 2, "K >= 2").map(|_| grid(k)),
        ("wreath", &[k, m]) => check(k >= 2 && m >= 2, "K, M >= 2").map(|_| imprimitive_wreath(k, m)),
        _ => Err(bad()),
    }
}
