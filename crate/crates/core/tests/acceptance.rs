//! Acceptance criteria 1–12. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line with its runtime.

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syncgroups_core::catalogue::{self, by_name};
use syncgroups_core::classify::{
    average_product_check, check_rystsov, classify_group, is_partition_separating, is_separating,
    is_synchronizing_group, spreading_search, synchronizes_map, ClassificationReport, Limits, Verdict,
};
use syncgroups_core::graph::{automorphism_count, chromatic_number, clique_number, core, hull, Graph};
use syncgroups_core::reset::{group_automaton, spreading_greedy_reset, GreedyReset};
use syncgroups_core::transform::{
    cerny_automaton, is_synchronizing_automaton, shortest_reset_word, Automaton, ShortestReset, Transformation,
};
use syncgroups_core::PermGroup;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn(&mut Ledger) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Every classification report produced by the suite, for the property checks.
#[derive(Default)]
struct Ledger {
    reports: Vec<(String, PermGroup, ClassificationReport)>,
}

impl Ledger {
    fn classify(&mut self, name: &str, limits: &Limits) -> ClassificationReport {
        let g = by_name(name).expect("catalogue name");
        let r = classify_group(&g, limits);
        self.reports.push((name.to_string(), g, r.clone()));
        r
    }
}

fn limits_without_ns() -> Limits {
    Limits { compute_ns: false, ..Limits::default() }
}

// ---------------------------------------------------------------- oracles

/// Transitive, and every non-diagonal orbital digraph is connected, by direct
/// breadth-first search over generator images.
fn primitive_by_orbital_bfs(g: &PermGroup) -> bool {
    let n = g.degree();
    if !g.is_transitive() {
        return false;
    }
    let gens: Vec<Vec<usize>> = g.generators().iter().map(|p| p.images().to_vec()).collect();
    for b in 1..n {
        // Orbital of (0, b).
        let mut arcs = BTreeSet::from([(0, b)]);
        let mut queue = VecDeque::from([(0, b)]);
        while let Some((x, y)) = queue.pop_front() {
            for p in &gens {
                if arcs.insert((p[x], p[y])) {
                    queue.push_back((p[x], p[y]));
                }
            }
        }
        // Undirected connectivity of the digraph.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(x, y) in &arcs {
                for (u, w) in [(x, y), (y, x)] {
                    if u == v && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
    }
    true
}

/// All set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            rec(i + 1, n, max.max(c), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(1, n, 0, &mut vec![0], &mut out);
    }
    out
}

/// Brute force: no nontrivial partition is preserved by every generator.
fn primitive_by_partitions(g: &PermGroup) -> bool {
    let n = g.degree();
    g.is_transitive()
        && set_partitions(n).into_iter().all(|p| {
            let parts = p.iter().max().unwrap() + 1;
            if parts == 1 || parts == n {
                return true;
            }
            !g.generators().iter().all(|s| {
                (0..n).all(|x| (0..n).all(|y| (p[x] == p[y]) == (p[s.image(x)] == p[s.image(y)])))
            })
        })
}

/// Spreading via preimage counts: `G` fails to spread iff some vector `c` of
/// preimage sizes of a singular map and some proper nonempty `A` have
/// `Σ_{a∈A} c(ag) ≤ |A|` for every `g`.
fn spreading_by_functions(g: &PermGroup) -> bool {
    let n = g.degree();
    let el = g.elements(1_000_000).unwrap();
    let images: Vec<Vec<usize>> = (0..el.order).map(|i| el.images(i).collect()).collect();
    let mut counts = Vec::new();
    fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut counts);
    for c in counts.iter().filter(|c| c.contains(&0)) {
        for mask in 1u32..(1 << n) - 1 {
            let a: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            if images.iter().all(|img| a.iter().map(|&x| c[img[x]]).sum::<usize>() <= a.len()) {
                return false;
            }
        }
    }
    true
}

fn random_singular(n: usize, rng: &mut impl Rng) -> Transformation {
    loop {
        let t = Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap();
        if !t.is_permutation() {
            return t;
        }
    }
}

fn random_rank_two(n: usize, rng: &mut impl Rng) -> Transformation {
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    loop {
        let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        if side.iter().any(|&s| s) && side.iter().any(|&s| !s) {
            return Transformation::new(side.iter().map(|&s| if s { a } else { b }).collect()).unwrap();
        }
    }
}

fn induces_cycle(g: &Graph, vs: &[usize]) -> bool {
    let h = g.induced(vs);
    h.is_regular() && h.order() >= 3 && h.edge_count() == h.order() && h.degree(0) == 2 && {
        // connected 2-regular
        let mut seen = vec![false; h.order()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in h.neighbours(v).iter() {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

fn chi(g: &Graph) -> Option<usize> {
    chromatic_number(g, Limits::default().colour_budget).exact()
}

// ---------------------------------------------------------------- criteria

fn cerny_family(_: &mut Ledger) -> Outcome {
    for n in 2..=8 {
        let a = cerny_automaton(n).unwrap();
        let s = shortest_reset_word(&a, 1 << 22);
        let len = s.word().map(|w| w.length);
        ensure!(len == Some((n - 1) * (n - 1)), "n = {n}: shortest {len:?}");
    }
    let a = cerny_automaton(4).unwrap();
    let word: Vec<usize> = "BRRRBRRRB".chars().map(|c| a.letter_index(&c.to_string()).unwrap()).collect();
    ensure!(a.reset_image(&word).is_some(), "BRRRBRRRB does not reset");
    // No word of length 8 resets: check every one of the 2^8 words directly.
    let shorter = (0u32..1 << 8).any(|m| a.reset_image(&(0..8).map(|i| (m >> i & 1) as usize).collect::<Vec<_>>()).is_some());
    ensure!(!shorter, "a reset word of length 8 exists");
    Ok("(n−1)² for n = 2..8; BRRRBRRRB resets, no word of length 8 does".into())
}

fn petersen(ledger: &mut Ledger) -> Outcome {
    let p = Graph::petersen();
    let c = p.complement();
    let got = (clique_number(&p), chi(&p), clique_number(&c), chi(&c));
    ensure!(got == (2, Some(3), 4, Some(5)), "ω, χ, ω̄, χ̄ = {got:?}");
    let r = ledger.classify("petersen-aut", &Limits::default());
    ensure!(r.flags.synchronizing == Verdict::Yes, "synchronizing {}", r.flags.synchronizing);
    ensure!(r.flags.separating == Verdict::Yes, "separating {}", r.flags.separating);
    ensure!(r.flags.spreading == Verdict::No, "spreading {}", r.flags.spreading);
    let w = r.witnesses.spreading.as_ref().ok_or("no spreading witness")?;
    ensure!(w.lambda == 2, "λ = {}", w.lambda);
    ensure!(w.a.iter().all(|&m| m <= 1), "A is not a set: {:?}", w.a);
    let a: Vec<usize> = (0..10).filter(|&i| w.a[i] == 1).collect();
    // The Petersen group acts on the graph's vertices with the same labels.
    let g = by_name("petersen-aut").unwrap();
    ensure!(g.generators().iter().all(|s| p.is_endomorphism(s.images())), "labels disagree");
    ensure!(a.len() == 5 && induces_cycle(&p, &a), "A = {a:?} is not a pentagon");
    ensure!(w.b.len() == 4 && p.is_independent(&w.b), "B = {:?} is not a 4-coclique", w.b);
    Ok(format!("ω=2 χ=3, ω̄=4 χ̄=5; spreading NO with pentagon {a:?}, coclique {:?}, λ=2", w.b))
}

fn symmetric_on_pairs(ledger: &mut Ledger) -> Outcome {
    let limits = limits_without_ns();
    for m in 5..=8usize {
        let g = catalogue::symmetric_on_k_subsets(m, 2);
        let odd = m % 2 == 1;
        let s = is_synchronizing_group(&g, &limits).map_err(|e| e.to_string())?;
        let sep = is_separating(&g, &limits).map_err(|e| e.to_string())?;
        ensure!(s.verdict == Verdict::from_bool(odd), "m = {m}: synchronizing {}", s.verdict);
        ensure!(sep.verdict == Verdict::from_bool(odd), "m = {m}: separating {}", sep.verdict);
        let l = Graph::line_of_complete(m).unwrap();
        if !odd {
            ensure!(clique_number(&l) == m - 1 && chi(&l) == Some(m - 1), "m = {m}: ω or χ of L(K_m) ≠ m−1");
            let w = s.witness.as_ref().ok_or("missing witness")?;
            w.validate(&g)?;
            ensure!(w.partition.len() == m - 1 && w.section.len() == m - 1, "m = {m}: witness shape");
            ensure!(l.is_clique(&w.section), "m = {m}: section is not a clique of L(K_m)");
            ensure!(w.partition.iter().all(|p| l.is_independent(p)), "m = {m}: parts are not colour classes");
        }
        if m == 6 {
            let ps = is_partition_separating(&g, &limits).map_err(|e| e.to_string())?;
            ensure!(ps.verdict == Verdict::Yes, "m = 6: partition-separating {}", ps.verdict);
            ledger.classify("subsets-6-2", &limits);
        }
        if m <= 7 {
            ensure!(chi(&l.complement()) == Some(m - 2), "m = {m}: χ of the complement ≠ m−2");
        }
    }
    Ok("odd m YES, even m NO with (m−1)-part witness; S6 partition-separating; χ̄ = m−2 for m = 5..7".into())
}

fn symmetric_on_triples(_: &mut Ledger) -> Outcome {
    let g = catalogue::symmetric_on_k_subsets(7, 3);
    let s = is_synchronizing_group(&g, &limits_without_ns()).map_err(|e| e.to_string())?;
    ensure!(s.verdict == Verdict::No, "synchronizing {}", s.verdict);
    let w = s.witness.ok_or("no witness")?;
    w.validate(&g)?;
    ensure!(w.partition.len() == 7 && w.partition.iter().all(|p| p.len() == 5), "partition shape");
    // Point i is the i-th 3-subset of 0..7 in lexicographic order.
    let mut triples = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                triples.push([a, b, c]);
            }
        }
    }
    let lines: Vec<[usize; 3]> = w.section.iter().map(|&i| triples[i]).collect();
    let fano = lines.len() == 7
        && lines.iter().enumerate().all(|(i, x)| {
            lines[i + 1..].iter().all(|y| x.iter().filter(|p| y.contains(p)).count() == 1)
        });
    ensure!(fano, "section {lines:?} is not a Fano plane");
    Ok(format!("7 parts of size 5; section {lines:?}"))
}

fn rystsov(_: &mut Ledger) -> Outcome {
    let names = [
        "cyclic-5", "cyclic-6", "cyclic-8", "dihedral-6", "dihedral-7", "affine-7", "affine-11", "semi-affine-13-3",
        "symmetric-5", "alternating-6", "petersen-aut", "subsets-6-2", "grid-3", "grid-4", "wreath-2-3",
        "wreath-3-2", "wreath-2-4", "wreath-4-4",
    ];
    let (mut prim, mut imprim) = (0, 0);
    for name in names {
        let g = by_name(name).unwrap();
        let n = g.degree();
        ensure!(n <= 16, "{name} has degree {n}");
        let oracle_primitive = primitive_by_orbital_bfs(&g);
        // Every rank n−1 idempotent, not just one per orbital.
        let mut all = true;
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let e = Transformation::elementary_collapse(n, a, b);
                    all &= synchronizes_map(&g, &e).map_err(|e| e.to_string())?;
                }
            }
        }
        let r = check_rystsov(&g).map_err(|e| e.to_string())?;
        ensure!(oracle_primitive == all, "{name}: primitive {oracle_primitive} but idempotents {all}");
        ensure!(r.agrees() && r.primitive == oracle_primitive, "{name}: library check {r:?}");
        ensure!(r.all_idempotents_synchronized == all, "{name}: orbital representatives disagree");
        if oracle_primitive {
            prim += 1
        } else {
            imprim += 1
        }
    }
    Ok(format!("{} groups ({prim} primitive, {imprim} imprimitive)", names.len()))
}

fn rank_two(_: &mut Ledger) -> Outcome {
    let names = [
        "cyclic-5", "cyclic-7", "cyclic-11", "dihedral-5", "dihedral-13", "affine-7", "semi-affine-13-4",
        "symmetric-6", "alternating-7", "petersen-aut", "subsets-6-2", "subsets-7-2", "grid-3", "grid-4",
        "subsets-7-3",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for name in names {
        let g = by_name(name).unwrap();
        ensure!(g.is_primitive(), "{name} is not primitive");
        for _ in 0..50 {
            let f = random_rank_two(g.degree(), &mut rng);
            ensure!(synchronizes_map(&g, &f).map_err(|e| e.to_string())?, "{name} fails {:?}", f.images());
            checked += 1;
        }
    }
    Ok(format!("{checked} maps over {} primitive groups", names.len()))
}

fn grid(ledger: &mut Ledger) -> Outcome {
    let r = ledger.classify("grid-3", &Limits::default());
    ensure!(r.flags.primitive == Verdict::Yes, "primitive {}", r.flags.primitive);
    ensure!(r.flags.synchronizing == Verdict::No, "synchronizing {}", r.flags.synchronizing);
    let ns = r.ns_ranks.as_ref().ok_or("NS not computed")?;
    ensure!(ns.ranks.contains(&3), "NS = {:?}", ns.ranks);
    ensure!(r.flags.almost_synchronizing_probe == Verdict::Yes, "probe {}", r.flags.almost_synchronizing_probe);
    Ok(format!("NS = {:?} (exhaustive: {}), probe YES", ns.ranks, ns.exhaustive))
}

fn prime_degree(ledger: &mut Ledger) -> Outcome {
    let mut names = Vec::new();
    for p in [5usize, 7, 11, 13] {
        for fam in ["cyclic", "dihedral", "affine", "symmetric", "alternating", "coxeter"] {
            names.push(format!("{fam}-{p}"));
        }
        for d in 1..p - 1 {
            if (p - 1) % d == 0 {
                names.push(format!("semi-affine-{p}-{d}"));
            }
        }
    }
    let limits = limits_without_ns();
    for name in &names {
        let g = by_name(name).unwrap();
        let sep = is_separating(&g, &limits).map_err(|e| e.to_string())?;
        ensure!(sep.verdict == Verdict::Yes, "{name}: separating {}", sep.verdict);
        let sp = spreading_search(&g, &limits).map_err(|e| e.to_string())?;
        ensure!(
            sp.verdict == Verdict::Yes && sp.binding_limit.is_none(),
            "{name}: spreading {} ({:?})",
            sp.verdict,
            sp.binding_limit
        );
        if g.degree() <= 7 {
            ensure!(spreading_by_functions(&g), "{name}: function criterion finds a witness");
        }
    }
    ledger.classify("affine-13", &limits);
    Ok(format!("{} groups of degree 5, 7, 11, 13", names.len()))
}

fn greedy_cyclic(_: &mut Ledger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut longest = 0;
    for p in [5usize, 7, 11] {
        let g = catalogue::cyclic(p);
        for _ in 0..20 {
            let f = random_singular(p, &mut rng);
            let a = group_automaton(&g, &f).unwrap();
            let word = match spreading_greedy_reset(&g, &f, 1_000_000).map_err(|e| e.to_string())? {
                GreedyReset::Reset { word, .. } => word,
                GreedyReset::Stuck { set, .. } => return Err(format!("C{p}, f = {:?}: stuck at {set:?}", f.images())),
            };
            let idx: Vec<usize> = word.letters.iter().map(|l| a.letter_index(l).unwrap()).collect();
            ensure!(a.reset_image(&idx).is_some(), "C{p}: word does not reset");
            ensure!(word.length <= (p - 1) * (p - 1), "C{p}: length {} > (p−1)²", word.length);
            longest = longest.max(word.length);
        }
    }
    Ok(format!("60 maps, longest word {longest}"))
}

fn hull_and_core(_: &mut Ledger) -> Outcome {
    let budget = Limits::default().endo_budget;
    let h = hull(&Graph::path(4), budget);
    ensure!(h.undecided.is_empty() && h.graph == Graph::cycle(4).unwrap(), "hull(P4) = {:?}", h.graph);
    let auts = automorphism_count(&h.graph, budget);
    // Independent count over all 24 permutations.
    let mut brute = 0;
    let mut perm = [0usize, 1, 2, 3];
    loop {
        if h.graph.edges().iter().all(|&(u, v)| h.graph.adjacent(perm[u], perm[v])) {
            brute += 1;
        }
        // next permutation
        let Some(i) = (0..3).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..4).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    ensure!(auts == Some(8) && brute == 8, "automorphisms {auts:?}, brute force {brute}");
    let c6 = Graph::cycle(6).unwrap();
    let c = core(&c6, budget);
    ensure!(c.graph == Graph::complete(2), "core(C6) has {} vertices", c.vertices.len());
    ensure!(c6.is_endomorphism(&c.retraction), "retraction is not an endomorphism");
    let t = Transformation::new(c.retraction.clone()).unwrap();
    ensure!(t.has_uniform_kernel() && t.kernel().len() == 2, "kernel {:?}", t.kernel());
    ensure!(6 % c.vertices.len() == 0, "|core| does not divide 6");
    Ok("hull(P4) = C4 with 8 automorphisms; core(C6) = K2, kernel 3+3".into())
}

fn average_identity(_: &mut Ledger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let names = ["cyclic-6", "dihedral-5", "petersen-aut", "grid-3", "wreath-2-3"];
    for name in names {
        let g = by_name(name).unwrap();
        let n = g.degree();
        let el = g.elements(1_000_000).unwrap();
        for _ in 0..100 {
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let b: Vec<u64> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let check = average_product_check(&g, &a, &b, 1_000_000).map_err(|e| e.to_string())?;
            // Σ_g Σ_x a(x)·b(x g⁻¹) = Σ_g Σ_y a(y g)·b(y), enumerated here.
            let total: u64 = (0..el.order).map(|i| (0..n).map(|y| a[el.image_of(i, y)] * b[y]).sum::<u64>()).sum();
            let (sa, sb) = (a.iter().sum::<u64>(), b.iter().sum::<u64>());
            ensure!(total * n as u64 == el.order as u64 * sa * sb, "{name}: Σ = {total}, |G| = {}", el.order);
            ensure!(check.equal, "{name}: library reports {:?} vs {:?}", check.average, check.expected);
            let lhs = check.average.0 as u128 * n as u128;
            ensure!(lhs == (sa * sb) as u128 * check.average.1 as u128, "{name}: library average {:?}", check.average);
        }
    }
    Ok(format!("500 pairs over {}", names.join(", ")))
}

fn properties(ledger: &mut Ledger) -> Outcome {
    // Hierarchy and witness validity over every report produced above.
    let limits = limits_without_ns();
    for name in ["cyclic-8", "dihedral-6", "wreath-2-4", "subsets-5-2", "symmetric-6", "alternating-5"] {
        ledger.classify(name, &limits);
    }
    for (name, g, r) in &ledger.reports {
        ensure!(r.hierarchy_violations().is_empty(), "{name}: {:?}", r.hierarchy_violations());
        r.validate_witnesses(g).map_err(|e| format!("{name}: {e}"))?;
    }
    // Pair collapsing against subset search.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut automata = 0;
    for n in 2..=12 {
        for _ in 0..25 {
            let k = rng.gen_range(1..=3);
            let letters = (0..k)
                .map(|i| {
                    let t = if rng.gen_bool(0.5) {
                        random_singular(n, &mut rng)
                    } else {
                        Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap()
                    };
                    (format!("a{i}"), t)
                })
                .collect();
            let a = Automaton::new(n, letters).unwrap();
            let pair = is_synchronizing_automaton(&a).synchronizing;
            let subset = !matches!(shortest_reset_word(&a, 1 << 22), ShortestReset::None);
            ensure!(pair == subset, "n = {n}: pair automaton {pair}, subset search {subset}");
            automata += 1;
        }
    }
    // Block closure against orbital connectivity and against brute force.
    let mut groups = 0;
    let names: Vec<String> = (3..=8)
        .flat_map(|n| vec![format!("cyclic-{n}"), format!("dihedral-{n}"), format!("symmetric-{n}"), format!("coxeter-{n}")])
        .chain(["alternating-4", "alternating-5", "alternating-6", "affine-5", "affine-7", "semi-affine-7-2"].map(String::from))
        .chain(["semi-affine-7-3", "grid-2", "wreath-2-2", "wreath-2-3", "wreath-3-2", "wreath-2-4", "wreath-4-2"].map(String::from))
        .chain(["subsets-4-2", "coxeter-subsets-4-2", "subsets-5-2", "grid-3", "subsets-6-2", "grid-4"].map(String::from))
        .collect();
    let mut spread_checked = 0;
    for name in &names {
        let g = by_name(name).unwrap();
        let lib = g.is_primitive();
        ensure!(lib == g.is_primitive_by_orbitals(), "{name}: block closure vs orbitals");
        ensure!(lib == primitive_by_orbital_bfs(&g), "{name}: orbital BFS oracle");
        if g.degree() <= 8 {
            ensure!(lib == primitive_by_partitions(&g), "{name}: partition enumeration oracle");
            let sp = spreading_search(&g, &limits).map_err(|e| e.to_string())?;
            ensure!(sp.binding_limit.is_none(), "{name}: spreading search hit {:?}", sp.binding_limit);
            ensure!(
                (sp.verdict == Verdict::Yes) == spreading_by_functions(&g),
                "{name}: spreading {} disagrees with the function criterion",
                sp.verdict
            );
            if let Some(w) = &sp.witness {
                w.validate(&g)?;
            }
            spread_checked += 1;
        }
        groups += 1;
    }
    Ok(format!(
        "{} reports, {automata} automata, {groups} groups for primitivity, {spread_checked} for spreading",
        ledger.reports.len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Černý family shortest resets", 5, cerny_family),
        ("Petersen graph and group", 10, petersen),
        ("S_m on 2-subsets, m = 5..8", 60, symmetric_on_pairs),
        ("S_7 on 3-subsets", 120, symmetric_on_triples),
        ("Rystsov equivalence", 30, rystsov),
        ("rank 2 maps are synchronized", 30, rank_two),
        ("grid group S_3 wr S_2", 10, grid),
        ("prime degree separating and spreading", 60, prime_degree),
        ("spreading greedy within (p−1)²", 20, greedy_cyclic),
        ("hull and core", 5, hull_and_core),
        ("average identity", 30, average_identity),
        ("property suites", 120, properties),
    ];
    let mut ledger = Ledger::default();
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&mut ledger)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => Err(format!("too slow ({msg})")),
            other => other,
        };
        let (tag, msg) = match &result {
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        failed += result.is_err() as usize;
        println!("{tag} criterion {:>2}: {name} ({:.2} s, limit {limit} s): {msg}", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
