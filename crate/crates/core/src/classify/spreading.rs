//! Search for non-spreading witnesses `(A, B)` with `|A * Bg|` constant.
//!
//! For each orbit representative `B`, the multisets with constant `|A * Bg|`
//! form the nonnegative integer points of a rational null space; the null space
//! is computed exactly, then its integer points with `|A| = d` are enumerated
//! by a bounded depth-first search over the free coordinates.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::witness::{multiset_is_trivial, SpreadingWitness};
use super::{Limits, Verdict};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::util::divisors;

#[derive(Clone, Debug, Serialize)]
pub struct SpreadingResult {
    pub verdict: Verdict,
    pub witness: Option<SpreadingWitness>,
    pub binding_limit: Option<String>,
    /// Number of set orbits whose null space was examined.
    pub orbits_examined: usize,
}

/// Incrementally maintained reduced row echelon form.
struct Rref {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Rref {
    fn new(cols: usize) -> Self {
        Rref { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it raised the rank.
    fn push(&mut self, mut row: Vec<BigRational>) -> bool {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.cols {
                    if !r[j].is_zero() {
                        row[j] -= &f * &r[j];
                    }
                }
            }
        }
        let Some(p) = (0..self.cols).find(|&j| !row[j].is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        r[j] -= &f * &row[j];
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, row);
        self.pivots.insert(at, p);
        true
    }
}

/// `L·x_pivot + Σ coeffs·x_free = rhs·d` with integer coefficients.
struct IntRow {
    lead: i128,
    coeffs: Vec<i128>,
    rhs: i128,
    pivot: usize,
}

fn to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

/// Converts the echelon form (last column is the right-hand side for `d = 1`)
/// into integer rows over the free variables.
fn integer_rows(rref: &Rref, n: usize, free: &[usize]) -> Option<Vec<IntRow>> {
    let mut out = Vec::new();
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        let mut l = BigInt::one();
        for x in row {
            l = l.lcm(x.denom());
        }
        let scale = |x: &BigRational| to_i128(&(x.numer() * (&l / x.denom())));
        out.push(IntRow {
            lead: to_i128(&l)?,
            coeffs: free.iter().map(|&f| scale(&row[f])).collect::<Option<_>>()?,
            rhs: scale(&row[n])?,
            pivot: p,
        });
    }
    Some(out)
}

struct Dfs<'a> {
    rows: &'a [IntRow],
    free: &'a [usize],
    n: usize,
    d: i128,
    upper: i128,
    /// `lo[i][k]`, `hi[i][k]`: range of `Σ_{j ≥ k} coeffs[i][j]·x_j`.
    lo: Vec<Vec<i128>>,
    hi: Vec<Vec<i128>>,
    partial: Vec<i128>,
    values: Vec<i128>,
    nodes: u64,
    budget: u64,
    b: &'a BitSet,
}

enum DfsOutcome {
    Found(Vec<u64>),
    Exhausted,
    Budget,
}

impl Dfs<'_> {
    fn feasible(&self, k: usize) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            let base = r.rhs * self.d - self.partial[i];
            let (min, max) = (base - self.hi[i][k], base - self.lo[i][k]);
            max >= 0 && min <= r.lead * self.upper
        })
    }

    fn leaf(&self) -> Option<Vec<u64>> {
        let mut v = vec![0u64; self.n];
        for (&f, &x) in self.free.iter().zip(&self.values) {
            v[f] = x as u64;
        }
        for (i, r) in self.rows.iter().enumerate() {
            let num = r.rhs * self.d - self.partial[i];
            if num % r.lead != 0 {
                return None;
            }
            let x = num / r.lead;
            if x < 0 || x > self.upper {
                return None;
            }
            v[r.pivot] = x as u64;
        }
        let lambda: u64 = self.b.iter().map(|x| v[x]).sum();
        (!multiset_is_trivial(&v) && lambda > 0).then_some(v)
    }

    fn run(&mut self, k: usize) -> Option<Vec<u64>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if k == self.free.len() {
            return self.leaf();
        }
        for x in 0..=self.upper {
            self.values.push(x);
            for (i, r) in self.rows.iter().enumerate() {
                self.partial[i] += r.coeffs[k] * x;
            }
            if self.feasible(k + 1) {
                if let Some(v) = self.run(k + 1) {
                    return Some(v);
                }
            }
            for (i, r) in self.rows.iter().enumerate() {
                self.partial[i] -= r.coeffs[k] * x;
            }
            self.values.pop();
            if self.nodes > self.budget {
                return None;
            }
        }
        None
    }

    fn search(mut self) -> (DfsOutcome, u64) {
        if !self.feasible(0) {
            return (DfsOutcome::Exhausted, 0);
        }
        let outcome = match self.run(0) {
            Some(v) => DfsOutcome::Found(v),
            None if self.nodes > self.budget => DfsOutcome::Budget,
            None => DfsOutcome::Exhausted,
        };
        (outcome, self.nodes)
    }
}

fn rational_row(n: usize, image: &BitSet, base: &BitSet) -> Vec<BigRational> {
    (0..=n)
        .map(|x| {
            let v = (x < n && image.contains(x)) as i64 - (x < n && base.contains(x)) as i64;
            BigRational::from_integer(v.into())
        })
        .collect()
}

enum SetOutcome {
    Witness(SpreadingWitness),
    None,
    Limit(String),
}

/// Searches multisets `A` with entries at most `cap` and `|A|` in `sizes`.
fn examine(
    n: usize,
    b: &BitSet,
    orbit: &[BitSet],
    cap: u64,
    sizes: &[usize],
    limits: &Limits,
    nodes: &mut u64,
) -> SetOutcome {
    let mut rref = Rref::new(n + 1);
    for image in &orbit[1..] {
        rref.push(rational_row(n, image, b));
        if rref.rank() == n - 1 {
            // Only constant vectors remain.
            return SetOutcome::None;
        }
    }
    rref.push(vec![BigRational::one(); n + 1]);
    let pivots: HashSet<usize> = rref.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|x| !pivots.contains(x)).collect();
    let Some(rows) = integer_rows(&rref, n, &free) else {
        return SetOutcome::Limit("null-space coefficients exceed 128 bits".into());
    };
    let cap = cap as i128;
    // Within each |A|, sets (multiplicity 1) are tried before general multisets.
    let passes = sizes.iter().flat_map(|&d| {
        let d = d as i128;
        let full = cap.min(d);
        std::iter::once((d, 1)).chain((full > 1).then_some((d, full)))
    });
    for (d, upper) in passes {
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for r in &rows {
            let mut l = vec![0i128; free.len() + 1];
            let mut h = vec![0i128; free.len() + 1];
            for k in (0..free.len()).rev() {
                l[k] = l[k + 1] + r.coeffs[k].min(0) * upper;
                h[k] = h[k + 1] + r.coeffs[k].max(0) * upper;
            }
            lo.push(l);
            hi.push(h);
        }
        let dfs = Dfs {
            rows: &rows,
            free: &free,
            n,
            d,
            upper,
            lo,
            hi,
            partial: vec![0; rows.len()],
            values: Vec::new(),
            nodes: 0,
            budget: limits.spreading_node_budget.saturating_sub(*nodes),
            b,
        };
        let (outcome, used) = dfs.search();
        *nodes += used;
        match outcome {
            DfsOutcome::Found(a) => {
                let lambda = b.iter().map(|x| a[x]).sum();
                return SetOutcome::Witness(SpreadingWitness { a, b: b.to_vec(), lambda });
            }
            DfsOutcome::Exhausted => {}
            DfsOutcome::Budget => {
                return SetOutcome::Limit(format!("spreading search budget {} nodes", limits.spreading_node_budget));
            }
        }
    }
    SetOutcome::None
}

/// Exhaustive search over set orbits with `2 ≤ |B| ≤ n/2` (complements give
/// the rest) and multisets with `|A|` a divisor of `n`.
pub fn spreading_search(g: &PermGroup, limits: &Limits) -> Result<SpreadingResult> {
    let n = g.degree();
    let cap = limits.multiset_cap.unwrap_or(n as u64);
    let sizes: Vec<usize> = divisors(n).into_iter().filter(|&d| d >= 2).collect();
    let mut result = set_search(g, limits, cap, &|_| sizes.clone())?;
    if result.binding_limit.is_none() && cap < n as u64 {
        result.verdict = Verdict::Unknown;
        result.binding_limit = Some(format!("multiplicity cap {cap}"));
    }
    Ok(result)
}

/// Sets `A`, `B` with `|Ag ∩ B|` constant over `G`, so `|A|·|B| = λ·n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongSeparationWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub lambda: u64,
}

impl StrongSeparationWitness {
    pub fn validate(&self, g: &PermGroup) -> Result<(), String> {
        let n = g.degree();
        let (a, b) = (BitSet::from_points(n, self.a.iter().copied()), BitSet::from_points(n, self.b.iter().copied()));
        let nontrivial = |s: &BitSet| (2..=n - 2).contains(&s.count());
        if !nontrivial(&a) || !nontrivial(&b) || (a.count() * b.count()) as u64 != self.lambda * n as u64 {
            return Err("need nontrivial sets with |A|·|B| = λ·n".into());
        }
        match g.set_orbit(&b).iter().find(|bg| bg.intersection_count(&a) as u64 != self.lambda) {
            Some(bg) => Err(format!("|A ∩ Bg| ≠ λ for Bg = {:?}", bg.to_vec())),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongSeparationResult {
    pub verdict: Verdict,
    pub witness: Option<StrongSeparationWitness>,
    pub binding_limit: Option<String>,
}

/// Optional strengthening of separation: no nontrivial sets with `|Ag ∩ B|`
/// constant. Same search as for spreading, with 0/1 multiplicities.
pub fn strongly_separating_search(g: &PermGroup, limits: &Limits) -> Result<StrongSeparationResult> {
    let n = g.degree();
    let r = set_search(g, limits, 1, &|b| (2..=n.saturating_sub(2)).filter(|d| d * b % n == 0).collect())?;
    let witness = r.witness.map(|w| StrongSeparationWitness {
        a: (0..n).filter(|&x| w.a[x] == 1).collect(),
        b: w.b,
        lambda: w.lambda,
    });
    if let Some(w) = &witness {
        w.validate(g).expect("0/1 null-space solution separates strongly");
    }
    Ok(StrongSeparationResult { verdict: r.verdict, witness, binding_limit: r.binding_limit })
}

fn set_search(
    g: &PermGroup,
    limits: &Limits,
    cap: u64,
    sizes_for: &dyn Fn(usize) -> Vec<usize>,
) -> Result<SpreadingResult> {
    g.require_transitive()?;
    let n = g.degree();
    let max_size = n / 2;
    let reach = max_size.min(limits.spreading_max_set_size);
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut reps = vec![BitSet::from_points(n, [0])];
    let mut examined = 0;
    let mut nodes = 0u64;
    let mut limit: Option<String> = None;
    'sizes: for _size in 2..=reach {
        let mut next = Vec::new();
        for r in &reps {
            for x in 0..n {
                if r.contains(x) {
                    continue;
                }
                let mut c = r.clone();
                c.insert(x);
                if seen.contains(&c) {
                    continue;
                }
                let orbit = g.set_orbit(&c);
                seen.extend(orbit.iter().cloned());
                if seen.len() > limits.spreading_max_sets {
                    limit = Some(format!("set enumeration cap {}", limits.spreading_max_sets));
                    break 'sizes;
                }
                examined += 1;
                match examine(n, &c, &orbit, cap, &sizes_for(c.count()), limits, &mut nodes) {
                    SetOutcome::Witness(w) => {
                        if cap > 1 {
                            w.validate(g).expect("null-space solution is a spreading witness");
                        }
                        return Ok(SpreadingResult {
                            verdict: Verdict::No,
                            witness: Some(w),
                            binding_limit: None,
                            orbits_examined: examined,
                        });
                    }
                    SetOutcome::None => {}
                    SetOutcome::Limit(l) => limit = limit.or(Some(l)),
                }
                next.push(c);
            }
        }
        reps = next;
    }
    if limit.is_none() && reach < max_size {
        limit = Some(format!("set size cap {}", limits.spreading_max_set_size));
    }
    Ok(SpreadingResult {
        verdict: if limit.is_some() { Verdict::Unknown } else { Verdict::Yes },
        witness: None,
        binding_limit: limit,
        orbits_examined: examined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AverageCheck {
    /// `(1/|G|) Σ_g |A * Bg|` as a reduced fraction `(numerator, denominator)`.
    pub average: (u64, u64),
    /// `|A|·|B| / n`.
    pub expected: (u64, u64),
    pub equal: bool,
    pub order: usize,
}

/// Averages `|A * Bg|` over an explicit enumeration of a transitive group.
pub fn average_product_check(g: &PermGroup, a: &[u64], b: &[u64], cap: usize) -> Result<AverageCheck> {
    g.require_transitive()?;
    let n = g.degree();
    if a.len() != n || b.len() != n {
        return Err(Error::DegreeMismatch { left: n, right: if a.len() != n { a.len() } else { b.len() } });
    }
    let elements = g.elements(cap)?;
    let mut total: u128 = 0;
    for i in 0..elements.order {
        // |A * Bg| = Σ_j B(j)·A(jg).
        total += (0..n).map(|j| b[j] as u128 * a[elements.image_of(i, j)] as u128).sum::<u128>();
    }
    let frac = |num: u128, den: u128| {
        let r = num_rational::Ratio::new(num, den);
        (*r.numer() as u64, *r.denom() as u64)
    };
    let average = frac(total, elements.order as u128);
    let sa: u128 = a.iter().map(|&x| x as u128).sum();
    let sb: u128 = b.iter().map(|&x| x as u128).sum();
    let expected = frac(sa * sb, n as u128);
    Ok(AverageCheck { average, expected, equal: average == expected, order: elements.order })
}
