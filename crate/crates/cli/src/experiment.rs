//! Random automata: each letter's image of each state is drawn independently
//! and uniformly, from a ChaCha stream seeded by the caller.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use syncgroups_core::transform::{
    greedy_reset_word, is_synchronizing_automaton, shortest_reset_word, Automaton, ShortestReset, Transformation,
};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthStats {
    pub count: usize,
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub histogram: BTreeMap<usize, usize>,
}

impl LengthStats {
    fn of(lengths: &[usize]) -> Option<Self> {
        if lengths.is_empty() {
            return None;
        }
        let mut histogram = BTreeMap::new();
        for &l in lengths {
            *histogram.entry(l).or_insert(0) += 1;
        }
        Some(LengthStats {
            count: lengths.len(),
            min: *lengths.iter().min().unwrap(),
            max: *lengths.iter().max().unwrap(),
            mean: lengths.iter().sum::<usize>() as f64 / lengths.len() as f64,
            histogram,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub synchronizing: usize,
    pub fraction_synchronizing: f64,
    pub shortest: Option<LengthStats>,
    /// Samples whose shortest word was not computed because of the subset cap.
    pub shortest_truncated: usize,
    pub greedy: Option<LengthStats>,
    pub cerny_bound: usize,
    pub exceeding_cerny_bound: usize,
}

pub fn random_automaton(n: usize, k: usize, rng: &mut impl Rng) -> Automaton {
    let letters = (0..k)
        .map(|i| {
            let t = Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("images in range");
            (format!("a{i}"), t)
        })
        .collect();
    Automaton::new(n, letters).expect("letters have matching degrees")
}

pub fn run(n: usize, k: usize, samples: usize, seed: u64, subset_cap: u64) -> CliResult<ExperimentSummary> {
    if n == 0 || k == 0 {
        return Err(CliError::Usage("random-experiment needs n >= 1 and k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut synchronizing, mut truncated) = (0, 0);
    let (mut shortest, mut greedy) = (Vec::new(), Vec::new());
    for _ in 0..samples {
        let a = random_automaton(n, k, &mut rng);
        if !is_synchronizing_automaton(&a).synchronizing {
            continue;
        }
        synchronizing += 1;
        greedy.push(greedy_reset_word(&a).expect("synchronizing").length);
        match shortest_reset_word(&a, subset_cap) {
            ShortestReset::Found { word } => shortest.push(word.length),
            ShortestReset::Truncated { .. } => truncated += 1,
            ShortestReset::None => unreachable!("pair collapse and subset search disagree"),
        }
    }
    let bound = (n - 1) * (n - 1);
    Ok(ExperimentSummary {
        synchronizing,
        fraction_synchronizing: if samples == 0 { 0.0 } else { synchronizing as f64 / samples as f64 },
        exceeding_cerny_bound: shortest.iter().filter(|&&l| l > bound).count(),
        shortest: LengthStats::of(&shortest),
        shortest_truncated: truncated,
        greedy: LengthStats::of(&greedy),
        cerny_bound: bound,
    })
}
