use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use syncgroups_core::classify::{Limits, DEFAULT_MAX_TWO_SUBSET_ORBITS};
use syncgroups_core::graph::{DEFAULT_COLOUR_BUDGET, DEFAULT_ENDO_BUDGET};
use syncgroups_core::perm::DEFAULT_ELEMENT_CAP;
use syncgroups_core::reset::BoundLimits;
use syncgroups_core::transform::DEFAULT_SUBSET_CAP;

#[derive(Debug, Parser)]
#[command(name = "syncgroups", version, about = "Synchronization properties of permutation groups and automata")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Search limits. Defaults can be overridden through `SYNCGROUPS_*` variables.
#[derive(Clone, Debug, Args)]
pub struct Budgets {
    /// Largest group order enumerated element by element.
    #[arg(long, env = "SYNCGROUPS_ELEMENT_CAP", default_value_t = DEFAULT_ELEMENT_CAP)]
    pub element_cap: usize,
    /// Largest number of subsets visited by shortest-reset-word search.
    #[arg(long, env = "SYNCGROUPS_SUBSET_CAP", default_value_t = DEFAULT_SUBSET_CAP)]
    pub subset_cap: u64,
    /// Search nodes per colourability decision.
    #[arg(long, env = "SYNCGROUPS_COLOUR_BUDGET", default_value_t = DEFAULT_COLOUR_BUDGET)]
    pub colour_budget: u64,
    /// Search nodes per endomorphism search.
    #[arg(long, env = "SYNCGROUPS_ENDO_BUDGET", default_value_t = DEFAULT_ENDO_BUDGET)]
    pub endo_budget: u64,
    /// Search nodes per graph and rank when computing NS(G).
    #[arg(long, env = "SYNCGROUPS_NS_BUDGET", default_value_t = Limits::default().ns_budget)]
    pub ns_budget: u64,
    #[arg(long, env = "SYNCGROUPS_MAX_TWO_SUBSET_ORBITS", default_value_t = DEFAULT_MAX_TWO_SUBSET_ORBITS)]
    pub max_two_subset_orbits: usize,
    #[arg(long, env = "SYNCGROUPS_SPREADING_MAX_SET_SIZE", default_value_t = Limits::default().spreading_max_set_size)]
    pub spreading_max_set_size: usize,
    #[arg(long, env = "SYNCGROUPS_SPREADING_MAX_SETS", default_value_t = Limits::default().spreading_max_sets)]
    pub spreading_max_sets: usize,
    #[arg(long, env = "SYNCGROUPS_SPREADING_NODE_BUDGET", default_value_t = Limits::default().spreading_node_budget)]
    pub spreading_node_budget: u64,
    /// Largest multiplicity in a spreading witness; unset searches exhaustively.
    #[arg(long, env = "SYNCGROUPS_MULTISET_CAP")]
    pub multiset_cap: Option<u64>,
}

impl Default for Budgets {
    fn default() -> Self {
        let l = Limits::default();
        Budgets {
            element_cap: l.element_cap,
            subset_cap: DEFAULT_SUBSET_CAP,
            colour_budget: l.colour_budget,
            endo_budget: l.endo_budget,
            ns_budget: l.ns_budget,
            max_two_subset_orbits: l.max_two_subset_orbits,
            spreading_max_set_size: l.spreading_max_set_size,
            spreading_max_sets: l.spreading_max_sets,
            spreading_node_budget: l.spreading_node_budget,
            multiset_cap: l.multiset_cap,
        }
    }
}

impl Budgets {
    pub fn limits(&self) -> Limits {
        Limits {
            element_cap: self.element_cap,
            max_two_subset_orbits: self.max_two_subset_orbits,
            colour_budget: self.colour_budget,
            endo_budget: self.endo_budget,
            ns_budget: self.ns_budget,
            spreading_max_set_size: self.spreading_max_set_size,
            spreading_max_sets: self.spreading_max_sets,
            spreading_node_budget: self.spreading_node_budget,
            multiset_cap: self.multiset_cap,
            ..Limits::default()
        }
    }

    pub fn bound_limits(&self) -> BoundLimits {
        BoundLimits { element_cap: self.element_cap, subset_cap: self.subset_cap }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Transitive,
    Primitive,
    Synchronizing,
    Separating,
    PartitionSeparating,
    Spreading,
    AlmostSynchronizingProbe,
    StronglySeparating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResetMethod {
    Shortest,
    Greedy,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphOp {
    Omega,
    Chi,
    Alpha,
    Core,
    Hull,
    Aut,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a group given as a JSON file or a catalogue name (e.g. petersen-aut).
    ClassifyGroup {
        group: String,
        /// Property whose verdict decides the exit status.
        #[arg(long, value_enum, default_value_t = Property::Synchronizing)]
        property: Property,
        /// Also decide strong separation (slow beyond small degrees)
        #[arg(long)]
        strongly_separating: bool,
        /// Skip the computation of NS(G).
        #[arg(long)]
        no_ns: bool,
        /// Record timings (the report is then no longer reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Synchronization status and reset words of an automaton file.
    ClassifyAutomaton {
        file: PathBuf,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// A reset word for an automaton file.
    ResetWord {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ResetMethod::Shortest)]
        method: ResetMethod,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Reset-length bounds for a transitive group, optionally with a singular map.
    Bounds {
        group: String,
        /// Image list of a singular map, e.g. "[0,0,2,3,4]".
        #[arg(long)]
        map: Option<String>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// The n-state Černý automaton and its shortest reset word.
    Cerny {
        n: usize,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Graph invariants of a named family (with parameters) or an edge-list file.
    Graph {
        /// Family name (petersen, cycle, johnson, ...) or edge-list file
        source: String,
        /// Family parameters, e.g. `johnson 6 3 1`
        params: Vec<usize>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [GraphOp::Omega, GraphOp::Chi, GraphOp::Alpha])]
        ops: Vec<GraphOp>,
        /// Use the complement graph
        #[arg(long)]
        complement: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Ranks of maps not synchronized by the group.
    NsRanks {
        group: String,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Recompute every catalogued example and compare with the expected values.
    Fixtures {
        /// Only run fixtures whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
    /// Sample random automata and report how many synchronize.
    RandomExperiment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        budgets: Budgets,
    },
}

/// Rewrites `key=value` operands of `random-experiment` as `--key=value`.
pub fn normalize_args<I: IntoIterator<Item = String>>(args: I) -> Vec<String> {
    let args: Vec<String> = args.into_iter().collect();
    let experiment = args.iter().any(|a| a == "random-experiment");
    args.into_iter()
        .map(|a| {
            let keyed = a.split_once('=').is_some_and(|(k, _)| !k.is_empty() && k.chars().all(|c| c.is_ascii_lowercase() || c == '-'));
            if experiment && keyed && !a.starts_with('-') {
                format!("--{a}")
            } else {
                a
            }
        })
        .collect()
}
