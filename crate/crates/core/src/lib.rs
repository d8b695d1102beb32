//! Degree-preserving randomization of hypergraphs.
//!
//! Two Markov chains are provided: Hypercurveball trades, which repartition
//! the incidence multisets of two nodes, and hyperedge shuffles, which
//! repartition the contents of two hyperedges. Both preserve every node and
//! hyperedge degree. The [`chainlab`] module builds exact transition
//! matrices on small spaces to check which chains sample uniformly, and
//! [`mixbench`] measures how fast they mix on larger inputs.

pub mod chain;
pub mod chainlab;
pub mod datagen;
pub mod error;
pub mod hypergraph;
pub mod mixbench;
pub mod multiset;
pub mod scalar;
pub mod shuffles;
pub mod stats;
pub mod trades;

pub use chain::{derive_seed, rng_from_seed, run_chain, Chain, Method, RngStream};
pub use error::{Error, Result};
pub use hypergraph::{
    canonicalize, classify_edges, degrees, in_space, stub_count, CanonicalState, DegreeSequence, EdgeLabel,
    EdgeTypeReport, Hypergraph, NodeId, SpaceSpec,
};
pub use multiset::Multiset;
pub use scalar::{Probability, Rational, Real};
pub use stats::{degree_stats, DegreeStats, SideStats};
pub use trades::{run_hypercurveball, TradeOutcome};
pub use shuffles::run_shuffle;

pub use chainlab::{
    analyze, bias_search, enumerate_space, stationary, sweep, transition_matrix, uniformity_verdict, Caps,
    SearchBounds, StateSpace, TransitionMatrix, UniformityVerdict, VerdictStatus,
};

pub type DegreeStatsF64 = DegreeStats<f64>;
pub type FloatTransitionMatrix = TransitionMatrix<f64>;
pub type ExactTransitionMatrix = TransitionMatrix<Rational>;
