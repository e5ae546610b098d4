//! Compute engine and content model for a moderated graph-theory learning portal.
//!
//! The crate is split into four areas:
//!
//! * [`graph`] and [`families`]: checked simple graphs and the named graph
//!   families used as portal exhibits (wheels, gears, odd graphs, hypercubes,
//!   the `block_n` and `G_k` quiz families, ...).
//! * [`distance`], [`index`], [`odd`] and [`spanning`]: exact all-pairs
//!   distances, the Wiener index, the Hosoya–Wiener polynomial, closed forms
//!   for the Wiener index of odd graphs and spanning-tree counting.
//! * [`content`]: logical pages, the prerequisite corpus, relevance, search
//!   and the fielded page format.
//! * [`workflow`]: submissions and their moderation state machine, grade
//!   groups, exercise-mix planning and contribution logs.
//!
//! Everything here is pure and synchronous; persistence and HTTP live in the
//! service crate.

pub mod content;
pub mod distance;
pub mod families;
pub mod graph;
pub mod index;
pub mod iso;
pub mod odd;
pub mod spanning;
pub mod workflow;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use distance::{all_pairs_bfs, all_pairs_floyd_warshall, DistanceMatrix};
pub use families::{
    block_family, extended_block_family, g_family, generate, Family, FamilySpec,
};
pub use graph::{Graph, GraphError};
pub use index::{hosoya_wiener, weighted_wiener, wiener, HosoyaWiener, IndexError};
pub use iso::are_isomorphic;
pub use odd::{odd_wiener_deutsch, odd_wiener_mathar, verify_a136328, A136328};
pub use spanning::{spanning_tree_census, spanning_tree_count, CensusClass, CensusOptions};
