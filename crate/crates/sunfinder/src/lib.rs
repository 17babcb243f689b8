//! Sun detection and elimination-ordering machinery for building-free graphs.
//!
//! The core pipeline decides whether a building-free graph contains a sun —
//! a center clique cyclically wrapped by degree-two tips — and produces a
//! verifiable [`SunCertificate`] (or a [`BuildingCertificate`] when the
//! building-free precondition fails). Around it sit the supporting layers:
//!
//! - [`graph`]: compact adjacency-set graphs over `0..n`.
//! - [`ordering`]: LBFS and perfect / simple / strong elimination checking.
//! - [`building`]: polynomial detectors for buildings, gems, bulls, and
//!   near buildings, each returning a self-verifying witness.
//! - [`sun`]: the decision procedure, neighborhood completion, sunflower
//!   reduction, and certificate extraction.
//! - [`bull`]: nose-free elimination schemes for (building, gem)-free graphs.
//! - [`oracle`]: brute-force ground truth and seeded generators for tests.

pub mod building;
pub mod bull;
pub mod graph;
pub mod oracle;
pub mod ordering;
pub mod sun;

pub use building::{
    find_building, find_building_fast, find_bull_with_nose, find_gem, find_near_building,
    BuildingCertificate, CertificateError, GemWitness, NearBuildingWitness, NoseBull,
};
pub use bull::{bull_free_elimination_order, check_lbfs_nose_free, d2_p4_check, SchemeReport};
pub use graph::{Graph, GraphError, VertexSet};
pub use oracle::{
    connected_graphs, generate, is_sun_graph, oracle_find, oracle_has_sun, GenerateError,
    GraphFamily, OracleRefusal, OracleWitness, StructureKind, ORACLE_DEFAULT_BOUND,
};
pub use ordering::{
    check_p_star, is_chordal, is_perfect_elimination, is_simple, is_simplicial,
    is_strong_elimination, is_strongly_chordal, lbfs, lbfs_with_seed, Chordality, OrderingReport,
    PeoViolation, PStarViolation, SeoViolation, StrongChordality, VertexOrder,
};
pub use sun::{
    extract_sun, extract_sun_with, find_sun, find_sun_decision, find_sun_with, in_3_sun,
    n_dominates, scc_completion, sunflower_to_sun, tip_of_sunflower, tip_of_sunflower_with,
    SunCertificate, SunError, SunOptions, SunflowerCertificate, TipSearchState,
};
