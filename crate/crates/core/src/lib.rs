//! Exact λ-choosability and λ-paintability for small graphs.
//!
//! A λ-list assignment splits its palette into groups, one per element `k_i`
//! of the multiset λ, with every list holding at least `k_i` colours of group
//! `i`. This crate builds explicit bad assignments, decides λ-choosability by
//! complete adversarial search, solves the phase-structured painting game
//! exactly, and scans complete multipartite graphs for the smallest
//! counterexamples.

pub mod certificate;
pub mod choosability;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod lists;
pub mod multiset;
pub mod painting;
pub mod play;
pub mod scan;

pub use certificate::{verify_certificate, Certificate, GameKind};
pub use choosability::{find_bad_assignment, verify_bad_assignment, Budget, ChoosabilityOutcome};
pub use error::{Error, Result};
pub use graph::{Graph, MultipartiteSpec, VertexSet};
pub use lists::{
    find_list_coloring, merge_groups, ColorGroup, GroupedListAssignment, ProperColoring,
};
pub use multiset::LambdaMultiset;
pub use painting::{
    compose_painter, decide_f_paintable, decide_paintable, decide_paintable_all_orders, PaintGame,
    PaintGameState, PaintSolver, Player,
};
pub use play::{play_session, Transcript};
pub use scan::{phi_scan, psi_scan, ScanReport};
