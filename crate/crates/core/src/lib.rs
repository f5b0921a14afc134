//! Euclidean minimum spanning trees and the max MST-ratio of point sets.
//!
//! For a point set `P` and a split `P = R ∪ B` into two non-empty parts, the
//! MST-ratio is `(w(R) + w(B)) / w(P)` where `w` is the length of a Euclidean
//! minimum spanning tree. The crate provides:
//!
//! * [`geometry`]: validated point sets, distances, spread, and the text point format.
//! * [`emst`]: dense Prim spanning trees in any dimension.
//! * [`disks`]: nearest-neighbour disk systems and disjoint-disk pairs.
//! * [`partition`]: ratio evaluation, the constructive splitting strategies,
//!   and an exhaustive oracle for small sets.
//! * [`constructions`]: the named small configurations plus random and grid generators.
//! * [`experiments`]: seeded Monte-Carlo harnesses with CSV/JSON output.

pub mod constructions;
pub mod disks;
pub mod emst;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod partition;
pub mod rng;

pub use constructions::{generate, GeneratorKind, GeneratorSpec};
pub use disks::{
    count_disjoint_pairs, disk_system, find_disjoint_pair, find_disjoint_pair_prefix, DisjointPair,
    DiskSystem,
};
pub use emst::{emst, emst_weight, emst_weight_subset, SpanningTree};
pub use error::{Error, Result};
pub use geometry::{diameter_and_spread, distance, validate, Edge, Point, PointSet};
pub use partition::{
    best_of_all_strategies, dense_partition, disjoint_disk_partition, edge_deletion_partition,
    exact_gamma, random_halves_partition, ratio, Bipartition, Certificate, RatioReport, Strategy,
    StrategyChoice,
};

/// Points closer than this (absolute) are treated as duplicates.
pub const TOL_DUP: f64 = 1e-12;

/// Relative tolerance for comparisons of lengths and ratios.
pub const TOL_EQ: f64 = 1e-9;
