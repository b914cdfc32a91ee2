//! Exact computation with binomial ideals attached to finite simple graphs.
//!
//! For a graph `G` on `[n]` and the polynomial ring `S = K[x_1..x_n, y_1..y_n]`,
//! four ideals are supported, one generator per edge `{i,j}`:
//!
//! * binomial edge ideal      `J_G = (x_i y_j - x_j y_i)`
//! * Lovász–Saks–Schrijver    `L_G = (x_i x_j + y_i y_j)`
//! * parity binomial edge     `I_G = (x_i x_j - y_i y_j)`
//! * permanental edge ideal   `Π_G = (x_i y_j + x_j y_i)`
//!
//! The crate computes combinatorial minimal-prime data and ideal heights,
//! classifies complete / almost complete intersections, reports
//! theorem-gated homological invariants (projective dimension, depth,
//! Cohen-Macaulayness, Rees algebra flags), produces explicit first
//! syzygies and symmetric-algebra presentations for trees and odd
//! unicyclic graphs, and cross-checks everything against an independent
//! graded rank oracle over prime fields.

pub mod classify;
pub mod error;
pub mod graph;
pub mod ideals;
pub mod invariants;
pub mod oracle;
pub mod poly;
pub mod primes;
pub mod syzygy;

pub use classify::{classify, ClassificationResult, Status};
pub use error::Error;
pub use graph::{Claw, ComponentProfile, Graph, GraphShape, PatternGraph, ShapeTag};
pub use ideals::{colon_generators, ideal_generators, IdealFamily};
pub use invariants::{betti2, homological_report, linear_type_report, InvariantReport};
pub use poly::{FieldSpec, Monomial, Polynomial, RingMap, Var};
pub use primes::{ideal_height, lss_prime, minimal_primes, parity_primes, PrimeComponent};
pub use syzygy::{first_syzygy, sym_ideal, verify_syzygies, SyzygyGenerator};

/// Enumeration guard override shared by `graph::cut_sets` and
/// `oracle::corpus_scan`. Returns the value of `GRAPH_IDEAL_MAX_N` when
/// set and parseable, otherwise `default`.
pub(crate) fn max_n_guard(default: u32) -> u32 {
    std::env::var("GRAPH_IDEAL_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}
