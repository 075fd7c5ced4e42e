//! Exact combinatorics of tiered graphs and trees.
//!
//! The crate implements, with arbitrary-precision integer arithmetic
//! throughout:
//!
//! - tiered graphs, compatibility graphs, spanning-tree enumeration, the
//!   Tutte polynomial via edge activities, and κ-inversion statistics;
//! - the abelian sandpile model with a sink: toppling, stabilization,
//!   recurrent and G-parking (superstable) configurations, classical parking
//!   functions and the reversed-sum enumerator;
//! - labelled parallelogram polyominoes, their bounce paths, and the
//!   bijection α between LPP(U) and the G-parking configurations of the
//!   complete tiered graph G_U;
//! - the graded algebras attached to a graph (monomial ideal, power ideal,
//!   the spanning-tree-counting algebra 𝒞_G and the space 𝒮_G) with exact
//!   rank computations;
//! - duality of tiered graphs and the Whitney operations (identification,
//!   cleaving, twisting).
//!
//! Everything is desk-scale by design: enumerations are guarded by explicit
//! caps and every identity is checkable by brute force in the test suite.

pub mod algebra;
pub mod bijection;
pub mod duality;
pub mod exact;
pub mod graph;
pub mod inversions;
pub mod poly;
pub mod polyomino;
pub mod sandpile;
pub mod tutte;
pub mod whitney;

pub use graph::{complete_tiered_graph, GraphError, SimpleGraph, TieredGraph};
pub use poly::{TuttePolynomial, UniPoly};
