//! Classification toolkit for the graph C*-algebras of weighted lens-type
//! quotients of cyclic group actions.
//!
//! The crate builds the relevant directed multigraphs (a complete "upper
//! triangular" base graph, its skew product by a finite cyclic group, and the
//! modified quotient graph), counts admissible paths both by brute force and
//! by closed-form expressions, decides poset-constrained unimodular
//! equivalence of the associated integer matrices, and evaluates the
//! number-theoretic invariants that label isomorphism classes.
//!
//! Everything is exact integer arithmetic and every iteration order is
//! deterministic, so all emitters (JSON, DOT, CSV) are byte-stable for a
//! fixed input.

pub mod classify;
pub mod formulas;
pub mod graph;
pub mod lens;
pub mod matrix;
pub mod numtheory;
pub mod poset;
pub mod slp;
pub mod sweeps;

pub use graph::{GammaSet, MultiGraph, VertexId};
pub use lens::{LensParams, ModifiedLensGraph, SkewVertex};
pub use matrix::{IntMatrix, ResidueMask};
pub use poset::Poset;
