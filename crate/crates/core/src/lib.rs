//! Community detection in sparse graphs with the non-backtracking operator.
//!
//! The crate covers graph generation and I/O, matrix-free operators on
//! vertex and directed-edge space, dense and iterative eigensolvers,
//! spectral clustering with classical baselines, and belief propagation
//! for the stochastic block model.

pub mod bp;
pub mod cluster;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod operators;
pub mod rng;

pub use eigen::{topk_eigs, EigenResult, Matrix, SolverOpts, Which};
pub use error::{Error, Result};
pub use graph::{DegreeSeqParams, Graph, LabeledGraph, SbmParams};
pub use operators::{LinearOperator, OperatorKind};
