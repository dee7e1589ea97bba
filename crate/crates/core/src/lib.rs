//! Divisible design graphs with parameters `(4n, n+2, n-2, 2, 4, n)` and
//! `(4n, 3n-2, 3n-6, 2n-2, 4, n)`.
//!
//! The crate bundles a dense graph type with a graph6 codec and canonical
//! labeling, exact parameter arithmetic, verification and structural
//! classification, the known constructions and switchings, and an
//! isomorph-free exhaustive search for Deza graphs on up to 32 vertices.

pub mod canon;
pub mod classify;
pub mod constructions;
pub mod corpus;
pub mod crossval;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod gstar;
pub mod params;
pub mod partition;
pub mod quotient;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use partition::{PermutationMap, VertexPartition};
