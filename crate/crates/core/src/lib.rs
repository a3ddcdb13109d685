//! Gaussian rank of graphs: graph parameters that bound it, positive
//! definite matrix completion deciding MLE existence, infeasibility
//! certificates from orthonormal representations, and randomized rank
//! estimation.

pub mod completion;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod params;
pub mod rank;
pub mod seed;
pub mod sympsd;

pub use error::{Error, Result};
pub use graph::{Graph, GraphSpec, VertexSet};
pub use sympsd::{PsdFactor, SymMatrix, Tolerances};
