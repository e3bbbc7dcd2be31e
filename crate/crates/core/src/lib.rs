//! Subconstituent algebras `T(x)` and quantum adjacency algebras `Q(x)` of
//! finite connected graphs, computed as explicit matrix algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: graphs, graph6, the Hamming and bipartite dual polar
//!   families, and BFS shells around a base vertex.
//! * [`linalg`]: exact rational linear algebra (canonical echelon
//!   subspaces, algebra closure, intersections).
//! * [`algebra`]: `A`, `E_i*`, `L/F/R`, `T`, `Q` and their gradings.
//! * [`modules`]: numeric decomposition of the standard module into
//!   irreducible `T`-modules, thin parameters, and (quasi-)isomorphism
//!   classification.
//! * [`analysis`]: the end-to-end pipeline, the serializable report and the
//!   invariant suite.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod modules;

pub use error::{Error, Result};
pub use graph::{distance_partition, DistancePartition, Graph};
pub use linalg::{MatrixAlgebra, Rational, RationalMatrix, Subspace};
