//! Weak saturation laboratory.
//!
//! Builds the extremal graphs for weak saturation with complete bipartite
//! and multipartite patterns, runs the `H`-bootstrap process on them with
//! replayable traces, certifies lower bounds by exact rank computations, and
//! cross-checks small cases by exhaustive search.

pub mod algebra;
pub mod bootstrap;
pub mod cli;
pub mod construct;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod pattern;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Side, SideLabeling};
pub use pattern::{CopyWitness, Pattern};

/// The moment-curve family over `F_p`.
pub type FpFamily = algebra::GeneralPositionFamily<algebra::PrimeField>;
/// The moment-curve family over the rationals.
pub type RationalFamily = algebra::GeneralPositionFamily<algebra::Rationals>;
/// Edge vectors over `F_p`.
pub type FpEdgeVectors = algebra::EdgeVectorAssignment<algebra::PrimeField>;
/// Incremental row-echelon basis over `F_p`.
pub type FpBasis = algebra::EchelonBasis<algebra::PrimeField>;
