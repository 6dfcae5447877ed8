//! Finite posets as finite topological spaces: non-Hausdorff homotopy
//! colimits, beat/weak/γ-point reductions, order complexes and face posets,
//! integral homology, and executable checkers for the weak-equivalence
//! results on homotopy colimits over posets.

pub mod diagram;
pub mod error;
pub mod homology;
pub mod poset;
pub mod simplicial;
pub mod reduction;
pub mod io;
pub mod models;
pub mod verify;

pub use diagram::{ComplexDiagram, Diagram, DiagramMorphism, PosetDiagram};
pub use error::{Error, Result};
pub use homology::HomologyProfile;
pub use poset::{FinitePoset, PosetMap};
pub use reduction::{Budget, RemovalSequence, Triviality};
pub use simplicial::{SimplicialComplex, SimplicialMap};
pub use verify::{CheckInput, CheckReport, TheoremId};
