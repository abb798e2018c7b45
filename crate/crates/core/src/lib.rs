//! Abelian sandpile model and graphical parking functions.
//!
//! Recurrent configurations of the sandpile model on a rooted multigraph `G`
//! are in bijection with `G`-parking functions through `c ↦ deg − c`. This
//! crate implements both sides of that duality, the strongly recurrent
//! configurations and prime parking functions that correspond under it, the
//! classical parking process, several symmetric graph families with their
//! closed-form counts, and brute-force enumerators that check those counts.

pub mod classical;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod io;
pub mod parking;
pub mod sandpile;

pub use parking::{OrderedPartition, ParkingCandidate, ParkingError};
pub use graph::{GraphError, RootedMultigraph, VertexId, VertexSet};
pub use sandpile::{Configuration, Quantifier, SandpileError};
