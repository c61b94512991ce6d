pub mod alcove;
pub mod bijections;
pub mod combinatorics;
pub mod conjecture;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod sorted;
pub mod verify;

/// Version tag written into every JSON document this crate produces.
pub const SCHEMA_VERSION: u32 = 1;

pub use alcove::{Alcove, HypersimplexSpec};
pub use combinatorics::{Permutation, WeakComposition, Word};
pub use conjecture::{check_conjecture, ConjectureOptions, ConjectureReport, Verdict};
pub use enumerate::{enumerate_dilated_alcoves, Strategy};
pub use error::{Error, Result};
pub use graph::{EdgeColor, HyperplaneColor, LabeledGraph, VertexLabel};
pub use sorted::LatticePoint;
