//! Kernelization for token-jumping independent set reconfiguration on
//! planar and K3,r-minor-free graphs, with an exact BFS oracle.

pub mod bitset;
pub mod coloring;
pub mod error;
pub mod format;
pub mod embedding;
pub mod graph;
pub mod harness;
pub mod kernel_general;
pub mod minor;
pub mod planar;
pub mod projection;
pub mod solver;

pub use bitset::BitSet;
pub use error::{EmbeddingError, GenError, GraphError, KernelError, ManifestError, ParseError, ParseErrorKind, SequenceError};
pub use graph::{is_independent, Graph, GraphClass, Instance, Jump, ReconfSequence, RotationSystem, Vertex};
