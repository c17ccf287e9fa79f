//! Degree-sequence realization by multigraphs with few parallel edges.
//!
//! Given a degree sequence, decide whether it has a multigraph realization
//! whose largest edge multiplicity (`MaxMult`) or number of excess edge
//! copies (`TotMult`) stays below a bound, compute the optimal values, and
//! build witnesses. Each problem also has a bipartite version, either for a
//! fixed split `(a, b)` of the sequence or minimized over all balanced splits.

pub mod checkers;
pub mod construct;
pub mod error;
pub mod families;
pub mod optimize;
pub mod oracle;
pub mod partitions;
pub mod sequence;

pub use checkers::CheckVerdict;
pub use construct::{BipartiteMultigraph, Multigraph};
pub use error::{Error, Result};
pub use optimize::{OptimalValue, SearchOptions};
pub use sequence::{parse_sequence, DegreeSequence, PartitionPair};
