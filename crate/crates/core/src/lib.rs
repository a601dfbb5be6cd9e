//! Coloring of linear hypergraphs with regular degree or a dominant vertex.
//!
//! * [`hypergraph`]: the immutable model, structural predicates, dual and 2-section.
//! * [`bounds`]: the color budget `m` with `m(m − A) > (r−1)An` and related thresholds.
//! * [`coloring`]: the recoloring greedy, the degree-ordered procedure for
//!   uniform hypergraphs, verification, the token audit and an exact oracle.
//! * [`generators`]: projective planes, sunflowers and seeded random instances.
//! * [`harness`]: TOML-configured sweeps emitting CSV rows.

pub mod bounds;
pub mod coloring;
pub mod error;
pub mod exec;
pub mod generators;
pub mod harness;
pub mod hypergraph;

pub use error::{BoundsError, ColoringError, GeneratorError, HypergraphError, SweepError};
pub use exec::Execution;
pub use hypergraph::{Hypergraph, HypergraphStats, SimpleGraph};
