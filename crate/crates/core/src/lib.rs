//! Certifying solver for Planar Contraction: can a graph be made planar by
//! contracting at most `k` edges?
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: simple graphs, contraction, witness structures, edge lists.
//! * [`planarity`]: left-right planarity testing with embeddings and
//!   Kuratowski certificates, faces and cycle interiors.
//! * [`walls`]: elementary walls, wall certificates, subwall packing,
//!   nested triple layers, a certified wall finder and instance generators.
//! * [`oracle`]: exhaustive search over contraction edge sets.
//! * [`pipeline`]: apex sets, type-1 refutations, irrelevant-edge reduction.
//! * [`certificate`]: text certificates and their verification.
//! * [`cli`]: the `plancon` command-line front end.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod planarity;
pub mod walls;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Instance, VertexId, WitnessStructure};
