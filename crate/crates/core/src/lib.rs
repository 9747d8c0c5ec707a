//! Grover walks on finite simple connected graphs.
//!
//! The crate builds the four walk matrices of a graph (boundary, shift,
//! evolution, discriminant), decomposes the discriminant spectrally, and
//! detects perfect state transfer between vertex type states — unit arc
//! vectors concentrated on the arcs into one vertex. Transfer amplitudes
//! are entries of Chebyshev polynomials of the discriminant, which is what
//! makes exhaustive scans cheap: an eigenvalue condition prunes most times
//! before any walk is stepped.
//!
//! ```
//! use grover_walk::graph::MultipartiteSpec;
//! use grover_walk::operators::WalkOperators;
//! use grover_walk::pst::{detect_pst, DEFAULT_PST_TOL};
//! use grover_walk::spectral::{decompose, DEFAULT_CLUSTER_TOL};
//!
//! // The 4-cycle, as the complete bipartite graph with parts of size 2.
//! let spec = MultipartiteSpec::new(2, 2).unwrap();
//! let ops = WalkOperators::from_graph(&spec.graph());
//! let sd = decompose(ops.discriminant(), DEFAULT_CLUSTER_TOL).unwrap();
//!
//! // Two steps move the state on v₁⁽¹⁾ perfectly onto v₂⁽¹⁾.
//! let report = detect_pst(&ops, &sd, spec.vertex(1, 1), spec.vertex(1, 2), 2, DEFAULT_PST_TOL).unwrap();
//! assert!(report.pst);
//! ```

pub mod chebyshev;
pub mod corpus;
mod error;
pub mod graph;
pub mod multipartite;
pub mod operators;
pub mod pst;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Arc, ArcSet, Graph, MultipartiteSpec};
pub use multipartite::MultipartiteSpectral;
pub use operators::{ArcState, WalkOperators};
pub use pst::{PeriodReport, ScanReport, TransferReport};
pub use spectral::SpectralDecomposition;
