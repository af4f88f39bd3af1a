//! Area minimization of triangulated polyhedral discs with a fixed boundary,
//! and certification that the minimizers are saddle.
//!
//! - [`mesh`]: disc complexes, embeddings, areas and angles.
//! - [`quad`]: the four-sided hinge family and its area curve.
//! - [`flip`]: hinge measurements, edge flips and fan reductions.
//! - [`saddle`]: per-vertex cutting-plane decisions with witnesses.
//! - [`optimize`]: the local-search minimizer and its trace.
//! - [`scenario`], [`io`]: instance generators and file formats.

pub mod flip;
pub mod io;
pub mod mesh;
pub mod optimize;
pub mod quad;
pub mod saddle;
pub mod scenario;

pub use flip::{can_flip, flat_convex_check, flip, measure_hinge, reduce_fan, Hinge, HingeMeasurement};
pub use mesh::{DiscComplex, Edge, PolyhedralDisc, Star, Vec3};
pub use optimize::{minimize, OptimizationTrace, OptimizerConfig};
pub use quad::{HingeState, QuadSpec};
pub use saddle::{certify_saddle, cutting_direction, SaddleCertificate, VertexStatus, VertexVerdict};
