//! Finite higher-rank graphs: validation, path algebra, boundary fragments,
//! source removal, periodicity and cofinality checks, and ideal lattices.

pub mod analysis;
pub mod boundary;
pub mod degree;
pub mod desource;
pub mod error;
pub mod fixtures;
pub mod ideals;
pub mod io;
pub mod kgraph;

pub use boundary::Fragment;
pub use degree::{Degree, ExtCoord, ExtDegree};
pub use desource::{MTilde, Region, VTilde};
pub use error::{KgError, Result};
pub use kgraph::{EdgeId, KGraph, Path, SkeletonSpec, Square, VertexId};
