//! Exact combinatorics of log Calabi-Yau surfaces with maximal boundary.
//!
//! Starting from the self-intersection numbers of a cycle of boundary
//! divisors, this crate builds the integral affine manifold glued from
//! one quadrant per node, enumerates its integral points (which index the
//! theta basis of degree-zero symplectic cohomology), models the
//! Liouville class of the contact boundary as a polygonal path, validates
//! broken-line diagrams, and multiplies in the explicitly known rings.

pub mod broken_lines;
pub mod homology;
pub mod lattice;
pub mod liouville;
pub mod rings;
pub mod tropical;

pub use broken_lines::{BrokenLineDiagram, ValidationReport};
pub use homology::{ClassExpr, IntersectionLattice, PCertificate};
pub use lattice::{Mat2Z, Scalar, Vec2Q, Vec2Z};
pub use liouville::{AmpleData, LiouvillePath};
pub use tropical::{BoundaryData, Chart, TangentVector, TropManifold, TropPoint};
