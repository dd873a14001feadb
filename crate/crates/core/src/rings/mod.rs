//! Exact arithmetic in the explicitly known rings: the vertex `V_n`, the
//! truncated monoid ring of `P`, the localization `K[x, y][(xy - 1)^-1]`
//! and the degree-zero torus ring.

use thiserror::Error;

use crate::homology::HomologyError;
use crate::tropical::{TropError, TropPoint};

pub mod local;
pub mod monoid;
pub mod torus;
pub mod vertex;

pub use local::{local_mul, local_normal_form, parse_expression, LocalElement, LocalMonomial, RawMonomial};
pub use monoid::{monoid_mul, CertifiedClass, MonoidRingElement};
pub use torus::torus_product;
pub use vertex::{theta_product, vertex_mul, VertexElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("vertex multiplication needs a cycle of at least 3 components, got {0}")]
    UnsupportedBoundaryLength(usize),
    #[error("theta functions are indexed by integral points, got {0}")]
    NonIntegralPoint(Box<TropPoint>),
    #[error(transparent)]
    Tropical(#[from] TropError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("class {0} is not certified to lie in P")]
    NotCertified(String),
    #[error("truncation level must be non-negative")]
    NegativeTruncation,
    #[error("invalid local monomial: {0}")]
    BadMonomial(String),
    #[error("cannot parse expression at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("exponent overflow")]
    ExponentOverflow,
}
