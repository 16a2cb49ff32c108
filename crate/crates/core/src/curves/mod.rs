//! Closed piecewise-analytic paths: construction, reparametrization,
//! Jordan-curve validation and carrier distance queries.

mod carrier;
mod jordan;
mod piece;
mod spec;

pub use carrier::{CarrierIndex, DistanceEnclosure};
pub use jordan::{
    transform_curve, validate_jordan, J1Certificate, J2Certificate, JordanCurve, PieceSmoothness, ValidationFailure,
    ValidationOptions, DERIV_SUP_MARGIN,
};
pub(crate) use piece::split_cubic;
pub use piece::SegmentPiece;
pub use spec::{lin, path_sum, reparametrize, unit_circular_path, CurveSpec, Side};

use thiserror::Error;

/// Maximum gap between consecutive piece endpoints.
pub const JOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("invalid piece: {0}")]
    InvalidPiece(String),
    #[error("path has no pieces")]
    Empty,
    #[error("pieces {index} and {next} do not meet (gap {gap:e})")]
    Discontinuous { index: usize, next: usize, gap: f64 },
    #[error("parameter {t} outside [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },
    #[error("coincident endpoints")]
    CoincidentEndpoints,
    #[error("end of first path and start of second differ by {0:e}")]
    EndpointMismatch(f64),
    #[error("empty parameter interval [{0}, {1}]")]
    EmptyInterval(f64, f64),
    #[error("knots must be strictly increasing and match the pieces")]
    BadKnots,
    #[error("singular affine map (|det| = {0:e})")]
    SingularMap(f64),
    #[error("circular arcs are only preserved by similarity maps")]
    ArcNotPreserved,
    #[error("malformed curve JSON: {0}")]
    Json(String),
}
