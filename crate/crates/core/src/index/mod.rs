//! Index of points with respect to a Jordan curve: winding numbers, ray
//! crossings, classification and region geometry.

mod classify;
mod crossing;
mod regions;
mod winding;

pub use classify::{classify, Classification, ClassifyOptions, Verdict, DEFAULT_BAND_FACTOR, GOLDEN_ANGLE};
pub use crossing::{ray_crossing_index, CrossingRecord, CrossingResult, HitQuality, ANGLE_FLOOR, ISOLATION_FACTOR};
pub use regions::{
    boundary_witnesses, constant_index_radius, outer_radius, region_distance, BoundaryWitnesses, Region, RegionSampler,
};
pub use winding::{
    linear_path_difference_bound, linear_path_integral, winding_number, WindingResult, DEFAULT_WINDING_TOL,
    ROUNDING_ACCEPTANCE,
};

use thiserror::Error;

use crate::curves::CurveError;
use crate::geometry::{Point, Vector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("point is within {lower:e} of the carrier")]
    PointTooClose { lower: f64 },
    #[error("chord error budget {budget:e} exceeds tolerance {tol:e}")]
    BudgetNotMet { budget: f64, tol: f64 },
    #[error("integral is {residual:e} from an integer with budget {budget:e}")]
    RoundingRejected { residual: f64, budget: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("ray direction is zero")]
    ZeroDirection,
    #[error("ray {direction:?} meets the carrier degenerately")]
    DegenerateRay {
        direction: Vector,
        records: Vec<CrossingRecord>,
    },
    #[error("winding number {winding} and crossing parity {parity} disagree at {point:?}")]
    OracleDisagreement { point: Point, winding: i64, parity: u8 },
    #[error("winding number {winding} at {point:?} is not 0 or +-1")]
    UnexpectedWinding { point: Point, winding: i64 },
    #[error("no oracle could classify {point:?}")]
    Unclassifiable { point: Point },
    #[error("no sample classified into region {0:?}")]
    RegionEmpty(Region),
    #[error("curve is not smooth at t = {t}")]
    NotSmooth { t: f64 },
    #[error("no witness pair found near t = {t}")]
    WitnessNotFound { t: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
}
