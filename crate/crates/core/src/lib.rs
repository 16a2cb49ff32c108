//! Certified inside/outside classification for piecewise-analytic Jordan
//! curves built from line segments, circular arcs and cubic Bezier pieces.
//!
//! A [`CurveSpec`] is validated into a [`JordanCurve`], which can then be
//! queried with [`classify`], [`winding_number`] and [`ray_crossing_index`],
//! or joined around with [`polygonal_join`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod connectivity;
pub mod curves;
pub mod fixtures;
pub mod geometry;
pub mod grid;
pub mod index;

pub use connectivity::{path_carrier_gap, polygonal_join, ClearanceGrid, JoinError, PolygonalJoin};
pub use curves::{
    transform_curve, validate_jordan, CurveError, CurveSpec, DistanceEnclosure, JordanCurve, SegmentPiece,
    ValidationFailure, ValidationOptions,
};
pub use geometry::{Affine, GeometryError, Point, Rect, Vector};
pub use grid::{classify_grid, GridError, GridRequest, GridResult};
pub use index::{
    boundary_witnesses, classify, constant_index_radius, outer_radius, ray_crossing_index, region_distance,
    winding_number, Classification, ClassifyOptions, IndexError, Region, Verdict,
};
