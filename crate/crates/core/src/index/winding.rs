//! The contour integral `(1 / 2 pi i) \oint dz / (z - zeta)`.
//!
//! Line and arc pieces contribute their argument increment in closed form.
//! Cubic pieces are replaced by chords; each replacement carries the bound
//!
//! ```text
//! |int_{g1} f - int_{g2} f| <= ||f||_K ||g1' - g2'|| + ||g2'|| ||f o g1 - f o g2||
//!                           <= ||g1' - g2'|| / rho + |chord| ||g1 - g2|| / rho^2
//! ```
//!
//! with `f = 1 / (z - zeta)`, `K` the control-polygon box of the sub-curve
//! and `rho = rho(zeta, K)`. Chords with the largest bound are split first
//! until the accumulated bound drops below `2 pi tol`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use super::IndexError;
use crate::curves::{split_cubic, CurveSpec, JordanCurve, SegmentPiece};
use crate::geometry::{dist_point_seg_raw, Point, Rect};

/// Accept the rounded value only if `residual + error_budget` is below this.
pub const ROUNDING_ACCEPTANCE: f64 = 0.25;

/// Default integral tolerance (in units of the winding number).
pub const DEFAULT_WINDING_TOL: f64 = 0.05;

const MAX_CHORD_DEPTH: u32 = 48;
const MAX_CHORDS: usize = 1 << 18;

/// Result of one winding-number evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingResult {
    /// `(1 / 2 pi i) \oint dz / (z - zeta)` as a complex number `(re, im)`.
    pub integral: Point,
    pub rounded: i64,
    pub residual: f64,
    /// Accumulated chord-replacement bound, in winding units.
    pub error_budget: f64,
    /// Number of chords that replaced cubic pieces.
    pub chords: usize,
}

impl WindingResult {
    pub fn is_certified(&self) -> bool {
        self.residual + self.error_budget < ROUNDING_ACCEPTANCE
    }
}

/// `int dz / (z - zeta)` over `lin(z0, z1)`: the principal logarithm of
/// `(z1 - zeta) / (z0 - zeta)`, valid whenever `zeta` is off the segment.
pub fn linear_path_integral(z0: Point, z1: Point, zeta: Point) -> Point {
    let r = (z1 - zeta).cdiv(z0 - zeta);
    Point::new(r.norm().ln(), r.arg())
}

/// Bound on `|int_{g1} dz/(z - zeta) - int_{g2} dz/(z - zeta)|` for the linear
/// paths `g1 = lin(a1, b1)` and `g2 = lin(a2, b2)`, taking `K` to be the union
/// of the two segments. Infinite when `zeta` lies on either one.
pub fn linear_path_difference_bound(g1: (Point, Point), g2: (Point, Point), zeta: Point) -> f64 {
    let rho = dist_point_seg_raw(zeta, g1.0, g1.1).min(dist_point_seg_raw(zeta, g2.0, g2.1));
    if !(rho > 0.0) {
        return f64::INFINITY;
    }
    // The difference of two affine paths peaks at an endpoint.
    let sup = g1.0.dist(g2.0).max(g1.1.dist(g2.1));
    sup / rho * (2.0 + g2.1.dist(g2.0) / rho)
}

/// Bound on the error of replacing the cubic `q` by its chord.
pub(crate) fn chord_replacement_bound(q: &[Point; 4], zeta: Point) -> f64 {
    let rho = Rect::from_points(*q).dist(zeta);
    if !(rho > 0.0) {
        return f64::INFINITY;
    }
    let chord = q[3] - q[0];
    // g1 - g2 is a cubic with control points 0, d1, d2, 0.
    let d1 = q[1] - (q[0] * 2.0 + q[3]) / 3.0;
    let d2 = q[2] - (q[0] + q[3] * 2.0) / 3.0;
    let deviation = d1.norm().max(d2.norm());
    // g1' - g2' is a quadratic with these control points.
    let slope_gap = [(q[1] - q[0]) * 3.0, (q[2] - q[1]) * 3.0, (q[3] - q[2]) * 3.0]
        .iter()
        .map(|h| (*h - chord).norm())
        .fold(0.0f64, f64::max);
    slope_gap / rho + chord.norm() * deviation / (rho * rho)
}

/// `(arg increment, log-modulus increment)` of `z - zeta` along an arc.
fn arc_increment(center: Point, radius: f64, start_angle: f64, sweep: f64, zeta: Point) -> (f64, f64) {
    let w = (zeta - center) / radius;
    let phi0 = start_angle;
    let phi1 = start_angle + sweep;
    // e^{i phi} - w = e^{i phi} (1 - w e^{-i phi}) when |w| <= 1, and
    // -w (1 - e^{i phi} / w) otherwise; the bracket has positive real part
    // along the arc, so its principal argument is continuous there.
    let darg = if w.norm() <= 1.0 {
        let a = |phi: f64| (Point::new(1.0, 0.0) - w.cmul(Point::from_angle(-phi))).arg();
        sweep + a(phi1) - a(phi0)
    } else {
        let b = |phi: f64| (Point::new(1.0, 0.0) - Point::from_angle(phi).cdiv(w)).arg();
        b(phi1) - b(phi0)
    };
    let start = center + Point::from_angle(phi0) * radius;
    let end = center + Point::from_angle(phi1) * radius;
    (darg, (end.dist(zeta) / start.dist(zeta)).ln())
}

struct Chord {
    q: [Point; 4],
    bound: f64,
    depth: u32,
}

impl PartialEq for Chord {
    fn eq(&self, other: &Self) -> bool {
        self.bound.total_cmp(&other.bound) == Ordering::Equal
    }
}

impl Eq for Chord {}

impl PartialOrd for Chord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Chord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound)
    }
}

/// Winding number of the closed path `spec` about `zeta`, which must lie
/// off the carrier. Does not check integrality.
pub(crate) fn path_winding(spec: &CurveSpec, zeta: Point, tol: f64) -> Result<WindingResult, IndexError> {
    if !(tol > 0.0) {
        return Err(IndexError::BadTolerance(tol));
    }
    let mut darg = 0.0;
    let mut dlog = 0.0;
    let mut heap = BinaryHeap::new();
    let mut finite_sum = 0.0;
    let mut infinite = 0usize;
    for piece in spec.pieces() {
        match *piece {
            SegmentPiece::Line { from, to } => {
                let inc = linear_path_integral(from, to, zeta);
                dlog += inc.x;
                darg += inc.y;
            }
            SegmentPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let (a, l) = arc_increment(center, radius, start_angle, sweep, zeta);
                darg += a;
                dlog += l;
            }
            SegmentPiece::Cubic { points } => {
                let bound = chord_replacement_bound(&points, zeta);
                if bound.is_finite() {
                    finite_sum += bound;
                } else {
                    infinite += 1;
                }
                heap.push(Chord {
                    q: points,
                    bound,
                    depth: 0,
                });
            }
        }
    }

    let target = TAU * tol;
    loop {
        if infinite == 0 && finite_sum <= target {
            let exact: f64 = heap.iter().map(|c| c.bound).sum();
            if exact <= target {
                break;
            }
            finite_sum = exact;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= MAX_CHORD_DEPTH || heap.len() + 2 > MAX_CHORDS {
            let budget = if infinite > 0 { f64::INFINITY } else { finite_sum / TAU };
            return Err(IndexError::BudgetNotMet { budget, tol });
        }
        if worst.bound.is_finite() {
            finite_sum -= worst.bound;
        } else {
            infinite -= 1;
        }
        let (l, r) = split_cubic(&worst.q);
        for q in [l, r] {
            let bound = chord_replacement_bound(&q, zeta);
            if bound.is_finite() {
                finite_sum += bound;
            } else {
                infinite += 1;
            }
            heap.push(Chord {
                q,
                bound,
                depth: worst.depth + 1,
            });
        }
    }

    let chords = heap.len();
    let mut budget = 0.0;
    for c in heap.iter() {
        let inc = linear_path_integral(c.q[0], c.q[3], zeta);
        dlog += inc.x;
        darg += inc.y;
        budget += c.bound;
    }
    let integral = Point::new(darg / TAU, -dlog / TAU);
    let rounded = integral.x.round();
    Ok(WindingResult {
        integral,
        rounded: rounded as i64,
        residual: (integral - Point::new(rounded, 0.0)).norm(),
        error_budget: budget / TAU,
        chords,
    })
}

/// Winding number `j(gamma, zeta)` with a certified error budget below
/// `tol`. Fails with [`IndexError::PointTooClose`] when `zeta` cannot be
/// separated from the carrier.
pub fn winding_number(jc: &JordanCurve, zeta: Point, tol: f64) -> Result<WindingResult, IndexError> {
    let enc = jc.carrier().carrier_distance(zeta);
    if !(enc.lower > 0.0) {
        return Err(IndexError::PointTooClose { lower: enc.lower });
    }
    let w = path_winding(jc.spec(), zeta, tol)?;
    if !w.is_certified() {
        return Err(IndexError::RoundingRejected {
            residual: w.residual,
            budget: w.error_budget,
        });
    }
    Ok(w)
}
