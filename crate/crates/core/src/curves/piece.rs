use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::geometry::{dist_point_seg_raw, Affine, Point, Rect, Vector};

/// Parameter slack when deciding whether a ray hit lies on a piece.
pub(crate) const HIT_PARAM_SLACK: f64 = 1e-9;

/// Depth cap for the hodograph subdivision that bounds `|gamma'|` below.
const HODOGRAPH_DEPTH: u32 = 20;

/// Depth cap for cubic root isolation (2^-44 ~ 6e-14 in parameter).
const ROOT_DEPTH: u32 = 44;

/// One analytic piece of a path, parametrized on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SegmentPiece {
    Line {
        from: Point,
        to: Point,
    },
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    Cubic {
        points: [Point; 4],
    },
}

/// A raw intersection of a ray with one piece, in local parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RawHit {
    pub s: f64,
    /// Overlap with the ray, or a root that could not be isolated.
    pub degenerate: bool,
}

impl SegmentPiece {
    pub fn line(from: Point, to: Point) -> Self {
        SegmentPiece::Line { from, to }
    }

    pub fn arc(center: Point, radius: f64, start_angle: f64, sweep: f64) -> Self {
        SegmentPiece::Arc {
            center,
            radius,
            start_angle,
            sweep,
        }
    }

    pub fn cubic(p0: Point, p1: Point, p2: Point, p3: Point) -> Self {
        SegmentPiece::Cubic {
            points: [p0, p1, p2, p3],
        }
    }

    pub(crate) fn check(&self) -> Result<(), CurveError> {
        let finite = match *self {
            SegmentPiece::Line { from, to } => from.is_finite() && to.is_finite(),
            SegmentPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center.is_finite() && radius.is_finite() && start_angle.is_finite() && sweep.is_finite(),
            SegmentPiece::Cubic { points } => points.iter().all(|p| p.is_finite()),
        };
        if !finite {
            return Err(CurveError::InvalidPiece("non-finite value".into()));
        }
        match *self {
            SegmentPiece::Line { from, to } if from == to => {
                Err(CurveError::InvalidPiece("line endpoints coincide".into()))
            }
            SegmentPiece::Arc { radius, .. } if radius <= 0.0 => {
                Err(CurveError::InvalidPiece(format!("arc radius {radius} is not positive")))
            }
            SegmentPiece::Arc { sweep, .. } if sweep == 0.0 || sweep.abs() > TAU * (1.0 + 1e-12) => {
                Err(CurveError::InvalidPiece(format!("arc sweep {sweep} outside (0, 2pi]")))
            }
            SegmentPiece::Cubic { points } if points.iter().all(|&p| p == points[0]) => {
                Err(CurveError::InvalidPiece("cubic collapses to a point".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, s: f64) -> Point {
        match *self {
            SegmentPiece::Line { from, to } => from.lerp(to, s),
            SegmentPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Point::from_angle(start_angle + s * sweep) * radius,
            SegmentPiece::Cubic { points } => bezier_eval(&points, s),
        }
    }

    /// Derivative with respect to the local parameter.
    pub fn deriv(&self, s: f64) -> Vector {
        match *self {
            SegmentPiece::Line { from, to } => to - from,
            SegmentPiece::Arc {
                radius,
                start_angle,
                sweep,
                ..
            } => Point::from_angle(start_angle + s * sweep).perp() * (radius * sweep),
            SegmentPiece::Cubic { points: p } => {
                let h = hodograph(&p);
                let u = 1.0 - s;
                h[0] * (u * u) + h[1] * (2.0 * u * s) + h[2] * (s * s)
            }
        }
    }

    pub fn start(&self) -> Point {
        self.eval(0.0)
    }

    pub fn end(&self) -> Point {
        self.eval(1.0)
    }

    /// Tight box for lines and arcs, control-polygon box for cubics.
    pub fn bbox(&self) -> Rect {
        match *self {
            SegmentPiece::Line { from, to } => Rect::from_points([from, to]),
            SegmentPiece::Arc { center, radius, .. } => {
                let mut r = Rect::from_points([self.start(), self.end()]);
                for k in 0..4 {
                    let ang = k as f64 * FRAC_PI_2;
                    if self.arc_param_of_angle(ang).is_some_and(|s| (0.0..=1.0).contains(&s)) {
                        r.include(center + Point::from_angle(ang) * radius);
                    }
                }
                r
            }
            SegmentPiece::Cubic { points } => Rect::from_points(points),
        }
    }

    /// Bounds `(lower, upper)` on `|d/ds piece|` over `[0, 1]`. `lower` is
    /// `None` when a positive lower bound could not be established.
    pub fn speed_bounds(&self) -> (Option<f64>, f64) {
        match *self {
            SegmentPiece::Line { from, to } => {
                let l = (to - from).norm();
                (Some(l), l)
            }
            SegmentPiece::Arc { radius, sweep, .. } => {
                let l = radius * sweep.abs();
                (Some(l), l)
            }
            SegmentPiece::Cubic { points } => {
                let h = hodograph(&points);
                let upper = h.iter().map(|v| v.norm()).fold(0.0, f64::max);
                (quad_hull_min_norm(h, 0), upper)
            }
        }
    }

    /// Local parameter of the arc point at polar angle `ang`, choosing the
    /// representative nearest to `[0, 1]`. `None` for non-arcs.
    pub(crate) fn arc_param_of_angle(&self, ang: f64) -> Option<f64> {
        let SegmentPiece::Arc { start_angle, sweep, .. } = *self else {
            return None;
        };
        let delta = ((ang - start_angle) * sweep.signum()).rem_euclid(TAU);
        let s_pos = delta / sweep.abs();
        let s_neg = (delta - TAU) / sweep.abs();
        let excess = |s: f64| if s < 0.0 { -s } else { (s - 1.0).max(0.0) };
        Some(if excess(s_neg) < excess(s_pos) { s_neg } else { s_pos })
    }

    /// Enclosure `(lower, upper)` of the distance from `z` to the piece.
    /// Exact for lines and arcs; for cubics the width is at most `tol`
    /// unless every part of the piece is farther than `prune_above`.
    pub(crate) fn distance(&self, z: Point, prune_above: f64, tol: f64) -> (f64, f64) {
        match *self {
            SegmentPiece::Line { from, to } => {
                let d = dist_point_seg_raw(z, from, to);
                (d, d)
            }
            SegmentPiece::Arc { center, radius, .. } => {
                let v = z - center;
                let r = v.norm();
                let d = if r == 0.0 {
                    radius
                } else if self
                    .arc_param_of_angle(v.arg())
                    .is_some_and(|s| (0.0..=1.0).contains(&s))
                {
                    (r - radius).abs()
                } else {
                    z.dist(self.start()).min(z.dist(self.end()))
                };
                (d, d)
            }
            SegmentPiece::Cubic { points } => cubic_distance(&points, z, prune_above, tol),
        }
    }

    /// Every crossing of the ray `origin + lambda dir` (`lambda > 0`) with the
    /// piece. `dir` must be a unit vector.
    pub(crate) fn ray_hits(&self, origin: Point, dir: Vector) -> Vec<RawHit> {
        let in_range = |s: f64| (-HIT_PARAM_SLACK..=1.0 + HIT_PARAM_SLACK).contains(&s);
        match *self {
            SegmentPiece::Line { from, to } => {
                let e = to - from;
                let denom = e.cross(dir);
                let w = from - origin;
                if denom.abs() <= 1e-14 * e.norm() {
                    let offset = dir.cross(w).abs();
                    let scale = 1.0 + w.norm() + e.norm();
                    let ahead = dir.dot(w).max(dir.dot(to - origin)) > 0.0;
                    if offset <= 1e-12 * scale && ahead {
                        return vec![RawHit {
                            s: 0.5,
                            degenerate: true,
                        }];
                    }
                    return Vec::new();
                }
                let s = (origin - from).cross(dir) / denom;
                let lambda = w.cross(e) / dir.cross(e);
                if lambda > 0.0 && in_range(s) {
                    vec![RawHit { s, degenerate: false }]
                } else {
                    Vec::new()
                }
            }
            SegmentPiece::Arc { center, radius, .. } => {
                let v = origin - center;
                let b = v.dot(dir);
                let c = v.norm_sq() - radius * radius;
                let disc = b * b - c;
                if disc < 0.0 {
                    return Vec::new();
                }
                let q = -(b + b.signum() * disc.sqrt());
                let mut roots = vec![q];
                if q != 0.0 {
                    roots.push(c / q);
                }
                roots
                    .into_iter()
                    .filter(|&lambda| lambda > 0.0)
                    .filter_map(|lambda| {
                        let p = origin + dir * lambda;
                        self.arc_param_of_angle((p - center).arg())
                    })
                    .filter(|&s| in_range(s))
                    .map(|s| RawHit { s, degenerate: false })
                    .collect()
            }
            SegmentPiece::Cubic { points } => {
                let mut hits = Vec::new();
                cubic_ray_roots(&points, &points, origin, dir, 0.0, 1.0, 0, &mut hits);
                hits.retain(|h| {
                    let p = bezier_eval(&points, h.s);
                    h.degenerate || dir.dot(p - origin) > 0.0
                });
                hits
            }
        }
    }

    /// The same point set traversed backwards.
    pub fn reversed(&self) -> Self {
        match *self {
            SegmentPiece::Line { from, to } => SegmentPiece::Line { from: to, to: from },
            SegmentPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => SegmentPiece::Arc {
                center,
                radius,
                start_angle: start_angle + sweep,
                sweep: -sweep,
            },
            SegmentPiece::Cubic { points: [a, b, c, d] } => SegmentPiece::Cubic { points: [d, c, b, a] },
        }
    }

    /// Image under `map`. Arcs survive only similarity maps.
    pub fn transformed(&self, map: &Affine) -> Result<Self, CurveError> {
        Ok(match *self {
            SegmentPiece::Line { from, to } => SegmentPiece::Line {
                from: map.apply(from),
                to: map.apply(to),
            },
            SegmentPiece::Cubic { points } => SegmentPiece::Cubic {
                points: points.map(|p| map.apply(p)),
            },
            SegmentPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let (scale, angle, reflected) = map.similarity().ok_or(CurveError::ArcNotPreserved)?;
                let (start_angle, sweep) = if reflected {
                    (angle - start_angle, -sweep)
                } else {
                    (angle + start_angle, sweep)
                };
                SegmentPiece::Arc {
                    center: map.apply(center),
                    radius: radius * scale,
                    start_angle,
                    sweep,
                }
            }
        })
    }
}

#[inline]
pub(crate) fn bezier_eval(p: &[Point; 4], s: f64) -> Point {
    let u = 1.0 - s;
    p[0] * (u * u * u) + p[1] * (3.0 * u * u * s) + p[2] * (3.0 * u * s * s) + p[3] * (s * s * s)
}

#[inline]
pub(crate) fn hodograph(p: &[Point; 4]) -> [Vector; 3] {
    [(p[1] - p[0]) * 3.0, (p[2] - p[1]) * 3.0, (p[3] - p[2]) * 3.0]
}

/// de Casteljau split at `s = 1/2`.
#[inline]
pub(crate) fn split_cubic(p: &[Point; 4]) -> ([Point; 4], [Point; 4]) {
    let ab = p[0].lerp(p[1], 0.5);
    let bc = p[1].lerp(p[2], 0.5);
    let cd = p[2].lerp(p[3], 0.5);
    let abc = ab.lerp(bc, 0.5);
    let bcd = bc.lerp(cd, 0.5);
    let m = abc.lerp(bcd, 0.5);
    ([p[0], ab, abc, m], [m, bcd, cd, p[3]])
}

fn split_quad(q: [Point; 3]) -> ([Point; 3], [Point; 3]) {
    let a = q[0].lerp(q[1], 0.5);
    let b = q[1].lerp(q[2], 0.5);
    let m = a.lerp(b, 0.5);
    ([q[0], a, m], [m, b, q[2]])
}

/// Distance from the origin to the triangle (possibly degenerate) `t`.
fn origin_triangle_dist(t: [Point; 3]) -> f64 {
    let c0 = t[0].cross(t[1]);
    let c1 = t[1].cross(t[2]);
    let c2 = t[2].cross(t[0]);
    let inside = (c0 > 0.0 && c1 > 0.0 && c2 > 0.0) || (c0 < 0.0 && c1 < 0.0 && c2 < 0.0);
    if inside {
        return 0.0;
    }
    let o = Point::ORIGIN;
    dist_point_seg_raw(o, t[0], t[1])
        .min(dist_point_seg_raw(o, t[1], t[2]))
        .min(dist_point_seg_raw(o, t[2], t[0]))
}

/// Lower bound on `|q(s)|` for a quadratic Bezier `q` via hull subdivision.
fn quad_hull_min_norm(q: [Point; 3], depth: u32) -> Option<f64> {
    let d = origin_triangle_dist(q);
    if d > 0.0 && depth >= 2 {
        return Some(d);
    }
    if depth >= HODOGRAPH_DEPTH {
        return None;
    }
    let (l, r) = split_quad(q);
    Some(quad_hull_min_norm(l, depth + 1)?.min(quad_hull_min_norm(r, depth + 1)?))
}

/// Lower bound on the distance from `z` to the cubic: the larger of the box
/// distance and the chord distance less the control points' deviation from
/// the chord. The second is tight to second order in the piece length.
fn hull_distance_lower(p: &[Point; 4], z: Point) -> f64 {
    let dev = dist_point_seg_raw(p[1], p[0], p[3]).max(dist_point_seg_raw(p[2], p[0], p[3]));
    let chord = dist_point_seg_raw(z, p[0], p[3]) - dev;
    Rect::from_points(*p).dist(z).max(chord)
}

/// Branch and bound over de Casteljau subdivisions.
fn cubic_distance(points: &[Point; 4], z: Point, prune_above: f64, tol: f64) -> (f64, f64) {
    let mut own_hi = z.dist(points[0]).min(z.dist(points[3]));
    let mut best_hi = own_hi.min(prune_above);
    let mut lo = f64::INFINITY;
    let mut stack = vec![(*points, 0u32)];
    while let Some((p, depth)) = stack.pop() {
        let node_lo = hull_distance_lower(&p, z);
        if node_lo >= best_hi - tol {
            lo = lo.min(node_lo);
            continue;
        }
        let node_hi = z.dist(p[0]).min(z.dist(p[3]));
        own_hi = own_hi.min(node_hi);
        best_hi = best_hi.min(node_hi);
        if node_hi - node_lo <= tol || depth >= 60 {
            lo = lo.min(node_lo);
            continue;
        }
        let (a, b) = split_cubic(&p);
        stack.push((a, depth + 1));
        stack.push((b, depth + 1));
    }
    (lo.min(own_hi), own_hi)
}

#[allow(clippy::too_many_arguments)]
fn cubic_ray_roots(
    whole: &[Point; 4],
    part: &[Point; 4],
    origin: Point,
    dir: Vector,
    s0: f64,
    s1: f64,
    depth: u32,
    out: &mut Vec<RawHit>,
) {
    let g = part.map(|p| dir.cross(p - origin));
    let ahead = part.map(|p| dir.dot(p - origin));
    if ahead.iter().all(|&a| a <= 0.0) {
        return;
    }
    let pos = g.map(|v| v >= 0.0);
    let changes = pos.windows(2).filter(|w| w[0] != w[1]).count();
    if changes == 0 {
        return;
    }
    if changes == 1 {
        // Exactly one crossing of the ray's line: bisect on the true curve.
        let f = |s: f64| dir.cross(bezier_eval(whole, s) - origin) >= 0.0;
        let (mut a, mut b) = (s0, s1);
        let fa = f(a);
        while b - a > 1e-15 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if f(m) == fa {
                a = m;
            } else {
                b = m;
            }
        }
        out.push(RawHit {
            s: 0.5 * (a + b),
            degenerate: false,
        });
        return;
    }
    if depth >= ROOT_DEPTH {
        out.push(RawHit {
            s: 0.5 * (s0 + s1),
            degenerate: true,
        });
        return;
    }
    let (l, r) = split_cubic(part);
    let m = 0.5 * (s0 + s1);
    cubic_ray_roots(whole, &l, origin, dir, s0, m, depth + 1, out);
    cubic_ray_roots(whole, &r, origin, dir, m, s1, depth + 1, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_circle() -> SegmentPiece {
        SegmentPiece::arc(Point::ORIGIN, 1.0, 0.0, TAU)
    }

    fn blob() -> SegmentPiece {
        SegmentPiece::cubic(
            Point::new(0.0, 0.0),
            Point::new(1.0, 2.0),
            Point::new(3.0, 2.0),
            Point::new(4.0, 0.0),
        )
    }

    #[test]
    fn cubic_endpoint_derivative() {
        let c = blob();
        let SegmentPiece::Cubic { points } = c else {
            unreachable!()
        };
        assert_eq!(c.deriv(0.0), (points[1] - points[0]) * 3.0);
        assert_eq!(c.deriv(1.0), (points[3] - points[2]) * 3.0);
    }

    #[test]
    fn arc_distance_cases() {
        let half = SegmentPiece::arc(Point::ORIGIN, 1.0, 0.0, PI);
        assert_eq!(half.distance(Point::new(0.0, 3.0), f64::INFINITY, 0.0).0, 2.0);
        // Below the half arc: nearest points are the endpoints.
        let d = half.distance(Point::new(0.0, -1.0), f64::INFINITY, 0.0).0;
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(unit_circle().distance(Point::ORIGIN, f64::INFINITY, 0.0), (1.0, 1.0));
    }

    #[test]
    fn arc_param_wraps() {
        let a = SegmentPiece::arc(Point::ORIGIN, 1.0, 3.0, 1.0);
        assert!((a.arc_param_of_angle(3.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((a.arc_param_of_angle(3.5 - TAU).unwrap() - 0.5).abs() < 1e-12);
        let cw = SegmentPiece::arc(Point::ORIGIN, 1.0, 0.0, -1.0);
        assert!((cw.arc_param_of_angle(-0.25).unwrap() - 0.25).abs() < 1e-15);
        // Slightly before the start maps to a small negative parameter.
        assert!(a.arc_param_of_angle(2.999).unwrap() < 0.0);
    }

    #[test]
    fn cubic_distance_matches_sampling() {
        let c = blob();
        let z = Point::new(2.0, 0.5);
        let (lo, hi) = c.distance(z, f64::INFINITY, 1e-12);
        let brute = (0..=1_000_000)
            .map(|i| c.eval(i as f64 / 1e6).dist(z))
            .fold(f64::INFINITY, f64::min);
        assert!(lo <= brute + 1e-12 && brute <= hi + 1e-9, "{lo} {hi} {brute}");
        assert!(hi - lo <= 1e-11);
    }

    #[test]
    fn cubic_speed_bounds_enclose_samples() {
        let c = blob();
        let (lo, hi) = c.speed_bounds();
        let lo = lo.unwrap();
        for i in 0..=1000 {
            let v = c.deriv(i as f64 / 1000.0).norm();
            assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
        }
        // A cusp: hodograph passes through zero.
        let cusp = SegmentPiece::cubic(
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 0.0),
        );
        assert!(cusp.speed_bounds().0.is_none());
    }

    #[test]
    fn ray_hits_on_each_kind() {
        let hits = unit_circle().ray_hits(Point::ORIGIN, Point::new(1.0, 0.0));
        assert_eq!(hits.len(), 1);
        assert!(hits[0].s.abs() < 1e-12 || (hits[0].s - 1.0).abs() < 1e-12);

        let hits = unit_circle().ray_hits(Point::new(2.0, 0.0), Point::new(-1.0, 0.0));
        assert_eq!(hits.len(), 2);

        let l = SegmentPiece::line(Point::new(1.0, -1.0), Point::new(1.0, 1.0));
        let hits = l.ray_hits(Point::ORIGIN, Point::new(1.0, 0.0));
        assert_eq!(hits.len(), 1);
        assert!((hits[0].s - 0.5).abs() < 1e-15);
        assert!(l.ray_hits(Point::ORIGIN, Point::new(-1.0, 0.0)).is_empty());

        let along = SegmentPiece::line(Point::new(1.0, 0.0), Point::new(2.0, 0.0));
        let hits = along.ray_hits(Point::ORIGIN, Point::new(1.0, 0.0));
        assert!(hits.len() == 1 && hits[0].degenerate);

        let c = blob();
        let hits = c.ray_hits(Point::new(2.0, 1.0), Point::new(0.0, 1.0));
        assert_eq!(hits.len(), 1);
        assert!((hits[0].s - 0.5).abs() < 1e-12);
        let hits = c.ray_hits(Point::new(-1.0, 1.0), Point::new(1.0, 0.0));
        assert_eq!(hits.len(), 2);
        for h in hits {
            assert!((c.eval(h.s).y - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cubic_tangent_ray_is_degenerate() {
        // The blob peaks at y = 1.5 for s = 1/2.
        let c = blob();
        let hits = c.ray_hits(Point::new(-1.0, 1.5), Point::new(1.0, 0.0));
        assert!(hits.iter().all(|h| h.degenerate) || hits.len() != 1);
    }

    #[test]
    fn reversal_and_similarity() {
        let a = SegmentPiece::arc(Point::new(1.0, 0.0), 2.0, 0.3, 1.2);
        let r = a.reversed();
        assert!(r.eval(0.25).dist(a.eval(0.75)) < 1e-14);
        let map = Affine::reflect(0.4).compose(&Affine::scale(3.0));
        let t = a.transformed(&map).unwrap();
        for i in 0..=10 {
            let s = i as f64 / 10.0;
            assert!(t.eval(s).dist(map.apply(a.eval(s))) < 1e-13);
        }
        let shear = Affine::new([[1.0, 1.0], [0.0, 1.0]], Point::ORIGIN);
        assert!(matches!(a.transformed(&shear), Err(CurveError::ArcNotPreserved)));
        assert!(blob().transformed(&shear).is_ok());
    }

    #[test]
    fn bad_pieces_rejected() {
        assert!(SegmentPiece::arc(Point::ORIGIN, 0.0, 0.0, 1.0).check().is_err());
        assert!(SegmentPiece::arc(Point::ORIGIN, 1.0, 0.0, 7.0).check().is_err());
        assert!(SegmentPiece::line(Point::ORIGIN, Point::ORIGIN).check().is_err());
        assert!(unit_circle().check().is_ok());
    }
}
