//! Planar primitives shared by every other module: points (read as complex
//! numbers), segments, lines, cones and affine maps.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default angular tolerance below which two lines are treated as parallel.
pub const DEFAULT_ANGLE_TOL: f64 = 1e-9;

/// Tolerance on `|direction| = 1` for [`Line`].
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("zero-length direction vector")]
    ZeroVector,
    #[error("lines do not intersect uniquely (acute angle {angle:e} <= tolerance {tol:e})")]
    NotUnique { angle: f64, tol: f64 },
    #[error("cone half-angle {0} outside (0, pi/2)")]
    BadHalfAngle(f64),
    #[error("angle tolerance must be positive")]
    BadTolerance,
    #[error("singular affine map (|det| = {0:e})")]
    SingularMap(f64),
}

/// A point of the plane, identified with the complex number `x + iy`.
///
/// Also used for displacement vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

pub type Vector = Point;

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(GeometryError::NonFinite)
        }
    }

    /// `exp(i theta)`.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn arg(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by +pi/2 (multiplication by `i`).
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn normalized(self) -> Result<Point, GeometryError> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Ok(self / n)
        } else {
            Err(GeometryError::ZeroVector)
        }
    }

    /// Complex multiplication.
    #[inline]
    pub fn cmul(self, o: Point) -> Point {
        Point::new(self.x * o.x - self.y * o.y, self.x * o.y + self.y * o.x)
    }

    /// Complex division; the divisor must be nonzero.
    #[inline]
    pub fn cdiv(self, o: Point) -> Point {
        let d = o.norm_sq();
        Point::new((self.x * o.x + self.y * o.y) / d, (self.y * o.x - self.x * o.y) / d)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    #[inline]
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

impl Div<f64> for Point {
    type Output = Point;
    #[inline]
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Self {
        Rect { min, max }
    }

    pub fn from_points<I: IntoIterator<Item = Point>>(pts: I) -> Rect {
        let mut r = Rect::new(
            Point::new(f64::INFINITY, f64::INFINITY),
            Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in pts {
            r.include(p);
        }
        r
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(&self, o: &Rect) -> Rect {
        let mut r = *self;
        r.include(o.min);
        r.include(o.max);
        r
    }

    pub fn expand(&self, margin: f64) -> Rect {
        Rect::new(
            self.min - Point::new(margin, margin),
            self.max + Point::new(margin, margin),
        )
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Euclidean distance from `p` to the box (0 inside).
    #[inline]
    pub fn dist(&self, p: Point) -> f64 {
        let dx = (self.min.x - p.x).max(0.0).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(0.0).max(p.y - self.max.y);
        dx.hypot(dy)
    }
}

/// Which endpoints of a [`Segment`] belong to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Closure {
    #[default]
    Both,
    Left,
    Right,
    Neither,
}

/// The segment `{(1-t) start + t end}` with `t` ranging over a closed,
/// half-open or open unit interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    start: Point,
    end: Point,
    closure: Closure,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self, GeometryError> {
        Self::with_closure(start, end, Closure::Both)
    }

    pub fn with_closure(start: Point, end: Point, closure: Closure) -> Result<Self, GeometryError> {
        if !start.is_finite() || !end.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if start == end {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { start, end, closure })
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        self.end
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn at(&self, t: f64) -> Point {
        self.start.lerp(self.end, t)
    }

    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    /// Parameter of the orthogonal projection of `z`, clamped to `[0, 1]`.
    pub fn project(&self, z: Point) -> f64 {
        let d = self.end - self.start;
        ((z - self.start).dot(d) / d.norm_sq()).clamp(0.0, 1.0)
    }

    /// Membership within `tol`, honouring the closure flags.
    pub fn contains(&self, z: Point, tol: f64) -> bool {
        if dist_point_segment(z, self) > tol {
            return false;
        }
        match self.closure {
            Closure::Both => true,
            Closure::Left => z.dist(self.end) > tol,
            Closure::Right => z.dist(self.start) > tol,
            Closure::Neither => z.dist(self.start) > tol && z.dist(self.end) > tol,
        }
    }
}

/// `inf |z - w|` over `w` in the closed segment.
pub fn dist_point_segment(z: Point, s: &Segment) -> f64 {
    z.dist(s.at(s.project(z)))
}

/// Distance from `z` to the closed segment `[a, b]`; `a == b` is allowed.
#[inline]
pub(crate) fn dist_point_seg_raw(z: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let l2 = d.norm_sq();
    if l2 == 0.0 {
        return z.dist(a);
    }
    let t = ((z - a).dot(d) / l2).clamp(0.0, 1.0);
    z.dist(a + d * t)
}

/// A line through `anchor` with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    anchor: Point,
    direction: Vector,
}

impl Line {
    pub fn new(anchor: Point, direction: Vector) -> Result<Self, GeometryError> {
        if !anchor.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        let direction = direction.normalized()?;
        debug_assert!((direction.norm() - 1.0).abs() <= UNIT_TOL);
        Ok(Line { anchor, direction })
    }

    pub fn through(p: Point, q: Point) -> Result<Self, GeometryError> {
        Line::new(p, q - p)
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn direction(&self) -> Vector {
        self.direction
    }

    pub fn at(&self, s: f64) -> Point {
        self.anchor + self.direction * s
    }

    /// Signed distance, positive on the left of `direction`.
    pub fn signed_dist(&self, z: Point) -> f64 {
        self.direction.cross(z - self.anchor)
    }
}

/// The acute angle in `[0, pi/2]` between the lines spanned by `u` and `v`.
pub fn acute_angle(u: Vector, v: Vector) -> Result<f64, GeometryError> {
    if u.norm() == 0.0 || v.norm() == 0.0 || !u.is_finite() || !v.is_finite() {
        return Err(GeometryError::ZeroVector);
    }
    Ok(u.cross(v).abs().atan2(u.dot(v).abs()))
}

fn line_key(l: &Line) -> [f64; 4] {
    [l.anchor.x, l.anchor.y, l.direction.x, l.direction.y]
}

/// Intersection point of two lines together with their acute angle, or
/// [`GeometryError::NotUnique`] when that angle does not exceed `angle_tol`.
///
/// The computation is carried out in a canonical argument order, so the
/// result is bitwise symmetric in `l1`, `l2`.
pub fn line_unique_intersection(l1: &Line, l2: &Line, angle_tol: f64) -> Result<(Point, f64), GeometryError> {
    if !(angle_tol > 0.0) {
        return Err(GeometryError::BadTolerance);
    }
    let (p, q) = match line_key(l1)
        .iter()
        .zip(line_key(l2).iter())
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
    {
        Some(std::cmp::Ordering::Greater) => (l2, l1),
        _ => (l1, l2),
    };
    let angle = acute_angle(p.direction, q.direction)?;
    if angle <= angle_tol {
        return Err(GeometryError::NotUnique { angle, tol: angle_tol });
    }
    let denom = p.direction.cross(q.direction);
    let s = (q.anchor - p.anchor).cross(q.direction) / denom;
    Ok((p.at(s), angle))
}

/// A closed cone `{vertex + r u : r >= 0, angle(u, axis) <= half_angle}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    vertex: Point,
    axis: Vector,
    half_angle: f64,
}

impl Cone {
    pub fn new(vertex: Point, axis: Vector, half_angle: f64) -> Result<Self, GeometryError> {
        if !(half_angle > 0.0 && half_angle < FRAC_PI_2) {
            return Err(GeometryError::BadHalfAngle(half_angle));
        }
        Ok(Cone {
            vertex,
            axis: axis.normalized()?,
            half_angle,
        })
    }

    /// The cone at a curve point whose sides make angle `theta` with the
    /// tangent and whose axis is the normal.
    pub fn about_normal(vertex: Point, normal: Vector, theta: f64) -> Result<Self, GeometryError> {
        Cone::new(vertex, normal, FRAC_PI_2 - theta)
    }

    pub fn vertex(&self) -> Point {
        self.vertex
    }

    pub fn axis(&self) -> Vector {
        self.axis
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    /// Angle between each side and the line orthogonal to the axis.
    pub fn side_angle(&self) -> f64 {
        FRAC_PI_2 - self.half_angle
    }

    /// Unit directions of the two boundary rays.
    pub fn sides(&self) -> [Vector; 2] {
        let (s, c) = self.half_angle.sin_cos();
        let a = self.axis;
        [
            Point::new(a.x * c - a.y * s, a.x * s + a.y * c),
            Point::new(a.x * c + a.y * s, -a.x * s + a.y * c),
        ]
    }

    fn axis_angle(&self, z: Point) -> Option<f64> {
        let v = z - self.vertex;
        if v.norm() == 0.0 {
            return None;
        }
        Some(self.axis.cross(v).atan2(self.axis.dot(v)).abs())
    }

    /// Closed membership: boundary rays and the vertex included.
    pub fn contains(&self, z: Point) -> bool {
        self.axis_angle(z).is_none_or(|a| a <= self.half_angle)
    }

    pub fn contains_interior(&self, z: Point) -> bool {
        self.axis_angle(z).is_some_and(|a| a < self.half_angle)
    }

    /// The opposite cone `-K` (same vertex, reversed axis).
    pub fn opposite(&self) -> Cone {
        Cone {
            axis: -self.axis,
            ..*self
        }
    }
}

fn dist_point_ray(z: Point, origin: Point, dir: Vector) -> f64 {
    let v = z - origin;
    let along = v.dot(dir);
    if along <= 0.0 {
        v.norm()
    } else {
        dir.cross(v).abs()
    }
}

/// Distance from `z` to the closure of the complement of `k`; zero unless
/// `z` lies strictly inside the cone.
///
/// For `z` on the axis at distance `d` from the vertex this is
/// `d * cos(k.side_angle())`.
pub fn cone_interior_distance(z: Point, k: &Cone) -> f64 {
    if !k.contains_interior(z) {
        return 0.0;
    }
    k.sides()
        .iter()
        .map(|&s| dist_point_ray(z, k.vertex, s))
        .fold(f64::INFINITY, f64::min)
}

/// `z -> linear * z + offset` with `linear` a row-major 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub linear: [[f64; 2]; 2],
    pub offset: Vector,
}

/// Relative tolerance for recognising a similarity.
const SIMILARITY_TOL: f64 = 1e-12;

impl Affine {
    pub const IDENTITY: Affine = Affine {
        linear: [[1.0, 0.0], [0.0, 1.0]],
        offset: Point::ORIGIN,
    };

    pub fn new(linear: [[f64; 2]; 2], offset: Vector) -> Self {
        Affine { linear, offset }
    }

    pub fn translate(v: Vector) -> Self {
        Affine {
            offset: v,
            ..Self::IDENTITY
        }
    }

    pub fn scale(s: f64) -> Self {
        Affine::new([[s, 0.0], [0.0, s]], Point::ORIGIN)
    }

    pub fn rotate(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Affine::new([[c, -s], [s, c]], Point::ORIGIN)
    }

    /// Reflection across the line through the origin at angle `theta`.
    pub fn reflect(theta: f64) -> Self {
        let (s, c) = (2.0 * theta).sin_cos();
        Affine::new([[c, s], [s, -c]], Point::ORIGIN)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Affine) -> Affine {
        let a = self.linear;
        let b = first.linear;
        let linear = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        Affine {
            linear,
            offset: self.apply_linear(first.offset) + self.offset,
        }
    }

    pub fn det(&self) -> f64 {
        let m = self.linear;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[inline]
    pub fn apply_linear(&self, v: Vector) -> Vector {
        let m = self.linear;
        Point::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.apply_linear(p) + self.offset
    }

    pub fn inverse(&self) -> Result<Affine, GeometryError> {
        let d = self.det();
        if d.abs() <= 1e-12 || !d.is_finite() {
            return Err(GeometryError::SingularMap(d.abs()));
        }
        let m = self.linear;
        let linear = [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]];
        let inv = Affine {
            linear,
            offset: Point::ORIGIN,
        };
        Ok(Affine {
            offset: -inv.apply_linear(self.offset),
            ..inv
        })
    }

    /// If the linear part is `s * Q` with `Q` orthogonal, returns `(s, angle,
    /// reflected)` where `Q` is rotation by `angle`, composed with the
    /// reflection `(x, y) -> (x, -y)` first when `reflected`.
    pub fn similarity(&self) -> Option<(f64, f64, bool)> {
        let [[a, b], [c, d]] = self.linear;
        let scale = (a * a + b * b + c * c + d * d).sqrt();
        let tol = SIMILARITY_TOL * scale.max(f64::MIN_POSITIVE);
        if (a - d).abs() <= tol && (b + c).abs() <= tol {
            Some((a.hypot(c), c.atan2(a), false))
        } else if (a + d).abs() <= tol && (b - c).abs() <= tol {
            Some((a.hypot(c), c.atan2(a), true))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn point_segment_distance_examples() {
        let s = seg((-1.0, 0.0), (1.0, 0.0));
        assert_eq!(dist_point_segment(Point::new(0.0, 1.0), &s), 1.0);
        assert_eq!(dist_point_segment(Point::new(2.0, 0.0), &s), 1.0);
        let s = seg((0.0, 0.0), (1.0, 0.0));
        assert!((dist_point_segment(Point::new(0.3, 0.4), &s) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn degenerate_segment_rejected() {
        let p = Point::new(1.0, 2.0);
        assert_eq!(Segment::new(p, p), Err(GeometryError::DegenerateSegment));
    }

    #[test]
    fn segment_closure_flags() {
        let s = Segment::with_closure(Point::ORIGIN, Point::new(1.0, 0.0), Closure::Left).unwrap();
        assert!(s.contains(Point::ORIGIN, 1e-12));
        assert!(!s.contains(Point::new(1.0, 0.0), 1e-12));
        assert!(s.contains(Point::new(0.5, 0.0), 1e-12));
        let s = Segment::with_closure(Point::ORIGIN, Point::new(1.0, 0.0), Closure::Neither).unwrap();
        assert!(!s.contains(Point::ORIGIN, 1e-12));
    }

    #[test]
    fn unique_intersection_examples() {
        let x = Line::new(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        let y = Line::new(Point::ORIGIN, Point::new(0.0, 1.0)).unwrap();
        let (p, a) = line_unique_intersection(&x, &y, DEFAULT_ANGLE_TOL).unwrap();
        assert!(p.norm() < 1e-15);
        assert!((a - FRAC_PI_2).abs() < 1e-15);

        let y1 = Line::new(Point::new(0.0, 1.0), Point::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            line_unique_intersection(&x, &y1, DEFAULT_ANGLE_TOL),
            Err(GeometryError::NotUnique { .. })
        ));

        // atan(1e-12) ~ 1e-12 < 1e-9
        let shallow = Line::new(Point::ORIGIN, Point::new(1.0, 1e-12)).unwrap();
        assert!(1e-12f64.atan() < DEFAULT_ANGLE_TOL);
        assert!(matches!(
            line_unique_intersection(&x, &shallow, DEFAULT_ANGLE_TOL),
            Err(GeometryError::NotUnique { .. })
        ));
    }

    #[test]
    fn unique_intersection_bad_tolerance() {
        let x = Line::new(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        let y = Line::new(Point::ORIGIN, Point::new(0.0, 1.0)).unwrap();
        assert_eq!(line_unique_intersection(&x, &y, 0.0), Err(GeometryError::BadTolerance));
    }

    #[test]
    fn acute_angle_examples() {
        let e = Point::new(1.0, 0.0);
        assert!((acute_angle(e, Point::new(0.0, 1.0)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(acute_angle(e, Point::new(-1.0, 0.0)).unwrap(), 0.0);
        assert!((acute_angle(e, Point::new(1.0, 1.0)).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(acute_angle(e, Point::ORIGIN), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn cone_distance_examples() {
        let k = Cone::new(Point::ORIGIN, Point::new(0.0, 1.0), FRAC_PI_4).unwrap();
        let d = cone_interior_distance(Point::new(0.0, 1.0), &k);
        assert!((d - FRAC_PI_4.cos()).abs() < 1e-15);
        assert_eq!(cone_interior_distance(Point::new(1.0, 0.0), &k), 0.0);

        // Oracle: dense sampling of both boundary rays.
        let z = Point::new(0.2, 1.0);
        let mut best = f64::INFINITY;
        for side in k.sides() {
            for i in 0..=200_000 {
                let r = 3.0 * i as f64 / 200_000.0;
                best = best.min(z.dist(side * r));
            }
        }
        let got = cone_interior_distance(z, &k);
        assert!((got - best).abs() < 1e-4, "{got} vs {best}");
        assert!((got - 0.565_685_424_9).abs() < 1e-9);
    }

    #[test]
    fn cone_boundary_is_closed() {
        let k = Cone::new(Point::ORIGIN, Point::new(0.0, 1.0), FRAC_PI_4).unwrap();
        let on_side = k.sides()[0] * 2.0;
        assert!(k.contains(on_side));
        assert!(!k.contains_interior(on_side));
        assert_eq!(cone_interior_distance(on_side, &k), 0.0);
        assert!(k.contains(Point::ORIGIN));
        assert!(!k.opposite().contains_interior(Point::new(0.0, 1.0)));
    }

    #[test]
    fn cone_axis_distance_closed_form() {
        for &theta in &[0.1, 0.5, 1.0, 1.4] {
            let normal = Point::new(0.3, -0.7).normalized().unwrap();
            let v = Point::new(1.0, 2.0);
            let k = Cone::about_normal(v, normal, theta).unwrap();
            for &d in &[0.01, 0.5, 3.0] {
                let got = cone_interior_distance(v + normal * d, &k);
                assert!((got - d * theta.cos()).abs() < 1e-12 * (1.0 + d));
            }
        }
    }

    #[test]
    fn affine_inverse_and_similarity() {
        let t = Affine::rotate(0.3).compose(&Affine::scale(2.0));
        let t = Affine::translate(Point::new(1.0, -2.0)).compose(&t);
        let inv = t.inverse().unwrap();
        let p = Point::new(0.7, -0.2);
        assert!(inv.apply(t.apply(p)).dist(p) < 1e-14);
        let (s, a, r) = t.similarity().unwrap();
        assert!((s - 2.0).abs() < 1e-14 && (a - 0.3).abs() < 1e-14 && !r);
        let (_, _, r) = Affine::reflect(0.2).similarity().unwrap();
        assert!(r);
        let shear = Affine::new([[1.0, 0.5], [0.0, 1.0]], Point::ORIGIN);
        assert!(shear.similarity().is_none());
        assert!(Affine::scale(0.0).inverse().is_err());
        assert!((Affine::rotate(PI).det() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_ops() {
        let i = Point::new(0.0, 1.0);
        assert_eq!(i.cmul(i), Point::new(-1.0, 0.0));
        let z = Point::new(3.0, 4.0);
        assert!(z.cmul(i).cdiv(i).dist(z) < 1e-15);
        assert!(Point::try_new(f64::NAN, 0.0).is_err());
    }
}
