use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{CurveError, SegmentPiece, JOINT_TOL};
use crate::geometry::{Affine, Point, Vector};

/// Which one-sided derivative to take at a parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A path made of [`SegmentPiece`]s. Piece `k` occupies the parameter
/// interval `[knots[k], knots[k + 1]]`; consecutive pieces meet within
/// [`JOINT_TOL`]. The path is not required to be closed.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pieces: Vec<SegmentPiece>,
    knots: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    pieces: Vec<SegmentPiece>,
}

impl CurveSpec {
    /// Pieces on the default parameter interval `[0, n]`.
    pub fn new(pieces: Vec<SegmentPiece>) -> Result<Self, CurveError> {
        let knots = (0..=pieces.len()).map(|k| k as f64).collect();
        Self::with_knots(pieces, knots)
    }

    pub fn with_knots(pieces: Vec<SegmentPiece>, knots: Vec<f64>) -> Result<Self, CurveError> {
        if pieces.is_empty() {
            return Err(CurveError::Empty);
        }
        if knots.len() != pieces.len() + 1
            || knots.iter().any(|k| !k.is_finite())
            || knots.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(CurveError::BadKnots);
        }
        for p in &pieces {
            p.check()?;
        }
        for (k, w) in pieces.windows(2).enumerate() {
            let gap = w[0].end().dist(w[1].start());
            if gap > JOINT_TOL {
                return Err(CurveError::Discontinuous {
                    index: k,
                    next: k + 1,
                    gap,
                });
            }
        }
        Ok(CurveSpec { pieces, knots })
    }

    /// Closed polygon through `vertices` (the last edge returns to the first).
    pub fn polygon(vertices: &[Point]) -> Result<Self, CurveError> {
        let n = vertices.len();
        let pieces = (0..n)
            .map(|i| SegmentPiece::line(vertices[i], vertices[(i + 1) % n]))
            .collect();
        Self::new(pieces)
    }

    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))?;
        Self::new(file.pieces)
    }

    /// The curve-file representation; the parameter interval is not kept.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CurveFile {
            pieces: self.pieces.clone(),
        })
        .expect("pieces serialize")
    }

    pub fn pieces(&self) -> &[SegmentPiece] {
        &self.pieces
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    pub fn param_length(&self) -> f64 {
        let (a, b) = self.interval();
        b - a
    }

    /// Parameter width of piece `k`.
    pub fn piece_width(&self, k: usize) -> f64 {
        self.knots[k + 1] - self.knots[k]
    }

    pub fn start_point(&self) -> Point {
        self.pieces[0].start()
    }

    pub fn end_point(&self) -> Point {
        self.pieces[self.pieces.len() - 1].end()
    }

    pub fn closure_gap(&self) -> f64 {
        self.start_point().dist(self.end_point())
    }

    pub fn is_closed(&self) -> bool {
        self.closure_gap() <= JOINT_TOL
    }

    fn check_range(&self, t: f64) -> Result<(), CurveError> {
        let (start, end) = self.interval();
        if t >= start && t <= end {
            Ok(())
        } else {
            Err(CurveError::OutOfRange { t, start, end })
        }
    }

    /// Piece index and local parameter for `t`; interior knots belong to the
    /// piece on their right. `t` must be in range.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.pieces.len();
        let k = match self.knots[1..n].binary_search_by(|k| k.total_cmp(&t)) {
            Ok(i) => i + 1,
            Err(i) => i,
        };
        let s = (t - self.knots[k]) / self.piece_width(k);
        (k, s.clamp(0.0, 1.0))
    }

    /// Global parameter of local parameter `s` on piece `k`.
    pub fn global_param(&self, k: usize, s: f64) -> f64 {
        if s >= 1.0 {
            return self.knots[k + 1];
        }
        self.knots[k] + s * self.piece_width(k)
    }

    pub fn eval(&self, t: f64) -> Result<Point, CurveError> {
        self.check_range(t)?;
        let (k, s) = self.locate(t);
        Ok(self.pieces[k].eval(s))
    }

    /// One-sided derivative with respect to the global parameter.
    pub fn deriv(&self, t: f64, side: Side) -> Result<Vector, CurveError> {
        self.check_range(t)?;
        let (a, b) = self.interval();
        if (side == Side::Left && t == a) || (side == Side::Right && t == b) {
            return Err(CurveError::OutOfRange { t, start: a, end: b });
        }
        let (mut k, mut s) = self.locate(t);
        if side == Side::Left && s == 0.0 && t == self.knots[k] {
            k -= 1;
            s = 1.0;
        }
        Ok(self.pieces[k].deriv(s) / self.piece_width(k))
    }

    /// The same carrier traversed in the opposite direction, on the same
    /// parameter interval.
    pub fn reversed(&self) -> CurveSpec {
        let (a, b) = self.interval();
        let pieces = self.pieces.iter().rev().map(|p| p.reversed()).collect();
        let knots = self.knots.iter().rev().map(|k| a + b - k).collect();
        CurveSpec { pieces, knots }
    }

    pub(crate) fn map_pieces(&self, map: &Affine) -> Result<CurveSpec, CurveError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.transformed(map))
            .collect::<Result<Vec<_>, _>>()?;
        CurveSpec::with_knots(pieces, self.knots.clone())
    }
}

/// The linear path `t -> (1 - t) z0 + t z1` on `[0, 1]`.
pub fn lin(z0: Point, z1: Point) -> Result<CurveSpec, CurveError> {
    if z0 == z1 {
        return Err(CurveError::CoincidentEndpoints);
    }
    CurveSpec::new(vec![SegmentPiece::line(z0, z1)])
}

/// The sum `p1 + p2`: `p2` is appended with its parameter shifted so that
/// its start lands on the end of `p1`'s interval.
pub fn path_sum(p1: &CurveSpec, p2: &CurveSpec) -> Result<CurveSpec, CurveError> {
    let gap = p1.end_point().dist(p2.start_point());
    if gap > JOINT_TOL {
        return Err(CurveError::EndpointMismatch(gap));
    }
    let (_, b1) = p1.interval();
    let (a2, _) = p2.interval();
    let mut pieces = p1.pieces.clone();
    pieces.extend_from_slice(&p2.pieces);
    let mut knots = p1.knots.clone();
    knots.extend(p2.knots[1..].iter().map(|k| k - a2 + b1));
    CurveSpec::with_knots(pieces, knots)
}

/// Affine, increasing change of parameter onto `[c, d]`.
pub fn reparametrize(spec: &CurveSpec, c: f64, d: f64) -> Result<CurveSpec, CurveError> {
    if !(c < d) || !c.is_finite() || !d.is_finite() {
        return Err(CurveError::EmptyInterval(c, d));
    }
    let (a, b) = spec.interval();
    let scale = (d - c) / (b - a);
    let n = spec.knots.len();
    let mut knots: Vec<f64> = spec.knots.iter().map(|k| c + (k - a) * scale).collect();
    knots[0] = c;
    knots[n - 1] = d;
    CurveSpec::with_knots(spec.pieces.clone(), knots)
}

/// `theta -> exp(i theta)` on `[0, 2 pi]`.
pub fn unit_circular_path() -> CurveSpec {
    CurveSpec::with_knots(vec![SegmentPiece::arc(Point::ORIGIN, 1.0, 0.0, TAU)], vec![0.0, TAU])
        .expect("unit circle is well formed")
}
