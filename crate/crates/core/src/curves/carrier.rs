use super::{CurveSpec, SegmentPiece};
use crate::geometry::{Point, Rect};

/// Samples per piece in the carrier skeleton.
const SAMPLES_PER_PIECE: usize = 256;

/// Target width of cubic distance enclosures, relative to the curve scale.
const CUBIC_DISTANCE_TOL: f64 = 1e-12;

/// Certified bounds on the distance from a point to the carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEnclosure {
    pub lower: f64,
    pub upper: f64,
}

impl DistanceEnclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, d: f64) -> bool {
        self.lower <= d && d <= self.upper
    }
}

/// Acceleration structure for distance queries against the carrier of a
/// path.
#[derive(Debug, Clone)]
pub struct CarrierIndex {
    pieces: Vec<SegmentPiece>,
    boxes: Vec<Rect>,
    bounds: Rect,
    /// Upper bound on `|d/ds|` per piece, local parameter.
    lipschitz: Vec<f64>,
    sample_points: Vec<Point>,
    sample_params: Vec<f64>,
    samples_per_piece: usize,
    tol: f64,
    diameter: f64,
}

impl CarrierIndex {
    pub fn build(spec: &CurveSpec) -> Self {
        let pieces = spec.pieces().to_vec();
        let boxes: Vec<Rect> = pieces.iter().map(|p| p.bbox()).collect();
        let bounds = boxes[1..].iter().fold(boxes[0], |acc, b| acc.union(b));
        let lipschitz = pieces.iter().map(|p| p.speed_bounds().1).collect();
        let n = SAMPLES_PER_PIECE;
        let mut sample_points = Vec::with_capacity(pieces.len() * n + 1);
        let mut sample_params = Vec::with_capacity(pieces.len() * n + 1);
        for (k, piece) in pieces.iter().enumerate() {
            for j in 0..n {
                let s = j as f64 / n as f64;
                sample_points.push(piece.eval(s));
                sample_params.push(spec.global_param(k, s));
            }
        }
        sample_points.push(spec.end_point());
        sample_params.push(spec.interval().1);

        let tol = CUBIC_DISTANCE_TOL * bounds.diagonal().max(1.0);
        let mut index = CarrierIndex {
            pieces,
            boxes,
            bounds,
            lipschitz,
            sample_points,
            sample_params,
            samples_per_piece: n,
            tol,
            diameter: 0.0,
        };
        index.diameter = index.estimate_diameter();
        index
    }

    fn estimate_diameter(&self) -> f64 {
        let stride = (self.sample_points.len() / 2048).max(1);
        let pts: Vec<Point> = self.sample_points.iter().step_by(stride).copied().collect();
        let mut best = 0.0f64;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                best = best.max(p.dist(*q));
            }
        }
        best
    }

    /// Enclosure of `rho(z, car)`. Lines and arcs are handled in closed form;
    /// cubic pieces are refined by subdivision until the enclosure width is
    /// below `1e-12` times the curve scale.
    pub fn carrier_distance(&self, z: Point) -> DistanceEnclosure {
        let mut order: Vec<(f64, usize)> = self.boxes.iter().enumerate().map(|(k, b)| (b.dist(z), k)).collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut upper = f64::INFINITY;
        let mut lower = f64::INFINITY;
        for (box_dist, k) in order {
            if box_dist >= upper {
                lower = lower.min(box_dist);
                break;
            }
            let (lo, hi) = self.pieces[k].distance(z, upper, self.tol);
            upper = upper.min(hi);
            lower = lower.min(lo);
        }
        DistanceEnclosure {
            lower: lower.min(upper),
            upper,
        }
    }

    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    /// Largest distance between skeleton samples; a lower bound on the
    /// diameter within `lipschitz * spacing`.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn piece_boxes(&self) -> &[Rect] {
        &self.boxes
    }

    pub fn lipschitz(&self) -> &[f64] {
        &self.lipschitz
    }

    pub fn sample_points(&self) -> &[Point] {
        &self.sample_points
    }

    pub fn sample_params(&self) -> &[f64] {
        &self.sample_params
    }

    /// Local parameter spacing of the skeleton.
    pub fn sample_spacing(&self) -> f64 {
        1.0 / self.samples_per_piece as f64
    }

    /// Largest distance from a carrier point to its nearest skeleton sample.
    pub fn sample_slack(&self) -> f64 {
        let h = self.sample_spacing();
        self.lipschitz.iter().fold(0.0, |m: f64, l| m.max(l * h / 2.0))
    }
}
