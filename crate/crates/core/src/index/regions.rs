//! Radii and distances describing the two complementary regions.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify, ClassifyOptions, Verdict};
use super::crossing::ANGLE_FLOOR;
use super::IndexError;
use crate::curves::{CurveError, JordanCurve, Side};
use crate::geometry::{acute_angle, Point, Rect};

/// `R` such that every `z` with `|z| > R` lies outside. The carrier lies in
/// the disk of radius `max |sample| + slack`; the margin `(b - a)(1 + M) / 2 pi`
/// is added on top.
pub fn outer_radius(jc: &JordanCurve) -> f64 {
    let carrier = jc.carrier();
    let max_norm = carrier.sample_points().iter().fold(0.0f64, |m, p| m.max(p.norm()));
    let (a, b) = jc.spec().interval();
    max_norm + carrier.sample_slack() + (b - a) * (1.0 + jc.deriv_sup()) / TAU
}

/// Radius of a disk about `zeta` on which the index is constant: any
/// certified lower bound on `rho(zeta, car)`.
pub fn constant_index_radius(jc: &JordanCurve, zeta: Point) -> Result<f64, IndexError> {
    let lower = jc.carrier().carrier_distance(zeta).lower;
    if lower > 0.0 {
        Ok(lower)
    } else {
        Err(IndexError::PointTooClose { lower })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    In,
    Out,
}

impl Region {
    fn verdict(self) -> Verdict {
        match self {
            Region::In => Verdict::Inside,
            Region::Out => Verdict::Outside,
        }
    }
}

/// A classified grid covering the carrier, used to estimate distances to
/// either region at the grid's sample scale.
#[derive(Debug, Clone)]
pub struct RegionSampler {
    points: Vec<Point>,
    verdicts: Vec<Verdict>,
    spacing: f64,
    options: ClassifyOptions,
}

impl RegionSampler {
    /// Grid with `resolution` cells across the curve diameter, over the
    /// carrier bounding box expanded by four cells.
    pub fn build(jc: &JordanCurve, resolution: usize, options: ClassifyOptions) -> Result<Self, IndexError> {
        let spacing = jc.diameter() / resolution.max(1) as f64;
        let area = jc.carrier().bounds().expand(4.0 * spacing);
        let nx = (area.width() / spacing).ceil() as usize;
        let ny = (area.height() / spacing).ceil() as usize;
        let points: Vec<Point> = (0..ny)
            .flat_map(|j| {
                (0..nx).map(move |i| {
                    Point::new(
                        area.min.x + (i as f64 + 0.5) * spacing,
                        area.min.y + (j as f64 + 0.5) * spacing,
                    )
                })
            })
            .collect();
        let verdicts = points
            .par_iter()
            .map(|&p| classify(jc, p, &options).map(|c| c.verdict))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RegionSampler {
            points,
            verdicts,
            spacing,
            options,
        })
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// `rho(z, region)` up to the grid spacing: exactly zero when `z` itself
    /// belongs to `region`, otherwise the distance to the nearest grid point
    /// classified into it.
    pub fn distance(&self, jc: &JordanCurve, z: Point, region: Region) -> Result<f64, IndexError> {
        if classify(jc, z, &self.options)?.verdict == region.verdict() {
            return Ok(0.0);
        }
        self.points
            .iter()
            .zip(&self.verdicts)
            .filter(|(_, v)| **v == region.verdict())
            .map(|(p, _)| p.dist(z))
            .min_by(f64::total_cmp)
            .ok_or(IndexError::RegionEmpty(region))
    }

    pub fn count(&self, region: Region) -> usize {
        self.verdicts.iter().filter(|v| **v == region.verdict()).count()
    }

    pub fn bounds(&self) -> Rect {
        Rect::from_points(self.points.iter().copied())
    }
}

/// One-off `rho(z, region)` at the given sample resolution.
pub fn region_distance(
    jc: &JordanCurve,
    z: Point,
    region: Region,
    resolution: usize,
    options: ClassifyOptions,
) -> Result<f64, IndexError> {
    RegionSampler::build(jc, resolution, options)?.distance(jc, z, region)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryWitnesses {
    pub point: Point,
    /// Unit normal (left of the tangent).
    pub normal: Point,
    pub delta: f64,
    pub inside: Point,
    pub outside: Point,
}

/// Finds `z_in`, `z_out` within `delta <= delta_max` of `gamma(t)` along the
/// normal, one in each region. Requires the curve to be smooth at `t`.
pub fn boundary_witnesses(
    jc: &JordanCurve,
    t: f64,
    delta_max: f64,
    options: &ClassifyOptions,
) -> Result<BoundaryWitnesses, IndexError> {
    let spec = jc.spec();
    let (a, b) = spec.interval();
    if !(a..=b).contains(&t) {
        return Err(IndexError::Curve(CurveError::OutOfRange { t, start: a, end: b }));
    }
    let (k, _) = spec.locate(t);
    if !jc.smoothness()[k].is_smooth() {
        return Err(IndexError::NotSmooth { t });
    }
    // Left and right derivatives, with the closing joint wrapped around.
    let left = if t == a {
        spec.deriv(b, Side::Left)
    } else {
        spec.deriv(t, Side::Left)
    };
    let right = if t == b {
        spec.deriv(a, Side::Right)
    } else {
        spec.deriv(t, Side::Right)
    };
    let (left, right) = (left?, right?);
    let kink = left.dot(right) <= 0.0 || acute_angle(left, right).map_or(true, |ang| ang >= ANGLE_FLOOR);
    if kink {
        return Err(IndexError::NotSmooth { t });
    }
    let tangent = (left + right).normalized().map_err(|_| IndexError::NotSmooth { t })?;
    let normal = tangent.perp();
    let point = spec.eval(t)?;
    let floor = 2.0 * options.band(jc);
    let mut delta = delta_max;
    while delta >= floor {
        let plus = point + normal * delta;
        let minus = point - normal * delta;
        let vp = classify(jc, plus, options)?.verdict;
        let vm = classify(jc, minus, options)?.verdict;
        match (vp, vm) {
            (Verdict::Inside, Verdict::Outside) => {
                return Ok(BoundaryWitnesses {
                    point,
                    normal,
                    delta,
                    inside: plus,
                    outside: minus,
                })
            }
            (Verdict::Outside, Verdict::Inside) => {
                return Ok(BoundaryWitnesses {
                    point,
                    normal,
                    delta,
                    inside: minus,
                    outside: plus,
                })
            }
            _ => delta /= 2.0,
        }
    }
    Err(IndexError::WitnessNotFound { t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{unit_circular_path, validate_jordan, ValidationOptions};

    fn circle() -> JordanCurve {
        validate_jordan(&unit_circular_path(), ValidationOptions::default()).unwrap()
    }

    #[test]
    fn circle_outer_radius() {
        let r = outer_radius(&circle());
        // 1 + (1 + 1.01) plus the skeleton slack.
        assert!(r > 3.01 && r < 3.03, "{r}");
    }

    #[test]
    fn circle_constant_radius() {
        let jc = circle();
        assert_eq!(constant_index_radius(&jc, Point::ORIGIN).unwrap(), 1.0);
        assert!(constant_index_radius(&jc, Point::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn circle_region_distance() {
        let jc = circle();
        let s = RegionSampler::build(&jc, 64, ClassifyOptions::default()).unwrap();
        let d = s.distance(&jc, Point::new(2.0, 0.0), Region::In).unwrap();
        assert!((d - 1.0).abs() <= s.spacing(), "{d}");
        assert_eq!(s.distance(&jc, Point::new(0.5, 0.0), Region::In).unwrap(), 0.0);
    }

    #[test]
    fn circle_witnesses() {
        let jc = circle();
        let w = boundary_witnesses(&jc, 1.0, 0.1, &ClassifyOptions::default()).unwrap();
        assert!(w.inside.norm() < 1.0 && w.outside.norm() > 1.0);
        assert!(w.inside.dist(w.point) <= 0.1 + 1e-12);
        // The closing joint of the circle is smooth.
        assert!(boundary_witnesses(&jc, 0.0, 0.1, &ClassifyOptions::default()).is_ok());
    }
}
