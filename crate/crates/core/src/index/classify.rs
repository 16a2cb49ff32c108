use serde::Serialize;

use super::crossing::{ray_crossing_index, CrossingResult};
use super::winding::{winding_number, WindingResult, DEFAULT_WINDING_TOL};
use super::IndexError;
use crate::curves::{DistanceEnclosure, JordanCurve};
use crate::geometry::{Point, Vector};

/// Golden angle `pi (3 - sqrt 5)`, used to rotate retried rays.
pub const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Default near-carrier band, relative to the curve diameter.
pub const DEFAULT_BAND_FACTOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Inside,
    Outside,
    NearCarrier,
}

impl Verdict {
    /// `1` inside, `0` outside, `-1` near the carrier.
    pub fn code(self) -> i8 {
        match self {
            Verdict::Inside => 1,
            Verdict::Outside => 0,
            Verdict::NearCarrier => -1,
        }
    }

    fn from_index(index: u8) -> Self {
        if index == 1 {
            Verdict::Inside
        } else {
            Verdict::Outside
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Points whose carrier distance is certainly below this are reported as
    /// [`Verdict::NearCarrier`]. `None` means `1e-6` times the diameter.
    pub eps_band: Option<f64>,
    /// Error budget for the winding integral.
    pub winding_tol: f64,
    pub direction: Vector,
    /// Ray directions tried before giving up on the crossing oracle.
    pub max_rays: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            eps_band: None,
            winding_tol: DEFAULT_WINDING_TOL,
            direction: Point::new(1.0, 0.0),
            max_rays: 32,
        }
    }
}

impl ClassifyOptions {
    pub fn band(&self, jc: &JordanCurve) -> f64 {
        self.eps_band.unwrap_or(DEFAULT_BAND_FACTOR * jc.diameter())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub distance: DistanceEnclosure,
    pub winding: Option<WindingResult>,
    pub crossing: Option<CrossingResult>,
}

fn ray_direction(d0: Vector, attempt: usize) -> Vector {
    let r = Point::from_angle(GOLDEN_ANGLE * attempt as f64);
    d0.cmul(r)
}

/// Decides whether `zeta` lies in the bounded or unbounded component of the
/// complement of the carrier. Both the winding integral and the ray-crossing
/// parity are evaluated; if both succeed they must agree.
pub fn classify(jc: &JordanCurve, zeta: Point, opts: &ClassifyOptions) -> Result<Classification, IndexError> {
    let distance = jc.carrier().carrier_distance(zeta);
    if distance.upper < opts.band(jc) {
        return Ok(Classification {
            verdict: Verdict::NearCarrier,
            distance,
            winding: None,
            crossing: None,
        });
    }

    let winding = match winding_number(jc, zeta, opts.winding_tol) {
        Ok(w) => Some(w),
        Err(
            IndexError::PointTooClose { .. } | IndexError::BudgetNotMet { .. } | IndexError::RoundingRejected { .. },
        ) => None,
        Err(e) => return Err(e),
    };

    let mut crossing = None;
    for attempt in 0..opts.max_rays.max(1) {
        match ray_crossing_index(jc, zeta, ray_direction(opts.direction, attempt)) {
            Ok(c) => {
                crossing = Some(c);
                break;
            }
            Err(IndexError::DegenerateRay { .. }) => continue,
            Err(IndexError::PointTooClose { .. }) => break,
            Err(e) => return Err(e),
        }
    }

    let verdict = match (&winding, &crossing) {
        (Some(w), Some(c)) => {
            if w.rounded.unsigned_abs() != c.index as u64 {
                return Err(IndexError::OracleDisagreement {
                    point: zeta,
                    winding: w.rounded,
                    parity: c.index,
                });
            }
            Verdict::from_index(c.index)
        }
        (None, Some(c)) => Verdict::from_index(c.index),
        (Some(w), None) => match w.rounded.unsigned_abs() {
            0 => Verdict::Outside,
            1 => Verdict::Inside,
            _ => {
                return Err(IndexError::UnexpectedWinding {
                    point: zeta,
                    winding: w.rounded,
                })
            }
        },
        (None, None) => return Err(IndexError::Unclassifiable { point: zeta }),
    };
    Ok(Classification {
        verdict,
        distance,
        winding,
        crossing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{unit_circular_path, validate_jordan, ValidationOptions};

    #[test]
    fn circle_verdicts() {
        let jc = validate_jordan(&unit_circular_path(), ValidationOptions::default()).unwrap();
        let o = ClassifyOptions::default();
        assert_eq!(classify(&jc, Point::ORIGIN, &o).unwrap().verdict, Verdict::Inside);
        assert_eq!(
            classify(&jc, Point::new(2.0, 0.0), &o).unwrap().verdict,
            Verdict::Outside
        );
        assert_eq!(
            classify(&jc, Point::new(1.0, 0.0), &o).unwrap().verdict,
            Verdict::NearCarrier
        );
        assert_eq!(
            classify(&jc, Point::new(1.0 + 1e-7, 0.0), &o).unwrap().verdict,
            Verdict::NearCarrier
        );
    }

    #[test]
    fn golden_rotation_is_unit() {
        for k in 0..40 {
            assert!((ray_direction(Point::new(1.0, 0.0), k).norm() - 1.0).abs() < 1e-12);
        }
        assert!((GOLDEN_ANGLE - std::f64::consts::PI * (3.0 - 5f64.sqrt())).abs() < 1e-15);
    }
}
