//! Parity of ray crossings.

use serde::Serialize;

use super::IndexError;
use crate::curves::{JordanCurve, SegmentPiece};
use crate::geometry::{acute_angle, Point, Vector};

/// Crossings whose angle with the ray is below this are treated as tangential.
pub const ANGLE_FLOOR: f64 = 1e-4;

/// Two crossings closer than this multiple of the diameter are not isolated.
pub const ISOLATION_FACTOR: f64 = 1e-6;

/// Hits within this local parameter distance of a piece end count as a joint.
const JOINT_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HitQuality {
    Transversal,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingRecord {
    /// Global curve parameter of the hit.
    pub t: f64,
    pub point: Point,
    /// Tangent at the hit (the outgoing one at a joint).
    pub tangent: Vector,
    /// Acute angle between ray and tangent; at joints the smaller of the two.
    pub angle: f64,
    pub quality: HitQuality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingResult {
    pub direction: Vector,
    pub count: usize,
    /// `count mod 2`.
    pub index: u8,
    pub records: Vec<CrossingRecord>,
}

enum Hit {
    Interior { k: usize, s: f64 },
    Joint(usize),
    Degenerate { k: usize, s: f64 },
}

/// Counts crossings of the ray `zeta + lambda direction` with the carrier.
/// Fails with [`IndexError::DegenerateRay`] when any hit is tangential,
/// passes through a joint without switching sides, or is not isolated.
pub fn ray_crossing_index(jc: &JordanCurve, zeta: Point, direction: Vector) -> Result<CrossingResult, IndexError> {
    let enc = jc.carrier().carrier_distance(zeta);
    if !(enc.lower > 0.0) {
        return Err(IndexError::PointTooClose { lower: enc.lower });
    }
    let dir = direction.normalized().map_err(|_| IndexError::ZeroDirection)?;
    let spec = jc.spec();
    let pieces = spec.pieces();
    let n = pieces.len();

    let mut hits = Vec::new();
    for (k, piece) in pieces.iter().enumerate() {
        for raw in piece.ray_hits(zeta, dir) {
            if raw.degenerate {
                hits.push(Hit::Degenerate { k, s: raw.s });
            } else if raw.s <= JOINT_SNAP {
                hits.push(Hit::Joint(k));
            } else if raw.s >= 1.0 - JOINT_SNAP {
                hits.push(Hit::Joint((k + 1) % n));
            } else {
                hits.push(Hit::Interior { k, s: raw.s });
            }
        }
    }

    let mut joints_seen = vec![false; n];
    let mut records = Vec::new();
    for hit in hits {
        let record = match hit {
            Hit::Interior { k, s } => {
                let tangent = pieces[k].deriv(s);
                let angle = acute_angle(tangent, dir).unwrap_or(0.0);
                CrossingRecord {
                    t: spec.global_param(k, s),
                    point: pieces[k].eval(s),
                    tangent,
                    angle,
                    quality: if angle >= ANGLE_FLOOR {
                        HitQuality::Transversal
                    } else {
                        HitQuality::Degenerate
                    },
                }
            }
            Hit::Degenerate { k, s } => CrossingRecord {
                t: spec.global_param(k, s),
                point: pieces[k].eval(s),
                tangent: pieces[k].deriv(s),
                angle: 0.0,
                quality: HitQuality::Degenerate,
            },
            Hit::Joint(j) => {
                if std::mem::replace(&mut joints_seen[j], true) {
                    continue;
                }
                joint_record(pieces, spec.knots()[j], j, dir)
            }
        };
        records.push(record);
    }

    // Order along the ray and check isolation.
    records.sort_by(|a, b| dir.dot(a.point - zeta).total_cmp(&dir.dot(b.point - zeta)));
    let window = ISOLATION_FACTOR * jc.diameter();
    for i in 1..records.len() {
        if records[i].point.dist(records[i - 1].point) < window {
            records[i].quality = HitQuality::Degenerate;
            records[i - 1].quality = HitQuality::Degenerate;
        }
    }

    if records.iter().any(|r| r.quality == HitQuality::Degenerate) {
        return Err(IndexError::DegenerateRay {
            direction: dir,
            records,
        });
    }
    let count = records.len();
    Ok(CrossingResult {
        direction: dir,
        count,
        index: (count % 2) as u8,
        records,
    })
}

/// A joint is crossed transversally when the incoming and outgoing tangents
/// lie strictly on the same side of the ray.
fn joint_record(pieces: &[SegmentPiece], t: f64, j: usize, dir: Vector) -> CrossingRecord {
    let n = pieces.len();
    let incoming = pieces[(j + n - 1) % n].deriv(1.0);
    let outgoing = pieces[j].deriv(0.0);
    let angle = acute_angle(incoming, dir)
        .unwrap_or(0.0)
        .min(acute_angle(outgoing, dir).unwrap_or(0.0));
    let same_side = dir.cross(incoming) * dir.cross(outgoing) > 0.0;
    CrossingRecord {
        t,
        point: pieces[j].start(),
        tangent: outgoing,
        angle,
        quality: if same_side && angle >= ANGLE_FLOOR {
            HitQuality::Transversal
        } else {
            HitQuality::Degenerate
        },
    }
}
