//! Reference curves used by tests, benchmarks and the command-line tool.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::curves::{unit_circular_path, CurveSpec, SegmentPiece};
use crate::geometry::{Affine, Point};

/// Unit circle, counter-clockwise on `[0, 2 pi]`.
pub fn circle() -> CurveSpec {
    unit_circular_path()
}

/// Four-centre oval with half-axes 2 and 1, built from eight circular arcs
/// and rotated by 30 degrees.
pub fn rotated_oval() -> CurveSpec {
    let alpha = 4f64.atan2(3.0);
    let arcs = [
        (Point::new(1.5, 0.0), 0.5, -alpha, 2.0 * alpha),
        (Point::new(0.0, -2.0), 3.0, alpha, PI - 2.0 * alpha),
        (Point::new(-1.5, 0.0), 0.5, PI - alpha, 2.0 * alpha),
        (Point::new(0.0, 2.0), 3.0, PI + alpha, PI - 2.0 * alpha),
    ];
    let rot = Affine::rotate(PI / 6.0);
    let pieces = arcs
        .iter()
        .flat_map(|&(c, r, start, sweep)| {
            [
                SegmentPiece::arc(c, r, start, sweep / 2.0),
                SegmentPiece::arc(c, r, start + sweep / 2.0, sweep / 2.0),
            ]
        })
        .map(|p| p.transformed(&rot).expect("rotation preserves arcs"))
        .collect();
    CurveSpec::new(pieces).expect("oval pieces join")
}

/// Square of side 2 centred at the origin with corners rounded to radius 0.25.
pub fn rounded_square() -> CurveSpec {
    let r = 0.25;
    let e = 1.0 - r;
    let pieces = vec![
        SegmentPiece::line(Point::new(-e, -1.0), Point::new(e, -1.0)),
        SegmentPiece::arc(Point::new(e, -e), r, -FRAC_PI_2, FRAC_PI_2),
        SegmentPiece::line(Point::new(1.0, -e), Point::new(1.0, e)),
        SegmentPiece::arc(Point::new(e, e), r, 0.0, FRAC_PI_2),
        SegmentPiece::line(Point::new(e, 1.0), Point::new(-e, 1.0)),
        SegmentPiece::arc(Point::new(-e, e), r, FRAC_PI_2, FRAC_PI_2),
        SegmentPiece::line(Point::new(-1.0, e), Point::new(-1.0, -e)),
        SegmentPiece::arc(Point::new(-e, -e), r, PI, FRAC_PI_2),
    ];
    CurveSpec::new(pieces).expect("rounded square pieces join")
}

/// Closed Catmull-Rom spline through the polar samples `r(theta_i)`,
/// converted to cubic Bezier pieces.
pub fn catmull_rom_polar(r: impl Fn(f64) -> f64, n: usize) -> CurveSpec {
    let pts: Vec<Point> = (0..n)
        .map(|i| {
            let th = TAU * i as f64 / n as f64;
            Point::from_angle(th) * r(th)
        })
        .collect();
    let at = |i: isize| pts[i.rem_euclid(n as isize) as usize];
    let pieces = (0..n as isize)
        .map(|i| {
            let p0 = at(i);
            let p1 = at(i + 1);
            let c1 = p0 + (p1 - at(i - 1)) / 6.0;
            let c2 = p1 - (at(i + 2) - p0) / 6.0;
            SegmentPiece::cubic(p0, c1, c2, p1)
        })
        .collect();
    CurveSpec::new(pieces).expect("spline pieces join")
}

/// Smooth convex-ish blob `r = 1 + 0.2 cos 3 theta` from 12 cubic pieces.
pub fn cubic_blob() -> CurveSpec {
    catmull_rom_polar(|th| 1.0 + 0.2 * (3.0 * th).cos(), 12)
}

/// Non-convex kidney `r = 1 + 0.35 cos 2 theta + 0.2 sin theta` from 16
/// cubic pieces.
pub fn kidney() -> CurveSpec {
    catmull_rom_polar(|th| 1.0 + 0.35 * (2.0 * th).cos() + 0.2 * th.sin(), 16)
}

/// Two unit circles touching at the origin, traversed as a figure eight.
/// Closed but not simple.
pub fn figure_eight() -> CurveSpec {
    CurveSpec::new(vec![
        SegmentPiece::arc(Point::new(-1.0, 0.0), 1.0, 0.0, TAU),
        SegmentPiece::arc(Point::new(1.0, 0.0), 1.0, PI, -TAU),
    ])
    .expect("figure eight pieces join")
}

/// The five simple closed reference curves, by name.
pub fn jordan_fixtures() -> Vec<(&'static str, CurveSpec)> {
    vec![
        ("circle", circle()),
        ("oval", rotated_oval()),
        ("rounded_square", rounded_square()),
        ("blob", cubic_blob()),
        ("kidney", kidney()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{validate_jordan, ValidationFailure, ValidationOptions};

    #[test]
    fn fixtures_are_jordan_curves() {
        for (name, spec) in jordan_fixtures() {
            assert!(spec.is_closed(), "{name}");
            validate_jordan(&spec, ValidationOptions::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn oval_extent() {
        let back = Affine::rotate(-PI / 6.0);
        let pts: Vec<Point> = (0..800)
            .map(|i| back.apply(rotated_oval().eval(8.0 * i as f64 / 800.0).unwrap()))
            .collect();
        let max_x = pts.iter().fold(0.0f64, |m, p| m.max(p.x.abs()));
        let max_y = pts.iter().fold(0.0f64, |m, p| m.max(p.y.abs()));
        assert!((max_x - 2.0).abs() < 1e-9 && (max_y - 1.0).abs() < 1e-4);
    }

    #[test]
    fn figure_eight_rejected() {
        let err = validate_jordan(&figure_eight(), ValidationOptions::default()).unwrap_err();
        assert!(matches!(err, ValidationFailure::J1Failure { .. }));
    }
}
