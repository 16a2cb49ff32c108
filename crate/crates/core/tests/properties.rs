use jordan_core::curves::{lin, path_sum, reparametrize};
use jordan_core::fixtures::{cubic_blob, jordan_fixtures, kidney};
use jordan_core::geometry::{dist_point_segment, line_unique_intersection, Line, Segment};
use jordan_core::index::{ray_crossing_index, winding_number};
use jordan_core::{
    classify, validate_jordan, ClassifyOptions, CurveSpec, JordanCurve, Point, ValidationOptions, Verdict,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn blob() -> &'static JordanCurve {
    static JC: OnceLock<JordanCurve> = OnceLock::new();
    JC.get_or_init(|| validate_jordan(&cubic_blob(), ValidationOptions::default()).unwrap())
}

fn kidney_curve() -> &'static JordanCurve {
    static JC: OnceLock<JordanCurve> = OnceLock::new();
    JC.get_or_init(|| validate_jordan(&kidney(), ValidationOptions::default()).unwrap())
}

/// Brute-force distance to a path: dense uniform samples of every piece.
fn sampled_distance(spec: &CurveSpec, z: Point, per_piece: usize) -> f64 {
    spec.pieces()
        .iter()
        .flat_map(|p| (0..=per_piece).map(move |i| p.eval(i as f64 / per_piece as f64)))
        .map(|q| q.dist(z))
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn segment_distance_matches_sampling(a in point(), b in point(), z in point()) {
        prop_assume!(a.dist(b) > 1e-3);
        let seg = Segment::new(a, b).unwrap();
        let d = dist_point_segment(z, &seg);
        let n = 10_000;
        let sampled = (0..=n)
            .map(|i| a.lerp(b, i as f64 / n as f64).dist(z))
            .fold(f64::INFINITY, f64::min);
        prop_assert!(d <= sampled + 1e-12);
        prop_assert!(sampled - d <= a.dist(b) / n as f64 + 1e-12);
    }

    #[test]
    fn intersection_is_symmetric(p in point(), u in point(), q in point(), v in point()) {
        prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
        let l1 = Line::new(p, u).unwrap();
        let l2 = Line::new(q, v).unwrap();
        let r12 = line_unique_intersection(&l1, &l2, 1e-6);
        let r21 = line_unique_intersection(&l2, &l1, 1e-6);
        prop_assert_eq!(r12, r21);
        if let Ok((x, _)) = r12 {
            let scale = 1.0 + x.norm() + p.norm() + q.norm();
            prop_assert!(l1.signed_dist(x).abs() <= 1e-9 * scale);
            prop_assert!(l2.signed_dist(x).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn reparametrization_round_trip(c in -5.0..5.0f64, len in 0.1..20.0f64, s in 0.0..1.0f64) {
        for (_, spec) in jordan_fixtures() {
            let (a, b) = spec.interval();
            let there = reparametrize(&spec, c, c + len).unwrap();
            let back = reparametrize(&there, a, b).unwrap();
            let t = a + s * (b - a);
            let tau = c + s * len;
            let p = spec.eval(t).unwrap();
            prop_assert!(there.eval(tau).unwrap().dist(p) < 1e-9);
            prop_assert!(back.eval(t).unwrap().dist(p) < 1e-9);
            prop_assert_eq!(there.start_point(), spec.start_point());
        }
    }

    #[test]
    fn path_sum_concatenates(z0 in point(), z1 in point(), z2 in point(), s in 0.0..1.0f64) {
        prop_assume!(z0.dist(z1) > 1e-3 && z1.dist(z2) > 1e-3);
        let p = lin(z0, z1).unwrap();
        let q = lin(z1, z2).unwrap();
        let sum = path_sum(&p, &q).unwrap();
        prop_assert_eq!(sum.interval(), (0.0, 2.0));
        prop_assert!(sum.eval(s).unwrap().dist(z0.lerp(z1, s)) < 1e-9);
        prop_assert!(sum.eval(1.0 + s).unwrap().dist(z1.lerp(z2, s)) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn carrier_enclosure_contains_sampled_distance(x in -1.6..1.6f64, y in -1.6..1.6f64) {
        let jc = blob();
        let z = Point::new(x, y);
        let enc = jc.carrier().carrier_distance(z);
        let per_piece = 1_000_000 / jc.spec().len();
        let sampled = sampled_distance(jc.spec(), z, per_piece);
        // Sampling over-estimates by at most half the sample spacing.
        let slack = jc.carrier().lipschitz().iter().fold(0.0f64, |m, l| m.max(*l)) / per_piece as f64;
        prop_assert!(enc.lower <= sampled + 1e-12);
        prop_assert!(enc.upper >= sampled - slack);
        prop_assert!(enc.width() <= 1e-9);
    }

    #[test]
    fn parity_is_direction_independent(x in -1.6..1.6f64, y in -1.6..1.6f64, seed in 0.0..6.3f64) {
        let jc = kidney_curve();
        let z = Point::new(x, y);
        prop_assume!(jc.carrier().carrier_distance(z).lower > 1e-6);
        let parities: Vec<u8> = (0..16)
            .filter_map(|k| ray_crossing_index(jc, z, Point::from_angle(seed + 0.39 * k as f64)).ok())
            .map(|c| c.index)
            .collect();
        prop_assert!(!parities.is_empty());
        prop_assert!(parities.iter().all(|p| *p == parities[0]));
    }

    #[test]
    fn reversal_negates_winding(x in -1.6..1.6f64, y in -1.6..1.6f64) {
        let jc = blob();
        let z = Point::new(x, y);
        prop_assume!(jc.carrier().carrier_distance(z).lower > 1e-3);
        let rev = validate_jordan(&jc.spec().reversed(), ValidationOptions::default()).unwrap();
        let w = winding_number(jc, z, 0.05).unwrap().rounded;
        let wr = winding_number(&rev, z, 0.05).unwrap().rounded;
        prop_assert_eq!(w, -wr);
    }

    #[test]
    fn classification_constant_along_clear_polylines(
        a in (-0.3..0.3f64, -0.3..0.3f64),
        b in (-0.3..0.3f64, -0.3..0.3f64),
    ) {
        // The kidney has radius at least 0.45, so segments in this box stay
        // off the carrier.
        let jc = kidney_curve();
        let (a, b) = (Point::new(a.0, a.1), Point::new(b.0, b.1));
        let opts = ClassifyOptions::default();
        let mut seen = Vec::new();
        for i in 0..=50 {
            let z = a.lerp(b, i as f64 / 50.0);
            prop_assume!(jc.carrier().carrier_distance(z).lower >= opts.band(jc));
            seen.push(classify(jc, z, &opts).unwrap().verdict);
        }
        prop_assert!(seen.iter().all(|v| *v == Verdict::Inside));
    }
}
