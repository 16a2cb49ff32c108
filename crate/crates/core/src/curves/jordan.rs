//! Sample-scale certification of the Jordan conditions.
//!
//! Injectivity is checked on a skeleton of parameter samples at spacing
//! `h / 4`. A pair of samples at wrap-aware parameter separation `>= h` whose
//! chord is no longer than the sum of their Lipschitz radii (the farthest a
//! carrier point can be from its nearest sample) is reported as a
//! self-intersection. Inverse continuity is recorded as an empirical
//! `(eps, delta(eps))` table on the interior compacta `[a + eps/2, b - eps/2]`.

use std::collections::HashMap;

use thiserror::Error;

use super::{CarrierIndex, CurveError, CurveSpec, JOINT_TOL};
use crate::geometry::{Affine, Point};

/// `M` is reported as this factor times the largest speed bound, so that
/// `|gamma'| < M` holds strictly.
pub const DERIV_SUP_MARGIN: f64 = 1.01;

/// Skeleton samples per unit of `h` in the injectivity check.
const J1_OVERSAMPLE: f64 = 4.0;

/// Uniform samples used for the inverse-continuity table.
const J2_SAMPLES: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    /// Parameter separation `h` below which pairs are not compared.
    pub sample_resolution: f64,
    /// Reject pieces whose derivative is not bounded away from zero.
    pub require_smooth: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            sample_resolution: 1e-3,
            require_smooth: true,
        }
    }
}

impl ValidationOptions {
    pub fn with_resolution(h: f64) -> Self {
        ValidationOptions {
            sample_resolution: h,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationFailure {
    #[error("path is not closed: |gamma(a) - gamma(b)| = {gap:e}")]
    ClosureFailure { gap: f64 },
    #[error("self-intersection at sample scale: |gamma({t}) - gamma({t_prime})| = {chord:e} <= {threshold:e}")]
    J1Failure {
        t: f64,
        t_prime: f64,
        chord: f64,
        threshold: f64,
    },
    #[error("piece {piece} has no positive lower bound on |gamma'|")]
    NonSmoothPiece { piece: usize },
    #[error("sample resolution must be positive and smaller than the parameter interval, got {0}")]
    BadResolution(f64),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// What the injectivity check examined.
#[derive(Debug, Clone, PartialEq)]
pub struct J1Certificate {
    pub sample_resolution: f64,
    pub samples: usize,
    /// Largest parameter spacing between consecutive skeleton samples.
    pub max_spacing: f64,
    /// Lower bound on every sampled chord at separation `>= h`.
    pub min_gap: f64,
}

/// `(eps, delta(eps))`: sampled pairs in `[a + eps/2, b - eps/2]` with
/// `|t - t'| >= eps` have chord at least `delta(eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct J2Certificate {
    pub samples: usize,
    pub entries: Vec<(f64, f64)>,
}

impl J2Certificate {
    /// The entry for the largest tabulated `eps' <= eps`.
    pub fn delta_for(&self, eps: f64) -> Option<f64> {
        self.entries
            .iter()
            .filter(|(e, _)| *e <= eps)
            .map(|&(_, d)| d)
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))))
    }
}

/// Bounds on `|gamma'|` over one piece, in units of the global parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieceSmoothness {
    pub lower: Option<f64>,
    pub upper: f64,
}

impl PieceSmoothness {
    pub fn is_smooth(&self) -> bool {
        self.lower.is_some_and(|m| m > 0.0)
    }
}

/// A closed path that passed [`validate_jordan`], with its certificates and
/// carrier index.
#[derive(Debug, Clone)]
pub struct JordanCurve {
    spec: CurveSpec,
    j1: J1Certificate,
    j2: J2Certificate,
    smoothness: Vec<PieceSmoothness>,
    deriv_sup: f64,
    carrier: CarrierIndex,
    options: ValidationOptions,
}

impl JordanCurve {
    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn j1_certificate(&self) -> &J1Certificate {
        &self.j1
    }

    pub fn j2_certificate(&self) -> &J2Certificate {
        &self.j2
    }

    pub fn smoothness(&self) -> &[PieceSmoothness] {
        &self.smoothness
    }

    /// `M` with `|gamma'(t)| < M` wherever the derivative exists.
    pub fn deriv_sup(&self) -> f64 {
        self.deriv_sup
    }

    pub fn carrier(&self) -> &CarrierIndex {
        &self.carrier
    }

    pub fn options(&self) -> ValidationOptions {
        self.options
    }

    pub fn diameter(&self) -> f64 {
        self.carrier.diameter()
    }
}

struct Skeleton {
    params: Vec<f64>,
    points: Vec<Point>,
    /// Radius within which each sample's neighbourhood of the carrier lies.
    radius: Vec<f64>,
    max_spacing: f64,
}

fn skeleton(spec: &CurveSpec, smooth: &[PieceSmoothness], h: f64) -> Skeleton {
    let n_pieces = spec.len();
    let step = h / J1_OVERSAMPLE;
    let mut params = Vec::new();
    let mut points = Vec::new();
    let mut radius = Vec::new();
    let mut max_spacing = 0.0f64;
    let own_radius: Vec<f64> = (0..n_pieces)
        .map(|k| {
            let w = spec.piece_width(k);
            let n = (w / step).ceil().max(1.0);
            smooth[k].upper * (w / n) / 2.0
        })
        .collect();
    for (k, piece) in spec.pieces().iter().enumerate() {
        let w = spec.piece_width(k);
        let n = (w / step).ceil().max(1.0) as usize;
        max_spacing = max_spacing.max(w / n as f64);
        let prev = own_radius[(k + n_pieces - 1) % n_pieces];
        for j in 0..n {
            let s = j as f64 / n as f64;
            params.push(spec.global_param(k, s));
            points.push(piece.eval(s));
            radius.push(if j == 0 { own_radius[k].max(prev) } else { own_radius[k] });
        }
    }
    Skeleton {
        params,
        points,
        radius,
        max_spacing,
    }
}

fn check_injective(spec: &CurveSpec, sk: &Skeleton, h: f64) -> Result<f64, ValidationFailure> {
    let period = spec.param_length();
    let search = 4.0 * sk.radius.iter().fold(0.0f64, |m, &r| m.max(r));
    let cell = |p: Point| ((p.x / search).floor() as i64, (p.y / search).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for (i, &p) in sk.points.iter().enumerate() {
        grid.entry(cell(p)).or_default().push(i as u32);
    }
    let mut min_gap = search;
    let mut worst: Option<(f64, usize, usize, f64)> = None;
    for (i, &p) in sk.points.iter().enumerate() {
        let (cx, cy) = cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &j in bucket {
                    let j = j as usize;
                    if j <= i {
                        continue;
                    }
                    let d = (sk.params[i] - sk.params[j]).abs();
                    if d.min(period - d) < h {
                        continue;
                    }
                    let chord = p.dist(sk.points[j]);
                    let threshold = sk.radius[i] + sk.radius[j];
                    if chord <= threshold {
                        let ratio = chord / threshold;
                        if worst.is_none_or(|w| ratio < w.0) {
                            worst = Some((ratio, i, j, threshold));
                        }
                    } else {
                        min_gap = min_gap.min(chord);
                    }
                }
            }
        }
    }
    if let Some((_, i, j, threshold)) = worst {
        return Err(ValidationFailure::J1Failure {
            t: sk.params[i],
            t_prime: sk.params[j],
            chord: sk.points[i].dist(sk.points[j]),
            threshold,
        });
    }
    Ok(min_gap)
}

fn inverse_modulus_table(spec: &CurveSpec, h: f64) -> Result<J2Certificate, ValidationFailure> {
    let (a, b) = spec.interval();
    let len = b - a;
    let n = J2_SAMPLES;
    let ts: Vec<f64> = (0..=n).map(|i| a + len * i as f64 / n as f64).collect();
    let pts: Vec<Point> = ts.iter().map(|&t| spec.eval(t.min(b)).expect("in range")).collect();
    let floor = (2.0 * h).max(8.0 * len / n as f64);
    let levels = (1..=30).take_while(|&k| len / 2f64.powi(k) >= floor).count();
    let mut best = vec![(f64::INFINITY, 0usize, 0usize); levels + 1];
    for i in 0..=n {
        for j in i + 1..=n {
            let e_max = (ts[j] - ts[i]).min(2.0 * (ts[i] - a)).min(2.0 * (b - ts[j]));
            if e_max <= 0.0 {
                continue;
            }
            let k_min = ((len / e_max).log2() - 1e-9).ceil().max(1.0) as usize;
            if k_min > levels {
                continue;
            }
            let chord = pts[i].dist(pts[j]);
            if chord < best[k_min].0 {
                best[k_min] = (chord, i, j);
            }
        }
    }
    let mut entries = Vec::new();
    let mut running = (f64::INFINITY, 0, 0);
    for (k, &cand) in best.iter().enumerate().skip(1) {
        if cand.0 < running.0 {
            running = cand;
        }
        if running.0.is_finite() {
            if running.0 <= 0.0 {
                return Err(ValidationFailure::J1Failure {
                    t: ts[running.1],
                    t_prime: ts[running.2],
                    chord: running.0,
                    threshold: 0.0,
                });
            }
            entries.push((len / 2f64.powi(k as i32), running.0));
        }
    }
    entries.reverse();
    Ok(J2Certificate {
        samples: n + 1,
        entries,
    })
}

/// Checks closure, piecewise smoothness and the Jordan conditions at sample
/// scale `h`, returning the certified curve.
pub fn validate_jordan(spec: &CurveSpec, options: ValidationOptions) -> Result<JordanCurve, ValidationFailure> {
    let h = options.sample_resolution;
    if !(h > 0.0 && h < spec.param_length()) {
        return Err(ValidationFailure::BadResolution(h));
    }
    let gap = spec.closure_gap();
    if gap > JOINT_TOL {
        return Err(ValidationFailure::ClosureFailure { gap });
    }
    let smoothness: Vec<PieceSmoothness> = spec
        .pieces()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let w = spec.piece_width(k);
            let (lo, hi) = p.speed_bounds();
            PieceSmoothness {
                lower: lo.map(|m| m / w),
                upper: hi / w,
            }
        })
        .collect();
    if options.require_smooth {
        if let Some(piece) = smoothness.iter().position(|s| !s.is_smooth()) {
            return Err(ValidationFailure::NonSmoothPiece { piece });
        }
    }
    let deriv_sup = DERIV_SUP_MARGIN * smoothness.iter().fold(0.0f64, |m, s| m.max(s.upper));

    let sk = skeleton(spec, &smoothness, h);
    let min_gap = check_injective(spec, &sk, h)?;
    let j1 = J1Certificate {
        sample_resolution: h,
        samples: sk.points.len(),
        max_spacing: sk.max_spacing,
        min_gap,
    };
    let j2 = inverse_modulus_table(spec, h)?;

    Ok(JordanCurve {
        spec: spec.clone(),
        j1,
        j2,
        smoothness,
        deriv_sup,
        carrier: CarrierIndex::build(spec),
        options,
    })
}

/// Image of a Jordan curve under an invertible affine map, revalidated with
/// the source curve's options. Curves containing arcs require a similarity.
pub fn transform_curve(jc: &JordanCurve, map: &Affine) -> Result<JordanCurve, ValidationFailure> {
    let det = map.det();
    if !(det.abs() > 1e-12) {
        return Err(CurveError::SingularMap(det.abs()).into());
    }
    let spec = jc.spec.map_pieces(map)?;
    validate_jordan(&spec, jc.options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{reparametrize, unit_circular_path, SegmentPiece};
    use std::f64::consts::{PI, TAU};

    fn figure_eight() -> CurveSpec {
        CurveSpec::new(vec![
            SegmentPiece::arc(Point::new(-1.0, 0.0), 1.0, 0.0, TAU),
            SegmentPiece::arc(Point::new(1.0, 0.0), 1.0, PI, -TAU),
        ])
        .unwrap()
    }

    #[test]
    fn unit_circle_validates() {
        let jc = validate_jordan(&unit_circular_path(), ValidationOptions::with_resolution(1e-3)).unwrap();
        assert!((jc.deriv_sup() - 1.01).abs() < 1e-12);
        assert!(jc.j1_certificate().min_gap > 0.0);
        assert!(jc.smoothness().iter().all(|s| s.is_smooth()));
    }

    #[test]
    fn unit_circle_inverse_modulus() {
        // Chords of exp(i theta) at separation eps are 2 sin(eps/2); for
        // theta in [phi, 2pi - phi] the distance to the positive real axis
        // is at least sin(phi).
        let jc = validate_jordan(&unit_circular_path(), ValidationOptions::default()).unwrap();
        let j2 = jc.j2_certificate();
        assert!(!j2.entries.is_empty());
        for &(eps, delta) in &j2.entries {
            let exact = 2.0 * (eps / 2.0).sin();
            assert!(delta > 0.0);
            assert!(delta >= exact - 1e-12, "eps {eps}: {delta} < {exact}");
            assert!(
                delta <= exact + TAU / J2_SAMPLES as f64,
                "eps {eps}: {delta} vs {exact}"
            );
            let phi = eps / 2.0;
            assert!(delta >= 2.0 * phi.sin() * (eps / 2.0).cos().min(1.0) - 1e-12);
        }
        for w in j2.entries.windows(2) {
            assert!(w[0].0 < w[1].0 && w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn figure_eight_fails_j1_near_shared_point() {
        let err = validate_jordan(&figure_eight(), ValidationOptions::with_resolution(1e-3)).unwrap_err();
        let ValidationFailure::J1Failure { t, t_prime, chord, .. } = err else {
            panic!("expected J1Failure, got {err:?}");
        };
        let spec = figure_eight();
        assert!(spec.eval(t).unwrap().norm() < 1e-2);
        assert!(spec.eval(t_prime).unwrap().norm() < 1e-2);
        assert!(chord < 1e-2);
    }

    #[test]
    fn open_arc_fails_closure() {
        let spec = CurveSpec::new(vec![SegmentPiece::arc(Point::ORIGIN, 1.0, 0.0, PI)]).unwrap();
        assert!(matches!(
            validate_jordan(&spec, ValidationOptions::default()),
            Err(ValidationFailure::ClosureFailure { .. })
        ));
    }

    #[test]
    fn cusp_rejected_when_smoothness_required() {
        let p = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 0.0),
        ];
        let spec = CurveSpec::new(vec![
            SegmentPiece::cubic(p[0], p[1], p[2], p[3]),
            SegmentPiece::line(p[3], Point::new(1.0, -1.0)),
            SegmentPiece::line(Point::new(1.0, -1.0), p[0]),
        ])
        .unwrap();
        let err = validate_jordan(&spec, ValidationOptions::default()).unwrap_err();
        assert_eq!(err, ValidationFailure::NonSmoothPiece { piece: 0 });
    }

    #[test]
    fn bad_resolution() {
        let c = unit_circular_path();
        assert!(matches!(
            validate_jordan(&c, ValidationOptions::with_resolution(0.0)),
            Err(ValidationFailure::BadResolution(_))
        ));
    }

    #[test]
    fn reparametrized_circle_still_valid() {
        let c = reparametrize(&unit_circular_path(), 0.0, 1.0).unwrap();
        let jc = validate_jordan(&c, ValidationOptions::default()).unwrap();
        assert!((jc.deriv_sup() - 1.01 * TAU).abs() < 1e-9);
    }

    #[test]
    fn transform_examples() {
        let jc = validate_jordan(&unit_circular_path(), ValidationOptions::default()).unwrap();
        let big = transform_curve(&jc, &Affine::scale(2.0)).unwrap();
        let d = big.carrier().carrier_distance(Point::ORIGIN);
        assert!((d.lower - 2.0).abs() < 1e-15);

        let mirrored = transform_curve(&jc, &Affine::reflect(0.0)).unwrap();
        let t = 0.3;
        let v0 = jc.spec().deriv(t, crate::curves::Side::Right).unwrap();
        let v1 = mirrored.spec().deriv(t, crate::curves::Side::Right).unwrap();
        assert!((v1 - Point::new(v0.x, -v0.y)).norm() < 1e-12);

        let sq = CurveSpec::polygon(&[
            Point::new(1.0, 1.0),
            Point::new(-1.0, 1.0),
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
        ])
        .unwrap();
        let sq = validate_jordan(&sq, ValidationOptions::default()).unwrap();
        let rot = Affine::rotate(PI / 4.0);
        let diamond = transform_curve(&sq, &rot).unwrap();
        for i in 0..=40 {
            let t = 4.0 * i as f64 / 40.0;
            let want = rot.apply(sq.spec().eval(t).unwrap());
            assert!(diamond.spec().eval(t).unwrap().dist(want) < 1e-14);
        }
        assert!(diamond.spec().eval(0.0).unwrap().dist(Point::new(0.0, 2f64.sqrt())) < 1e-15);

        assert!(matches!(
            transform_curve(&jc, &Affine::scale(0.0)),
            Err(ValidationFailure::Curve(CurveError::SingularMap(_)))
        ));
    }
}
