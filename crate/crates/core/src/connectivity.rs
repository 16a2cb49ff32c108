//! Polygonal paths that stay a fixed distance away from the carrier.

use std::collections::VecDeque;
use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curves::JordanCurve;
use crate::geometry::{Point, Rect};
use crate::index::{classify, ClassifyOptions, Verdict};

/// Cells per side of the coarse blocks used to mark whole areas at once.
const BLOCK: usize = 16;

/// Largest grid the planner will allocate.
pub const MAX_CELLS: usize = 1 << 24;

/// Neighbourhood (in cells) searched for connectors from an endpoint.
const CONNECTOR_REACH: isize = 2;

const SEGMENT_DEPTH: u32 = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JoinError {
    #[error("clearance and cell size must be positive")]
    BadParameters,
    #[error("endpoint {point:?} has carrier distance bound {lower:e} < {required:e}")]
    EndpointTooClose { point: Point, lower: f64, required: f64 },
    #[error("grid of {0} cells is too large")]
    GridTooLarge(usize),
    /// Not a proof that the indexes differ; the endpoint verdicts are
    /// attached so callers can decide.
    #[error("no path at this resolution (endpoint verdicts {start:?}, {end:?})")]
    NoPathAtResolution {
        start: Option<Verdict>,
        end: Option<Verdict>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonalJoin {
    pub vertices: Vec<Point>,
    pub clearance: f64,
    pub cell_size: f64,
}

impl PolygonalJoin {
    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// Whether every point of `[a, b]` is at distance at least `clearance` from
/// the carrier, decided by bisection with the 1-Lipschitz distance bound.
/// `false` may mean "could not certify".
pub fn segment_clear(jc: &JordanCurve, a: Point, b: Point, clearance: f64) -> bool {
    fn go(jc: &JordanCurve, a: Point, b: Point, c: f64, depth: u32) -> bool {
        let mid = a.lerp(b, 0.5);
        let half = a.dist(b) / 2.0;
        let enc = jc.carrier().carrier_distance(mid);
        if enc.lower >= c + half {
            return true;
        }
        if enc.upper < c || depth >= SEGMENT_DEPTH {
            return false;
        }
        go(jc, a, mid, c, depth + 1) && go(jc, mid, b, c, depth + 1)
    }
    go(jc, a, b, clearance, 0)
}

/// Minimum carrier-distance lower bound over `n_samples + 1` evenly spaced
/// points on each edge of `path`.
pub fn path_carrier_gap(jc: &JordanCurve, path: &[Point], n_samples: usize) -> f64 {
    let lower = |p: Point| jc.carrier().carrier_distance(p).lower;
    match path {
        [] => f64::INFINITY,
        [p] => lower(*p),
        _ => {
            let n = n_samples.max(1);
            path.windows(2)
                .flat_map(|w| (0..=n).map(move |i| w[0].lerp(w[1], i as f64 / n as f64)))
                .map(lower)
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Cells of size `h` marked free when their whole area keeps `clearance`
/// from the carrier.
#[derive(Debug, Clone)]
pub struct ClearanceGrid {
    origin: Point,
    h: f64,
    nx: usize,
    ny: usize,
    clearance: f64,
    free: Vec<bool>,
}

impl ClearanceGrid {
    pub fn build(jc: &JordanCurve, bounds: Rect, h: f64, clearance: f64) -> Result<Self, JoinError> {
        if !(h > 0.0 && clearance > 0.0) {
            return Err(JoinError::BadParameters);
        }
        let nx = (bounds.width() / h).ceil().max(1.0) as usize;
        let ny = (bounds.height() / h).ceil().max(1.0) as usize;
        if nx.saturating_mul(ny) > MAX_CELLS {
            return Err(JoinError::GridTooLarge(nx.saturating_mul(ny)));
        }
        let origin = bounds.min;
        let threshold = clearance + h * SQRT_2 / 2.0;
        let center = |i: usize, j: usize| Point::new(origin.x + (i as f64 + 0.5) * h, origin.y + (j as f64 + 0.5) * h);
        let bx = nx.div_ceil(BLOCK);
        let by = ny.div_ceil(BLOCK);
        let blocks: Vec<(usize, usize, Vec<bool>)> = (0..bx * by)
            .into_par_iter()
            .map(|b| {
                let (ib, jb) = (b % bx, b / bx);
                let i0 = ib * BLOCK;
                let j0 = jb * BLOCK;
                let i1 = (i0 + BLOCK).min(nx);
                let j1 = (j0 + BLOCK).min(ny);
                let lo = center(i0, j0);
                let hi = center(i1 - 1, j1 - 1);
                let mid = lo.lerp(hi, 0.5);
                let reach = lo.dist(hi) / 2.0;
                let enc = jc.carrier().carrier_distance(mid);
                let len = (i1 - i0) * (j1 - j0);
                let flags = if enc.lower - reach >= threshold {
                    vec![true; len]
                } else if enc.upper + reach < threshold {
                    vec![false; len]
                } else {
                    (j0..j1)
                        .flat_map(|j| (i0..i1).map(move |i| (i, j)))
                        .map(|(i, j)| jc.carrier().carrier_distance(center(i, j)).lower >= threshold)
                        .collect()
                };
                (ib, jb, flags)
            })
            .collect();
        let mut free = vec![false; nx * ny];
        for (ib, jb, flags) in blocks {
            let i0 = ib * BLOCK;
            let j0 = jb * BLOCK;
            let w = (i0 + BLOCK).min(nx) - i0;
            for (k, f) in flags.into_iter().enumerate() {
                free[(j0 + k / w) * nx + i0 + k % w] = f;
            }
        }
        Ok(ClearanceGrid {
            origin,
            h,
            nx,
            ny,
            clearance,
            free,
        })
    }

    /// Grid covering the carrier and both endpoints with room to go around.
    pub fn around(jc: &JordanCurve, points: &[Point], h: f64, clearance: f64) -> Result<Self, JoinError> {
        let mut bounds = jc.carrier().bounds();
        for p in points {
            bounds.include(*p);
        }
        Self::build(jc, bounds.expand(clearance + 8.0 * h), h, clearance)
    }

    pub fn cell_size(&self) -> f64 {
        self.h
    }

    pub fn clearance(&self) -> f64 {
        self.clearance
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn is_free(&self, i: usize, j: usize) -> bool {
        self.free[j * self.nx + i]
    }

    pub fn center(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x + (i as f64 + 0.5) * self.h,
            self.origin.y + (j as f64 + 0.5) * self.h,
        )
    }

    /// Centres of all free cells.
    pub fn free_centers(&self) -> Vec<Point> {
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (i, j)))
            .filter(|&(i, j)| self.is_free(i, j))
            .map(|(i, j)| self.center(i, j))
            .collect()
    }

    /// Free cells near `z` reachable from it by a certified straight segment.
    fn connectors(&self, jc: &JordanCurve, z: Point) -> Vec<usize> {
        let ci = ((z.x - self.origin.x) / self.h).floor() as isize;
        let cj = ((z.y - self.origin.y) / self.h).floor() as isize;
        let mut out = Vec::new();
        for dj in -CONNECTOR_REACH..=CONNECTOR_REACH {
            for di in -CONNECTOR_REACH..=CONNECTOR_REACH {
                let (i, j) = (ci + di, cj + dj);
                if i < 0 || j < 0 || i >= self.nx as isize || j >= self.ny as isize {
                    continue;
                }
                let (i, j) = (i as usize, j as usize);
                if self.is_free(i, j) && segment_clear(jc, z, self.center(i, j), self.clearance) {
                    out.push(j * self.nx + i);
                }
            }
        }
        out
    }

    /// Breadth-first search over 8-connected free cells from `z1` to `z2`,
    /// followed by string pulling with certified shortcuts.
    pub fn join(&self, jc: &JordanCurve, z1: Point, z2: Point) -> Result<PolygonalJoin, JoinError> {
        let required = self.clearance + self.h;
        for z in [z1, z2] {
            let lower = jc.carrier().carrier_distance(z).lower;
            if !(lower >= required) {
                return Err(JoinError::EndpointTooClose {
                    point: z,
                    lower,
                    required,
                });
            }
        }
        let no_path = || {
            let o = ClassifyOptions::default();
            JoinError::NoPathAtResolution {
                start: classify(jc, z1, &o).ok().map(|c| c.verdict),
                end: classify(jc, z2, &o).ok().map(|c| c.verdict),
            }
        };
        if segment_clear(jc, z1, z2, self.clearance) {
            return Ok(self.result(vec![z1, z2]));
        }
        let sources = self.connectors(jc, z1);
        let targets = self.connectors(jc, z2);
        if sources.is_empty() || targets.is_empty() {
            return Err(no_path());
        }
        let mut is_target = vec![false; self.free.len()];
        for &t in &targets {
            is_target[t] = true;
        }
        let mut parent = vec![usize::MAX; self.free.len()];
        let mut queue = VecDeque::new();
        for &s in &sources {
            parent[s] = s;
            queue.push_back(s);
        }
        let mut reached = None;
        while let Some(cur) = queue.pop_front() {
            if is_target[cur] {
                reached = Some(cur);
                break;
            }
            let (i, j) = ((cur % self.nx) as isize, (cur / self.nx) as isize);
            for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let (ni, nj) = (i + di, j + dj);
                if ni < 0 || nj < 0 || ni >= self.nx as isize || nj >= self.ny as isize {
                    continue;
                }
                let next = nj as usize * self.nx + ni as usize;
                if self.free[next] && parent[next] == usize::MAX {
                    parent[next] = cur;
                    queue.push_back(next);
                }
            }
        }
        let Some(mut cur) = reached else {
            return Err(no_path());
        };
        let mut chain = vec![z2];
        loop {
            chain.push(self.center(cur % self.nx, cur / self.nx));
            if parent[cur] == cur {
                break;
            }
            cur = parent[cur];
        }
        chain.push(z1);
        chain.reverse();
        Ok(self.result(self.pull(jc, &chain)))
    }

    /// Greedy string pulling: from each kept vertex jump to the farthest
    /// later vertex reachable by a certified segment.
    fn pull(&self, jc: &JordanCurve, chain: &[Point]) -> Vec<Point> {
        let mut out = vec![chain[0]];
        let mut i = 0;
        while i + 1 < chain.len() {
            let mut j = i + 1;
            while j + 1 < chain.len() && segment_clear(jc, chain[i], chain[j + 1], self.clearance) {
                j += 1;
            }
            out.push(chain[j]);
            i = j;
        }
        out
    }

    fn result(&self, vertices: Vec<Point>) -> PolygonalJoin {
        PolygonalJoin {
            vertices,
            clearance: self.clearance,
            cell_size: self.h,
        }
    }
}

/// Joins `z1` and `z2` by a polyline keeping `clearance` from the carrier,
/// searching a grid of cell size `h`.
pub fn polygonal_join(
    jc: &JordanCurve,
    z1: Point,
    z2: Point,
    clearance: f64,
    h: f64,
) -> Result<PolygonalJoin, JoinError> {
    ClearanceGrid::around(jc, &[z1, z2], h, clearance)?.join(jc, z1, z2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{unit_circular_path, validate_jordan, ValidationOptions};

    fn circle() -> JordanCurve {
        validate_jordan(&unit_circular_path(), ValidationOptions::default()).unwrap()
    }

    #[test]
    fn outside_points_join() {
        let jc = circle();
        let j = polygonal_join(&jc, Point::new(2.0, 0.0), Point::new(0.0, 2.0), 0.1, 0.05).unwrap();
        assert!(path_carrier_gap(&jc, &j.vertices, 64) >= 0.1);
        assert_eq!(j.vertices.first(), Some(&Point::new(2.0, 0.0)));
        assert_eq!(j.vertices.last(), Some(&Point::new(0.0, 2.0)));
    }

    #[test]
    fn opposite_sides_do_not_join() {
        let jc = circle();
        let err = polygonal_join(&jc, Point::ORIGIN, Point::new(3.0, 0.0), 0.05, 0.02).unwrap_err();
        assert_eq!(
            err,
            JoinError::NoPathAtResolution {
                start: Some(Verdict::Inside),
                end: Some(Verdict::Outside)
            }
        );
    }

    #[test]
    fn crossing_segment_gap_vanishes() {
        let jc = circle();
        let path = [Point::ORIGIN, Point::new(3.0, 0.0)];
        let g1 = path_carrier_gap(&jc, &path, 10);
        let g2 = path_carrier_gap(&jc, &path, 1000);
        assert!(g2 <= g1 && g2 < 0.01);
        let inner = [Point::new(-0.25, 0.0), Point::new(0.25, 0.3)];
        assert!(path_carrier_gap(&jc, &inner, 100) >= 0.5);
    }

    #[test]
    fn free_cells_keep_clearance() {
        let jc = circle();
        let g = ClearanceGrid::around(&jc, &[], 0.05, 0.1).unwrap();
        for p in g.free_centers() {
            for s in jc.carrier().sample_points() {
                assert!(p.dist(*s) >= 0.1);
            }
        }
    }
}
