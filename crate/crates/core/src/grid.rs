//! Classification of regular point grids.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::JordanCurve;
use crate::geometry::{Point, Rect};
use crate::index::{classify, ClassifyOptions, IndexError, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid needs at least 2x2 cells, got {0}x{1}")]
    TooSmall(usize, usize),
    #[error("grid box is degenerate")]
    DegenerateBox,
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// A box split into `nx * ny` cells; each cell is represented by its centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRequest {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
    /// Near-carrier band; `None` uses the classifier default.
    pub eps_band: Option<f64>,
    pub tol: Option<f64>,
}

impl GridRequest {
    pub fn new(bounds: Rect, nx: usize, ny: usize) -> Self {
        GridRequest {
            xmin: bounds.min.x,
            ymin: bounds.min.y,
            xmax: bounds.max.x,
            ymax: bounds.max.y,
            nx,
            ny,
            eps_band: None,
            tol: None,
        }
    }

    pub fn check(&self) -> Result<(), GridError> {
        if self.nx < 2 || self.ny < 2 {
            return Err(GridError::TooSmall(self.nx, self.ny));
        }
        let ok = [self.xmin, self.ymin, self.xmax, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmax > self.xmin
            && self.ymax > self.ymin;
        if ok {
            Ok(())
        } else {
            Err(GridError::DegenerateBox)
        }
    }

    pub fn bounds(&self) -> Rect {
        Rect::new(Point::new(self.xmin, self.ymin), Point::new(self.xmax, self.ymax))
    }

    pub fn cell_size(&self) -> (f64, f64) {
        (
            (self.xmax - self.xmin) / self.nx as f64,
            (self.ymax - self.ymin) / self.ny as f64,
        )
    }

    /// Centre of cell `(i, j)`, column `i` and row `j` counted from `ymin`.
    pub fn cell_center(&self, i: usize, j: usize) -> Point {
        let (dx, dy) = self.cell_size();
        Point::new(self.xmin + (i as f64 + 0.5) * dx, self.ymin + (j as f64 + 0.5) * dy)
    }

    /// All cell centres in row-major order from `ymin`.
    pub fn points(&self) -> Vec<Point> {
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (i, j)))
            .map(|(i, j)| self.cell_center(i, j))
            .collect()
    }

    pub fn options(&self) -> ClassifyOptions {
        let mut o = ClassifyOptions {
            eps_band: self.eps_band,
            ..Default::default()
        };
        if let Some(tol) = self.tol {
            o.winding_tol = tol;
        }
        o
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridCell {
    pub x: f64,
    pub y: f64,
    /// `1` inside, `0` outside, `-1` near the carrier.
    pub verdict: i8,
    /// Rounded winding number when the integral was certified.
    pub winding: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResult {
    pub request: GridRequest,
    /// Row-major from `ymin`: cell `(i, j)` is at index `j * nx + i`.
    pub cells: Vec<GridCell>,
}

impl GridResult {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.cells.iter().filter(|c| c.verdict == verdict.code()).count()
    }

    pub fn fraction(&self, verdict: Verdict) -> f64 {
        self.count(verdict) as f64 / self.cells.len() as f64
    }

    pub fn verdicts(&self) -> Vec<i8> {
        self.cells.iter().map(|c| c.verdict).collect()
    }

    /// CSV with header `x,y,verdict,winding`; `winding` is empty when absent.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 32);
        out.push_str("x,y,verdict,winding\n");
        for c in &self.cells {
            let w = c.winding.map(|w| w.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", c.x, c.y, c.verdict, w);
        }
        out
    }
}

/// Classifies every cell centre. Cells are independent and evaluated in
/// parallel; the result does not depend on scheduling.
pub fn classify_grid(jc: &JordanCurve, request: &GridRequest) -> Result<GridResult, GridError> {
    request.check()?;
    let opts = request.options();
    let cells = request
        .points()
        .par_iter()
        .map(|&p| {
            classify(jc, p, &opts).map(|c| GridCell {
                x: p.x,
                y: p.y,
                verdict: c.verdict.code(),
                winding: c.winding.map(|w| w.rounded),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GridResult {
        request: *request,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{unit_circular_path, validate_jordan, ValidationOptions};

    #[test]
    fn layout_is_row_major_from_ymin() {
        let r = GridRequest::new(Rect::new(Point::new(0.0, 0.0), Point::new(4.0, 2.0)), 4, 2);
        let pts = r.points();
        assert_eq!(pts[1], Point::new(1.5, 0.5));
        assert_eq!(pts[4], Point::new(0.5, 1.5));
    }

    #[test]
    fn rejects_bad_requests() {
        let b = Rect::new(Point::new(0.0, 0.0), Point::new(1.0, 1.0));
        assert_eq!(GridRequest::new(b, 1, 5).check(), Err(GridError::TooSmall(1, 5)));
        let flat = Rect::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        assert_eq!(GridRequest::new(flat, 3, 3).check(), Err(GridError::DegenerateBox));
    }

    #[test]
    fn small_circle_grid() {
        let jc = validate_jordan(&unit_circular_path(), ValidationOptions::default()).unwrap();
        let b = Rect::new(Point::new(-2.0, -2.0), Point::new(2.0, 2.0));
        let g = classify_grid(&jc, &GridRequest::new(b, 20, 20)).unwrap();
        assert_eq!(g.cells.len(), 400);
        let csv = g.to_csv();
        assert_eq!(csv.lines().count(), 401);
        assert!(g.count(Verdict::Inside) > 70 && g.count(Verdict::Inside) < 87);
    }
}
