//! Deterministic workloads shared by the benchmarks.

use jordan_core::{Point, Rect};

/// `n` points spread over `bounds` by a Halton (2, 3) sequence.
pub fn halton_points(bounds: Rect, n: usize) -> Vec<Point> {
    fn radical_inverse(mut i: usize, base: usize) -> f64 {
        let mut f = 1.0;
        let mut r = 0.0;
        while i > 0 {
            f /= base as f64;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    }
    (1..=n)
        .map(|i| {
            Point::new(
                bounds.min.x + bounds.width() * radical_inverse(i, 2),
                bounds.min.y + bounds.height() * radical_inverse(i, 3),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_stay_in_bounds() {
        let b = Rect::new(Point::new(-1.0, 2.0), Point::new(3.0, 5.0));
        let pts = halton_points(b, 500);
        assert_eq!(pts.len(), 500);
        assert!(pts.iter().all(|p| b.contains(*p)));
    }
}
