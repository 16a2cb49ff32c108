//! SVG output. Drawing happens in curve coordinates inside a group that
//! flips the y axis, so arc sweep flags follow the mathematical orientation.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use jordan_core::connectivity::PolygonalJoin;
use jordan_core::grid::GridResult;
use jordan_core::index::BoundaryWitnesses;
use jordan_core::{CurveSpec, Point, Rect, SegmentPiece};

#[derive(Default)]
pub struct Overlay<'a> {
    pub grid: Option<&'a GridResult>,
    pub join: Option<&'a PolygonalJoin>,
    pub witnesses: &'a [BoundaryWitnesses],
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG path data for the whole curve: `M`, then `L`, `A` and `C` commands.
pub fn path_data(spec: &CurveSpec) -> String {
    let p0 = spec.start_point();
    let mut d = format!("M {} {}", p0.x, p0.y);
    for piece in spec.pieces() {
        match *piece {
            SegmentPiece::Line { to, .. } => {
                let _ = write!(d, " L {} {}", to.x, to.y);
            }
            SegmentPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                // SVG arcs cannot describe a full turn; emit quarter-turn
                // pieces or smaller.
                let parts = (sweep.abs() / FRAC_PI_2).ceil().max(1.0) as usize;
                let flag = u8::from(sweep > 0.0);
                for k in 1..=parts {
                    let end = center + Point::from_angle(start_angle + sweep * k as f64 / parts as f64) * radius;
                    let _ = write!(d, " A {radius} {radius} 0 0 {flag} {} {}", end.x, end.y);
                }
            }
            SegmentPiece::Cubic { points } => {
                let [_, c1, c2, e] = points;
                let _ = write!(d, " C {} {} {} {} {} {}", c1.x, c1.y, c2.x, c2.y, e.x, e.y);
            }
        }
    }
    if spec.is_closed() {
        d.push_str(" Z");
    }
    d
}

fn verdict_color(code: i8) -> &'static str {
    match code {
        1 => "#9ecae1",
        0 => "#f0f0f0",
        _ => "#fdae6b",
    }
}

pub fn render(spec: &CurveSpec, overlay: &Overlay) -> String {
    let mut view = Rect::from_points(spec.pieces().iter().flat_map(|p| {
        let b = p.bbox();
        [b.min, b.max]
    }));
    if let Some(g) = overlay.grid {
        view = view.union(&g.request.bounds());
    }
    if let Some(j) = overlay.join {
        for v in &j.vertices {
            view.include(*v);
        }
    }
    for w in overlay.witnesses {
        view.include(w.inside);
        view.include(w.outside);
    }
    let size = view.width().max(view.height());
    let view = view.expand(0.05 * size);
    let stroke = size / 400.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        view.min.x,
        -view.max.y,
        view.width(),
        view.height(),
        (800.0 * view.height() / view.width()).round()
    );
    let _ = writeln!(
        out,
        r#"<metadata id="curve-spec">{}</metadata>"#,
        xml_escape(&spec.to_json())
    );
    out.push_str("<g transform=\"scale(1 -1)\">\n");

    if let Some(g) = overlay.grid {
        let (dx, dy) = g.request.cell_size();
        out.push_str("<g id=\"grid\" shape-rendering=\"crispEdges\">\n");
        for c in &g.cells {
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{dx}" height="{dy}" fill="{}"/>"#,
                c.x - dx / 2.0,
                c.y - dy / 2.0,
                verdict_color(c.verdict)
            );
        }
        out.push_str("</g>\n");
    }

    let _ = writeln!(
        out,
        r#"<path id="curve" d="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#,
        path_data(spec)
    );

    if let Some(j) = overlay.join {
        let pts: Vec<String> = j.vertices.iter().map(|v| format!("{},{}", v.x, v.y)).collect();
        let _ = writeln!(
            out,
            r##"<polyline id="join" points="{}" fill="none" stroke="#31a354" stroke-width="{stroke}"/>"##,
            pts.join(" ")
        );
    }

    if !overlay.witnesses.is_empty() {
        out.push_str("<g id=\"witnesses\">\n");
        for w in overlay.witnesses {
            for (p, color) in [(w.inside, "#3182bd"), (w.outside, "#de2d26")] {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
                    p.x,
                    p.y,
                    2.0 * stroke
                );
            }
        }
        out.push_str("</g>\n");
    }

    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use jordan_core::fixtures::{circle, rounded_square};

    fn xml_unescape(s: &str) -> String {
        s.replace("&lt;", "<").replace("&gt;", ">").replace("&amp;", "&")
    }

    /// The curve JSON stored in the SVG's metadata, if present.
    pub fn embedded_spec(svg: &str) -> Option<String> {
        let open = r#"<metadata id="curve-spec">"#;
        let start = svg.find(open)? + open.len();
        let end = start + svg[start..].find("</metadata>")?;
        Some(xml_unescape(&svg[start..end]))
    }

    #[test]
    fn full_circle_is_split() {
        let d = path_data(&circle());
        assert_eq!(d.matches(" A ").count(), 4);
        assert!(d.ends_with('Z'));
    }

    #[test]
    fn metadata_round_trip() {
        let spec = rounded_square();
        let svg = render(&spec, &Overlay::default());
        let back = CurveSpec::from_json(&embedded_spec(&svg).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}
