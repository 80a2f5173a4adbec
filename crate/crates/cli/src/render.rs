//! SVG drawing of 2-dimensional marked polytopes. The only lossy output:
//! coordinates are converted to floating point for display.

use std::fmt::Write;

use conic_core::{face_lattice, BigRational, Error, MarkedPolytope, Result};
use num_traits::ToPrimitive;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 60.0;

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Polygon with one labelled segment per edge; labels give the primitive
/// normal and the marking (1 when the polytope carries none).
pub fn render_svg(p: &MarkedPolytope) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    let pts: Vec<(f64, f64)> =
        p.vertices().iter().map(|v| (f(&v.coords()[0]), f(&v.coords()[1]))).collect();
    let (min_x, max_x) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (min_y, max_y) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let span = (max_x - min_x).max(max_y - min_y);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let screen = |(x, y): (f64, f64)| (MARGIN + (x - min_x) * scale, SIZE - MARGIN - (y - min_y) * scale);

    // cyclic vertex order by walking the edges
    let lattice = face_lattice(p);
    let edges: Vec<(usize, usize, usize)> =
        lattice.faces_of_dim(1).map(|f| (f.facets[0], f.vertices[0], f.vertices[1])).collect();
    let mut order = vec![0usize];
    while order.len() < pts.len() {
        let last = *order.last().expect("nonempty");
        let prev = order.len().checked_sub(2).map(|i| order[i]);
        let next = edges
            .iter()
            .filter_map(|&(_, a, b)| match (a == last, b == last) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .find(|&n| Some(n) != prev && !order.contains(&n))
            .ok_or_else(|| Error::Internal("polygon edges do not form a cycle".into()))?;
        order.push(next);
    }

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#);
    let points: Vec<String> = order
        .iter()
        .map(|&i| {
            let (x, y) = screen(pts[i]);
            format!("{},{}", fmt6(x), fmt6(y))
        })
        .collect();
    let _ = writeln!(svg, r##"  <polygon points="{}" fill="#dde8f3" stroke="none"/>"##, points.join(" "));
    for &(facet, a, b) in &edges {
        let (x1, y1) = screen(pts[a]);
        let (x2, y2) = screen(pts[b]);
        let n = p.halfspaces()[facet].normal.coords();
        let s = p.markings().map_or_else(|| "1".to_string(), |m| m[facet].to_string());
        let _ = writeln!(
            svg,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f4e79" stroke-width="2" data-facet="{facet}"/>"##,
            fmt6(x1),
            fmt6(y1),
            fmt6(x2),
            fmt6(y2)
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" font-size="12" text-anchor="middle">normal ({}, {}), s={s}</text>"#,
            fmt6((x1 + x2) / 2.0),
            fmt6((y1 + y2) / 2.0),
            n[0],
            n[1]
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
