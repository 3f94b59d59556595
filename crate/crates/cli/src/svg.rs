//! Static SVG 1.1 figures of a triangulation.

use std::fmt::Write;

use anyhow::{bail, Result};

use linf_spanner::delaunay::Triangulation;
use linf_spanner::geometry::{AxisSquare, Metric};
use linf_spanner::spanner::PathInGraph;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

struct View {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl View {
    fn new(pts: &[(f64, f64)]) -> View {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0);
        View {
            min_x: x0,
            max_y: y1,
            scale: if span > 0.0 { SIZE / span } else { 1.0 },
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }
}

/// Corners of a working-frame square in input coordinates.
fn corners(metric: Metric, s: &AxisSquare) -> Vec<(f64, f64)> {
    let (w, so, e, n) = (s.west.to_f64(), s.south.to_f64(), s.east().to_f64(), s.north().to_f64());
    [(w, so), (e, so), (e, n), (w, n)]
        .into_iter()
        .map(|(u, v)| match metric {
            Metric::L1 => ((u + v) / 2.0, (v - u) / 2.0),
            _ => (u, v),
        })
        .collect()
}

/// Renders points and edges, optionally highlighting `route` and the
/// witness square of the edge `witness`.
pub fn render(t: &Triangulation, route: Option<&PathInGraph>, witness: Option<(usize, usize)>) -> Result<String> {
    let pts: Vec<(f64, f64)> = t.points().points().iter().map(|p| (p.x.to_f64(), p.y.to_f64())).collect();
    let view = View::new(&pts);
    let px: Vec<(f64, f64)> = pts.iter().map(|&p| view.map(p)).collect();
    let side = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;

    if let Some((u, v)) = witness {
        let Some(e) = t.edge(u, v) else {
            bail!("({u}, {v}) is not an edge of the triangulation");
        };
        polygon(&mut out, &view, &corners(t.metric(), &e.witness), "witness", "#2a7ab0")?;
        for &i in t.triangles_on_edge(u, v) {
            let sq = &t.triangles()[i].circumsquare;
            polygon(&mut out, &view, &corners(t.metric(), sq), "circumsquare", "#9a9a9a")?;
        }
    }

    writeln!(out, r##"<g class="edges" stroke="#555" stroke-width="1">"##)?;
    for e in t.edges() {
        let (a, b) = (px[e.u], px[e.v]);
        writeln!(out, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, a.0, a.1, b.0, b.1)?;
    }
    writeln!(out, "</g>")?;

    if let Some(p) = route {
        writeln!(out, r##"<g class="route" stroke="#d62728" stroke-width="3">"##)?;
        for w in p.vertices.windows(2) {
            if !t.has_edge(w[0], w[1]) {
                bail!("route uses ({}, {}), which is not an edge", w[0], w[1]);
            }
            let (a, b) = (px[w[0]], px[w[1]]);
            let len = t.edge_length(w[0], w[1]);
            writeln!(
                out,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" data-length="{len}"><title>{} to {}: {len}</title></line>"#,
                a.0, a.1, b.0, b.1, w[0], w[1]
            )?;
        }
        writeln!(out, "</g>")?;
        writeln!(
            out,
            r#"<text x="{MARGIN}" y="{:.1}" font-family="sans-serif" font-size="14">route {} to {}, length {}</text>"#,
            MARGIN / 2.0,
            p.first(),
            p.last(),
            p.length
        )?;
    }

    writeln!(out, r#"<g class="points" fill="black">"#)?;
    let labelled = t.len() <= 60;
    for (i, &(x, y)) in px.iter().enumerate() {
        let label = xml_escape(&t.points().label(i));
        writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"><title>{label}</title></circle>"#)?;
        if labelled {
            writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{label}</text>"#,
                x + 4.0,
                y - 4.0
            )?;
        }
    }
    writeln!(out, "</g>")?;
    writeln!(out, "</svg>")?;
    Ok(out)
}

fn polygon(out: &mut String, view: &View, corners: &[(f64, f64)], class: &str, color: &str) -> std::fmt::Result {
    let pts: Vec<String> = corners
        .iter()
        .map(|&c| {
            let (x, y) = view.map(c);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    writeln!(
        out,
        r#"<polygon class="{class}" points="{}" fill="none" stroke="{color}" stroke-dasharray="6,4"/>"#,
        pts.join(" ")
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
