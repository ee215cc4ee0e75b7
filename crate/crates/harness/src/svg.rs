//! SVG 1.1 rendering.
//!
//! Stored coordinates are y-up; the flip to screen coordinates happens here
//! and nowhere else. Output is byte-stable: every number is printed with
//! two decimals and elements are emitted in id order.

use std::fmt::Write;

use upward_core::embedding::extract_polarization;
use upward_core::geometry::rational::to_f64;
use upward_core::geometry::{validate_drawing, Drawing, Point};
use upward_core::graph::EdgeId;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SvgOptions {
    pub show_ids: bool,
    /// Numbers incoming edges 1..k and outgoing edges 1..l, left to right.
    pub show_polarization_labels: bool,
}

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;
const ARROW: f64 = 7.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, p: &Point) -> (f64, f64) {
        (
            MARGIN + (to_f64(&p.x) - self.min_x) * self.scale,
            MARGIN + (self.max_y - to_f64(&p.y)) * self.scale,
        )
    }
}

fn num(v: f64) -> String {
    // avoid "-0.00"
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Point at half the arc length of a screen polyline, and the unit direction there.
fn midpoint(pts: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let lens: Vec<f64> = pts
        .windows(2)
        .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
        .collect();
    let mut rest = lens.iter().sum::<f64>() / 2.0;
    for (w, len) in pts.windows(2).zip(&lens) {
        if rest <= *len && *len > 0.0 {
            let t = rest / len;
            let dir = ((w[1].0 - w[0].0) / len, (w[1].1 - w[0].1) / len);
            return (
                (
                    w[0].0 + t * (w[1].0 - w[0].0),
                    w[0].1 + t * (w[1].1 - w[0].1),
                ),
                dir,
            );
        }
        rest -= len;
    }
    (pts[0], (0.0, 1.0))
}

/// Label anchor a little way along an edge's polyline away from its end at `v`.
fn label_anchor(line: &[(f64, f64)]) -> (f64, f64) {
    let (a, b) = (line[0], line[1]);
    let len = (b.0 - a.0).hypot(b.1 - a.1).max(1e-9);
    let t = (14.0 / len).min(0.5);
    let (mx, my) = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
    // nudge sideways so the label does not sit on the stroke
    (mx + 5.0 * (b.1 - a.1) / len, my - 5.0 * (b.0 - a.0) / len)
}

pub fn render_svg(drawing: &Drawing, options: &SvgOptions) -> String {
    let graph = drawing.graph();
    let mut all: Vec<&Point> = drawing.positions().values().collect();
    all.extend(drawing.all_bends().values().flatten());
    let xs: Vec<f64> = all.iter().map(|p| to_f64(&p.x)).collect();
    let ys: Vec<f64> = all.iter().map(|p| to_f64(&p.y)).collect();
    let (min_x, max_x) = xs
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let (min_y, max_y) = ys
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &y| (a.min(y), b.max(y)));
    let (min_x, max_x, min_y, max_y) = if all.is_empty() {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        (min_x, max_x, min_y, max_y)
    };
    // keep tiny drawings (stubs, virtual edges) legible
    let extent = (max_x - min_x).max(max_y - min_y);
    let scale = if extent > 0.0 && extent < 4.0 {
        UNIT * 4.0 / extent
    } else {
        UNIT
    };
    let frame = Frame {
        min_x,
        max_y,
        scale,
    };
    let width = 2.0 * MARGIN + (max_x - min_x) * scale;
    let height = 2.0 * MARGIN + (max_y - min_y) * scale;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(
        out,
        "<style>.edge{{fill:none;stroke:#222;stroke-width:1.5}}.arrow{{fill:#222}}.vertex{{fill:#222}}\
         .label{{font:11px sans-serif;fill:#333}}.in-order{{font:9px sans-serif;fill:#1a5fb4}}\
         .out-order{{font:9px sans-serif;fill:#c01c28}}.violation{{fill:none;stroke:#e01b24;stroke-width:2}}</style>"
    );

    let screen = |e: &upward_core::graph::EdgeRecord| -> Vec<(f64, f64)> {
        drawing.polyline(e).iter().map(|p| frame.map(p)).collect()
    };

    for e in graph.edges() {
        let pts = screen(e);
        let list: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{},{}", num(*x), num(*y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="edge" data-id="{}" points="{}"/>"#,
            escape(e.id.as_str()),
            list.join(" ")
        );
    }
    for e in graph.edges() {
        let ((mx, my), (dx, dy)) = midpoint(&screen(e));
        let (tip, back) = (
            (mx + dx * ARROW / 2.0, my + dy * ARROW / 2.0),
            (mx - dx * ARROW / 2.0, my - dy * ARROW / 2.0),
        );
        let (l, r) = (
            (back.0 - dy * ARROW / 2.0, back.1 + dx * ARROW / 2.0),
            (back.0 + dy * ARROW / 2.0, back.1 - dx * ARROW / 2.0),
        );
        let _ = writeln!(
            out,
            r#"<path class="arrow" d="M {} {} L {} {} L {} {} Z"/>"#,
            num(tip.0),
            num(tip.1),
            num(l.0),
            num(l.1),
            num(r.0),
            num(r.1)
        );
        if options.show_ids {
            let _ = writeln!(
                out,
                r#"<text class="label edge-label" x="{}" y="{}">{}</text>"#,
                num(mx + 6.0),
                num(my - 4.0),
                escape(e.id.as_str())
            );
        }
    }
    for (v, p) in drawing.positions() {
        let (x, y) = frame.map(p);
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{}" cy="{}" r="3.5"/>"#,
            num(x),
            num(y)
        );
        if options.show_ids {
            let _ = writeln!(
                out,
                r#"<text class="label vertex-label" x="{}" y="{}">{}</text>"#,
                num(x + 6.0),
                num(y - 6.0),
                escape(v.as_str())
            );
        }
    }

    if options.show_polarization_labels {
        let pol = extract_polarization(drawing);
        for (v, p) in &pol.0 {
            let mut emit = |class: &str, order: &[EdgeId]| {
                for (k, e) in order.iter().enumerate() {
                    let rec = graph.edge(e).unwrap();
                    let line: Vec<(f64, f64)> = drawing
                        .polyline_from(rec, v)
                        .iter()
                        .map(|q| frame.map(q))
                        .collect();
                    let (x, y) = label_anchor(&line);
                    let _ = writeln!(
                        out,
                        r#"<text class="{class}" data-vertex="{}" data-edge="{}" x="{}" y="{}">{}</text>"#,
                        escape(v.as_str()),
                        escape(e.as_str()),
                        num(x),
                        num(y),
                        k + 1
                    );
                }
            };
            emit("in-order", &p.in_order);
            emit("out-order", &p.out_order);
        }
    }

    for violation in validate_drawing(drawing).violations {
        if let Some(at) = &violation.at {
            let (x, y) = frame.map(at);
            let _ = writeln!(
                out,
                r#"<circle class="violation violation-{}" cx="{}" cy="{}" r="7"><title>{}</title></circle>"#,
                violation.code,
                num(x),
                num(y),
                escape(&violation.message)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
