//! SVG 1.1 rendering of a simultaneous embedding on its grid.
//!
//! Drawing happens in a y-up group (`scale(1,-1)`); labels flip back
//! locally so they read upright.

use std::fmt::Write as _;

use crate::geometry::{segments, GridEmbedding, SegmentOwner};
use crate::pathpair::PathPair;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Pixels per grid unit.
    pub cell: u32,
    pub x_color: String,
    pub y_color: String,
    pub shared_color: String,
    pub grid_color: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            cell: 40,
            x_color: "blue".into(),
            y_color: "lightcoral".into(),
            shared_color: "purple".into(),
            grid_color: "#dddddd".into(),
        }
    }
}

pub fn render_svg(p: &PathPair, emb: &GridEmbedding, opts: &RenderOptions) -> String {
    let cell = opts.cell.max(1) as i64;
    let margin = cell;
    let (lo, hi) = emb
        .bounding_box()
        .unwrap_or((Default::default(), Default::default()));
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let px = |v: i64, base: i64| (v - base) * cell;
    let (width, height) = (w * cell + 2 * margin, h * cell + 2 * margin);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<g transform="translate({margin},{}) scale(1,-1)">"#,
        margin + h * cell
    );

    let _ = writeln!(out, r#"<g stroke="{}" stroke-width="1">"#, opts.grid_color);
    for i in 0..=w {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="0" x2="{0}" y2="{1}"/>"#,
            i * cell,
            h * cell
        );
    }
    for j in 0..=h {
        let _ = writeln!(
            out,
            r#"<line x1="0" y1="{0}" x2="{1}" y2="{0}"/>"#,
            j * cell,
            w * cell
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g stroke-width=\"3\" stroke-linecap=\"round\">\n");
    for s in segments(p) {
        let (a, b) = (emb.points[s.ends.0], emb.points[s.ends.1]);
        let (color, class) = match s.owner {
            SegmentOwner::X(_) => (&opts.x_color, "px"),
            SegmentOwner::Y(_) => (&opts.y_color, "py"),
            SegmentOwner::Shared { .. } => (&opts.shared_color, "shared"),
        };
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"/>"#,
            px(a.x, lo.x),
            px(a.y, lo.y),
            px(b.x, lo.x),
            px(b.y, lo.y)
        );
    }
    out.push_str("</g>\n");

    let r = (cell / 8).max(2);
    let font = (cell / 3).max(8);
    for (v, q) in emb.points.iter().enumerate() {
        let (cx, cy) = (px(q.x, lo.x), px(q.y, lo.y));
        let _ = writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" transform="scale(1,-1)" font-family="sans-serif" font-size="{font}">{}</text>"#,
            cx + r + 1,
            -(cy + r + 1),
            escape(&p.label(v))
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
