//! Region maps as standalone SVG 1.1.

use std::fmt::Write;

use crate::sweep::{Axis, RegionLabel, SweepRow};

/// Fill colour per label, in label order.
pub const PALETTE: [&str; 7] = [
    "#4d4d4d", // excluded, drastic
    "#b3b3b3", // excluded, budget
    "#1b9e77", // up, profitable
    "#66c2a5", // up, unprofitable
    "#d95f02", // down, profitable
    "#fc8d62", // down, unprofitable
    "#7570b3", // equal
];

const PLOT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const LEGEND_W: f64 = 230.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders rows laid out x-major (as produced by the sweep). The y axis
/// points up.
pub fn render(rows: &[SweepRow], x: &Axis, y: &Axis) -> String {
    let cw = PLOT / x.steps as f64;
    let ch = PLOT / y.steps as f64;
    let width = MARGIN + PLOT + 20.0 + LEGEND_W;
    let height = MARGIN + PLOT + MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(s, r#"<g shape-rendering="crispEdges">"#);
    for (k, r) in rows.iter().enumerate() {
        let (i, j) = (k / y.steps, k % y.steps);
        let px = MARGIN + i as f64 * cw;
        let py = MARGIN + PLOT - (j + 1) as f64 * ch;
        let _ = writeln!(
            s,
            r#"<rect x="{px:.3}" y="{py:.3}" width="{cw:.3}" height="{ch:.3}" fill="{}"/>"#,
            PALETTE[r.label.index()]
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#
    );
    let font = r#"font-family="sans-serif" font-size="12""#;
    let bottom = MARGIN + PLOT;
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{:.1}" {font}>{}</text>"#,
        bottom + 16.0,
        x.min
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" {font} text-anchor="end">{}</text>"#,
        MARGIN + PLOT,
        bottom + 16.0,
        x.max
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" {font} text-anchor="middle">{}</text>"#,
        MARGIN + PLOT / 2.0,
        bottom + 36.0,
        escape(&x.path)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{bottom:.1}" {font} text-anchor="end">{}</text>"#,
        MARGIN - 6.0,
        y.min
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" {font} text-anchor="end">{}</text>"#,
        MARGIN - 6.0,
        MARGIN + 12.0,
        y.max
    );
    let (lx, ly) = (MARGIN / 3.0, MARGIN + PLOT / 2.0);
    let _ = writeln!(
        s,
        r#"<text x="{lx:.1}" y="{ly:.1}" {font} text-anchor="middle" transform="rotate(-90 {lx:.1} {ly:.1})">{}</text>"#,
        escape(&y.path)
    );
    let legend_x = MARGIN + PLOT + 20.0;
    for (k, label) in RegionLabel::ALL.iter().enumerate() {
        let ty = MARGIN + k as f64 * 22.0;
        let _ = writeln!(
            s,
            r#"<rect x="{legend_x:.1}" y="{ty:.1}" width="14" height="14" fill="{}" stroke="black"/>"#,
            PALETTE[k]
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" {font}>{}</text>"#,
            legend_x + 20.0,
            ty + 11.0,
            label.as_str()
        );
    }
    s.push_str("</svg>\n");
    s
}
