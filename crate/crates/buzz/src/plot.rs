//! SVG rendering of zigzag persistence diagrams.
//!
//! Birth runs along the horizontal axis and death along the vertical one, both
//! over `[0, n + 1]` with a tick at every half-integer grid point. Output is a
//! pure function of the diagram, so equal diagrams give equal bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::zigzag::ZigzagDiagram;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Writes the SVG of `diagram` to `path`.
pub fn render_diagram(diagram: &ZigzagDiagram, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, diagram_svg(diagram))?;
    Ok(())
}

/// The SVG document for `diagram`.
pub fn diagram_svg(diagram: &ZigzagDiagram) -> String {
    let end = (diagram.n_snapshots + 1) as f64;
    let span = SIZE - 2.0 * MARGIN;
    let x = |t: f64| MARGIN + span * t / end;
    let y = |t: f64| SIZE - MARGIN - span * t / end;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(s, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);

    // axes
    let (x0, y0, x1, y1) = (x(0.0), y(0.0), x(end), y(end));
    let _ = writeln!(
        s,
        r##"<path d="M{x0:.2} {y1:.2} L{x0:.2} {y0:.2} L{x1:.2} {y0:.2}" fill="none" stroke="#000000"/>"##
    );
    for h in 0..=2 * (diagram.n_snapshots + 1) {
        let t = h as f64 / 2.0;
        let major = h % 2 == 0;
        let len = if major { 6.0 } else { 3.0 };
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{y0:.2}" x2="{:.2}" y2="{:.2}" stroke="#000000"/>"##,
            x(t),
            x(t),
            y0 + len
        );
        let _ = writeln!(
            s,
            r##"<line x1="{x0:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#000000"/>"##,
            y(t),
            x0 - len,
            y(t)
        );
        if major {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                x(t),
                y0 + 18.0,
                h / 2
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                x0 - 9.0,
                y(t) + 3.5,
                h / 2
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">birth</text>"#,
        SIZE / 2.0,
        SIZE - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">death</text>"#,
        SIZE / 2.0,
        SIZE / 2.0
    );
    let _ = writeln!(
        s,
        r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="#888888" stroke-dasharray="4 3"/>"##
    );

    for p in &diagram.points {
        let (cx, cy) = (x(p.birth.as_f64()), y(p.death.as_f64()));
        let color = COLORS[p.dim % COLORS.len()];
        let _ = match p.dim {
            0 => writeln!(
                s,
                r#"<circle class="h0" cx="{cx:.2}" cy="{cy:.2}" r="4" fill="{color}"/>"#
            ),
            1 => writeln!(
                s,
                r#"<path class="h1" d="M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2} Z" fill="{color}"/>"#,
                cx,
                cy - 5.0,
                cx + 4.5,
                cy + 3.5,
                cx - 4.5,
                cy + 3.5
            ),
            d => writeln!(
                s,
                r#"<rect class="h{d}" x="{:.2}" y="{:.2}" width="8" height="8" fill="{color}"/>"#,
                cx - 4.0,
                cy - 4.0
            ),
        };
    }

    let dims: std::collections::BTreeSet<usize> = diagram.points.iter().map(|p| p.dim).collect();
    for (row, d) in dims.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{}">H{d}</text>"#,
            SIZE - MARGIN - 20.0,
            MARGIN + 12.0 * row as f64,
            COLORS[d % COLORS.len()]
        );
    }
    s.push_str("</svg>\n");
    s
}
