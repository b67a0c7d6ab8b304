//! Static SVG rendering: eigenfunction heatmap, domain outline, Cheeger
//! set and certificate arrows. World coordinates are used directly with a
//! y flip on the outer group.

use std::fmt::Write;

use cheeger_core::{Point, Polygon, ScalarField, VectorField};

/// Heatmap blocks and arrows across the longer side of the grid.
const HEAT_BLOCKS: usize = 96;
const ARROWS: usize = 24;

fn path(p: &Polygon) -> String {
    let mut d = String::new();
    for (i, v) in p.vertices().iter().enumerate() {
        let _ = write!(d, "{}{:.5},{:.5}", if i == 0 { "M" } else { "L" }, v.x, v.y);
    }
    d.push('Z');
    d
}

/// Blue (0) to red (1).
fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * t).round() as u8;
    let b = (255.0 * (1.0 - t)).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

pub fn render(outline: &Polygon, cheeger_set: &[Polygon], certificate: &VectorField, eigen: &ScalarField) -> String {
    let g = *eigen.grid();
    let (w, h) = (g.nx as f64 * g.cell, g.ny as f64 * g.cell);
    let (x0, y0) = (g.origin.x, g.origin.y);
    let stroke = w.max(h) / 400.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.5} {:.5} {w:.5} {h:.5}" width="800" height="{:.0}">"#,
        -(y0 + h),
        800.0 * h / w
    );
    let _ = writeln!(s, r#"<g transform="scale(1,-1)">"#);

    let step = g.nx.max(g.ny).div_ceil(HEAT_BLOCKS).max(1);
    let top = eigen.max().max(f64::MIN_POSITIVE);
    let _ = writeln!(s, r#"<g id="eigenfunction" stroke="none">"#);
    for bj in (0..g.ny).step_by(step) {
        for bi in (0..g.nx).step_by(step) {
            let (mut sum, mut n) = (0.0, 0usize);
            for j in bj..(bj + step).min(g.ny) {
                for i in bi..(bi + step).min(g.nx) {
                    let idx = g.index(i, j);
                    if eigen.domain.contains(idx) {
                        sum += eigen.values[idx];
                        n += 1;
                    }
                }
            }
            if n == 0 {
                continue;
            }
            let side = step as f64 * g.cell;
            let _ = writeln!(
                s,
                r#"<rect x="{:.5}" y="{:.5}" width="{side:.5}" height="{side:.5}" fill="{}"/>"#,
                x0 + bi as f64 * g.cell,
                y0 + bj as f64 * g.cell,
                color(sum / n as f64 / top)
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r#"<path id="domain" d="{}" fill="none" stroke="black" stroke-width="{:.5}"/>"#,
        path(outline),
        2.0 * stroke
    );
    for (k, p) in cheeger_set.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<path id="cheeger-set-{k}" d="{}" fill="none" stroke="white" stroke-dasharray="{:.5}" stroke-width="{:.5}"/>"#,
            path(p),
            6.0 * stroke,
            2.0 * stroke
        );
    }

    let step = g.nx.max(g.ny).div_ceil(ARROWS).max(1);
    let scale = 0.8 * step as f64 * g.cell;
    let _ = writeln!(s, r#"<g id="certificate" stroke="black" stroke-width="{stroke:.5}">"#);
    for j in (step / 2..g.ny).step_by(step) {
        for i in (step / 2..g.nx).step_by(step) {
            let idx = g.index(i, j);
            if !certificate.domain.contains(idx) {
                continue;
            }
            let c = g.center(i, j);
            let tip = c + certificate.at(idx) * scale;
            let back = (c - tip) * 0.25;
            let l = tip + back.rotate(0.4);
            let r = tip + back.rotate(-0.4);
            let _ = writeln!(s, r#"<path d="{}"/>"#, arrow(c, tip, l, r));
        }
    }
    let _ = writeln!(s, "</g>\n</g>\n</svg>");
    s
}

fn arrow(c: Point, tip: Point, l: Point, r: Point) -> String {
    format!(
        "M{:.5},{:.5}L{:.5},{:.5}M{:.5},{:.5}L{:.5},{:.5}L{:.5},{:.5}",
        c.x, c.y, tip.x, tip.y, l.x, l.y, tip.x, tip.y, r.x, r.y
    )
}
