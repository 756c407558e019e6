use std::fmt::Write as _;

use super::{format_float, LogBase};
use crate::monogamy::{grid_size, MonogamyRecord};
use crate::{Error, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 700.0;
const DARK: [f64; 3] = [20.0, 16.0, 48.0];
const BRIGHT: [f64; 3] = [252.0, 231.0, 37.0];
const LEGEND_TICKS: usize = 5;

// vertices of the simplex: alpha^2 = 1, beta^2 = 1, gamma^2 = 1
const V_ALPHA: (f64, f64) = (90.0, 610.0);
const V_BETA: (f64, f64) = (590.0, 610.0);
const V_GAMMA: (f64, f64) = (340.0, 177.0);

/// Triangular heatmap of δ over the `(β², γ²)` grid of a sweep of resolution
/// `n`. Records must be in sweep order.
pub fn render_svg(records: &[MonogamyRecord], n: usize, log_base: LogBase) -> Result<String> {
    if n < 1 || records.len() != grid_size(n) {
        return Err(Error::InvalidParameters(format!(
            "{} records do not form a resolution-{n} grid",
            records.len()
        )));
    }
    let row_start = |i: usize| i * (n + 1) - i * i.saturating_sub(1) / 2;
    let delta_at = |i: usize, j: usize| records[row_start(i) + j].delta;
    let max = records.iter().map(|r| r.delta).fold(0.0_f64, f64::max);
    let nf = n as f64;
    let point = |i: usize, j: usize| {
        let (b, g) = (i as f64 / nf, j as f64 / nf);
        (
            V_ALPHA.0 + b * (V_BETA.0 - V_ALPHA.0) + g * (V_GAMMA.0 - V_ALPHA.0),
            V_ALPHA.1 + b * (V_BETA.1 - V_ALPHA.1) + g * (V_GAMMA.1 - V_ALPHA.1),
        )
    };

    let mut svg = String::with_capacity(n * n * 110 + 4096);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="40" font-family="sans-serif" font-size="20" text-anchor="middle">monogamy slack δ ({})</text>"#,
        WIDTH / 2.0,
        log_base.unit()
    );
    let _ = writeln!(svg, r#"<g stroke-width="0.3">"#);
    let mut cell = |corners: [(usize, usize); 3]| {
        let mean = corners.iter().map(|&(i, j)| delta_at(i, j)).sum::<f64>() / 3.0;
        let color = color_for(mean, max);
        let pts: Vec<String> = corners
            .iter()
            .map(|&(i, j)| {
                let (x, y) = point(i, j);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="{color}" stroke="{color}"/>"#,
            pts.join(" ")
        );
    };
    for i in 0..n {
        for j in 0..n - i {
            cell([(i, j), (i + 1, j), (i, j + 1)]);
            if i + j + 2 <= n {
                cell([(i + 1, j), (i, j + 1), (i + 1, j + 1)]);
            }
        }
    }
    svg.push_str("</g>\n");

    let label = |svg: &mut String, (x, y): (f64, f64), dy: f64, text: &str| {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="16" text-anchor="middle">{text}</text>"#,
            y + dy
        );
    };
    label(&mut svg, V_ALPHA, 28.0, "α² = 1");
    label(&mut svg, V_BETA, 28.0, "β² = 1");
    label(&mut svg, V_GAMMA, -12.0, "γ² = 1");

    // legend
    let (lx, top, bottom, w) = (680.0, V_GAMMA.1, V_ALPHA.1, 24.0);
    let steps = 64;
    for s in 0..steps {
        let frac = s as f64 / steps as f64;
        let h = (bottom - top) / steps as f64;
        let y = bottom - (frac + 1.0 / steps as f64) * (bottom - top);
        let _ = writeln!(
            svg,
            r#"<rect x="{lx}" y="{y:.2}" width="{w}" height="{:.2}" fill="{}"/>"#,
            h + 0.5,
            color_for(frac * max, max)
        );
    }
    for t in 0..LEGEND_TICKS {
        let frac = t as f64 / (LEGEND_TICKS - 1) as f64;
        let y = bottom - frac * (bottom - top);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="black"/>"#,
            lx + w,
            lx + w + 6.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" font-family="sans-serif" font-size="12">{:.4}</text>"#,
            lx + w + 10.0,
            y + 4.0,
            frac * max
        );
    }
    let _ = writeln!(svg, "<!-- max_delta={} -->", format_float(max));
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Linear map from δ = 0 (dark) to δ = `max` (bright); negatives clamp to dark.
fn color_for(value: f64, max: f64) -> String {
    let t = if max > 0.0 {
        (value / max).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let c: Vec<u8> = (0..3)
        .map(|k| (DARK[k] + t * (BRIGHT[k] - DARK[k])).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}
