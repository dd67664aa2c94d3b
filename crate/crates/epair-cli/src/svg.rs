//! Self-contained SVG heatmap emitter for rectangular numeric grids.
//!
//! The color ramp is a fixed three-stop gradient (dark violet -> teal ->
//! yellow, the viridis endpoints) interpolated linearly in RGB; its perceived
//! lightness increases strictly monotonically with the value, so equal values
//! render identically across plots and larger always means brighter.

use std::fmt::Write as _;

/// Value-to-color map over [lo, hi], clamped outside.
pub fn ramp(value: f64, lo: f64, hi: f64) -> (u8, u8, u8) {
    let t = if hi > lo {
        ((value - lo) / (hi - lo)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    const STOPS: [(f64, f64, f64); 3] = [
        (0x44 as f64, 0x01 as f64, 0x54 as f64), // #440154
        (0x21 as f64, 0x91 as f64, 0x8c as f64), // #21918c
        (0xfd as f64, 0xe7 as f64, 0x25 as f64), // #fde725
    ];
    let scaled = t * 2.0;
    let (a, b, frac) = if scaled <= 1.0 {
        (STOPS[0], STOPS[1], scaled)
    } else {
        (STOPS[1], STOPS[2], scaled - 1.0)
    };
    let mix = |x: f64, y: f64| (x + (y - x) * frac).round() as u8;
    (mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// A grid of values sampled on [0, x_max] x [0, y_max]; `values[i][j]` is the
/// point (x_i, y_j) with x varying over the outer index.
pub struct HeatmapGrid<'a> {
    pub values: &'a [Vec<f64>],
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub x_max: f64,
    pub y_max: f64,
    /// Fixed color scale; cos Ω plots use [0, 1] for comparability.
    pub scale: (f64, f64),
    pub title: &'a str,
}

/// Renders the grid as a standalone SVG with axis labels, tick marks, the
/// title, and a color bar.
pub fn heatmap_svg(grid: &HeatmapGrid) -> String {
    let nx = grid.values.len();
    let ny = grid.values.first().map_or(0, Vec::len);
    let (plot_w, plot_h) = (520.0, 520.0);
    let (left, top) = (70.0, 50.0);
    let width = left + plot_w + 110.0;
    let height = top + plot_h + 70.0;
    let cell_w = plot_w / nx as f64;
    let cell_h = plot_h / ny as f64;

    let mut svg = String::with_capacity(nx * ny * 60 + 2048);
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = write!(
        svg,
        r#"<rect width="{width}" height="{height}" fill="white"/><text x="{}" y="28" font-family="monospace" font-size="16" text-anchor="middle">{}</text>"#,
        left + plot_w / 2.0,
        grid.title
    );
    for (i, column) in grid.values.iter().enumerate() {
        for (j, &v) in column.iter().enumerate() {
            let (r, g, b) = ramp(v, grid.scale.0, grid.scale.1);
            // y axis points up: j = 0 is drawn at the bottom.
            let x = left + i as f64 * cell_w;
            let y = top + plot_h - (j + 1) as f64 * cell_h;
            let _ = write!(
                svg,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="rgb({r},{g},{b})"/>"#,
                cell_w + 0.5,
                cell_h + 0.5
            );
        }
    }
    // Axes and ticks.
    let _ = write!(
        svg,
        r#"<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=5 {
        let frac = k as f64 / 5.0;
        let xv = grid.x_max * frac;
        let yv = grid.y_max * frac;
        let x = left + plot_w * frac;
        let y = top + plot_h * (1.0 - frac);
        let _ = write!(
            svg,
            r#"<line x1="{x:.1}" y1="{}" x2="{x:.1}" y2="{}" stroke="black"/><text x="{x:.1}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{xv:.3}</text>"#,
            top + plot_h,
            top + plot_h + 6.0,
            top + plot_h + 20.0
        );
        let _ = write!(
            svg,
            r#"<line x1="{}" y1="{y:.1}" x2="{left}" y2="{y:.1}" stroke="black"/><text x="{}" y="{:.1}" font-family="monospace" font-size="11" text-anchor="end">{yv:.3}</text>"#,
            left - 6.0,
            left - 10.0,
            y + 4.0
        );
    }
    let _ = write!(
        svg,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="14" text-anchor="middle">{}</text>"#,
        left + plot_w / 2.0,
        top + plot_h + 48.0,
        grid.x_label
    );
    let _ = write!(
        svg,
        r#"<text x="18" y="{}" font-family="monospace" font-size="14" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0,
        grid.y_label
    );
    // Color bar.
    let bar_x = left + plot_w + 30.0;
    let bar_h = plot_h;
    let steps = 64;
    for k in 0..steps {
        let frac = k as f64 / (steps - 1) as f64;
        let v = grid.scale.0 + (grid.scale.1 - grid.scale.0) * frac;
        let (r, g, b) = ramp(v, grid.scale.0, grid.scale.1);
        let y = top + bar_h * (1.0 - (k + 1) as f64 / steps as f64);
        let _ = write!(
            svg,
            r#"<rect x="{bar_x}" y="{y:.2}" width="18" height="{:.2}" fill="rgb({r},{g},{b})"/>"#,
            bar_h / steps as f64 + 0.5
        );
    }
    let _ = write!(
        svg,
        r#"<rect x="{bar_x}" y="{top}" width="18" height="{bar_h}" fill="none" stroke="black"/><text x="{}" y="{}" font-family="monospace" font-size="11">{:.2}</text><text x="{}" y="{}" font-family="monospace" font-size="11">{:.2}</text>"#,
        bar_x + 24.0,
        top + bar_h + 4.0,
        grid.scale.0,
        bar_x + 24.0,
        top + 10.0,
        grid.scale.1
    );
    svg.push_str("</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_lightness_is_monotone() {
        let luminance = |(r, g, b): (u8, u8, u8)| {
            0.2126 * f64::from(r) + 0.7152 * f64::from(g) + 0.0722 * f64::from(b)
        };
        let mut last = -1.0;
        for k in 0..=100 {
            let l = luminance(ramp(k as f64 / 100.0, 0.0, 1.0));
            assert!(l > last, "luminance not monotone at step {k}");
            last = l;
        }
    }

    #[test]
    fn ramp_clamps_out_of_range() {
        assert_eq!(ramp(-1.0, 0.0, 1.0), ramp(0.0, 0.0, 1.0));
        assert_eq!(ramp(2.0, 0.0, 1.0), ramp(1.0, 0.0, 1.0));
    }

    #[test]
    fn svg_contains_labels_and_cells() {
        let values = vec![vec![0.0, 0.5], vec![0.7, 1.0]];
        let svg = heatmap_svg(&HeatmapGrid {
            values: &values,
            x_label: "beta",
            y_label: "beta_v",
            x_max: 0.999,
            y_max: 0.999,
            scale: (0.0, 1.0),
            title: "cos Omega, alpha = 0.785",
        });
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>"));
        assert!(svg.contains(">beta<"));
        assert!(svg.contains(">beta_v<"));
        assert!(svg.contains("alpha = 0.785"));
        assert!(svg.matches("<rect").count() > 4);
    }
}
