use std::fmt::Write as _;
use std::path::Path;

use super::PlanePoint;
use crate::error::Result;

pub const CSV_HEADER: &str = "x,y,radius,class_index,re_nu,im_nu";

/// Ring colors, innermost first; classes past the end wrap around.
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Clone, Debug)]
pub struct Canvas {
    /// Width and height in user units.
    pub size: f64,
    pub margin: f64,
    pub point_radius: f64,
    pub palette: Vec<String>,
}

impl Default for Canvas {
    fn default() -> Self {
        Canvas {
            size: 800.0,
            margin: 40.0,
            point_radius: 4.0,
            palette: PALETTE.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FigureSpec {
    pub points: Vec<PlanePoint>,
    /// One ring per class, ascending.
    pub radii: Vec<f64>,
    /// Index pairs into `points`.
    pub edges: Vec<(usize, usize)>,
    /// Optional ring labels, emitted as `data-label`.
    pub ring_labels: Vec<String>,
    /// Optional text for the `<desc>` element.
    pub description: Option<String>,
    pub canvas: Canvas,
}

impl FigureSpec {
    pub fn new(points: Vec<PlanePoint>) -> Self {
        let radii = ring_radii(&points);
        FigureSpec {
            points,
            radii,
            edges: Vec::new(),
            ring_labels: Vec::new(),
            description: None,
            canvas: Canvas::default(),
        }
    }
}

/// Mean radius of each orbit class.
pub fn ring_radii(points: &[PlanePoint]) -> Vec<f64> {
    let n = points.iter().map(|p| p.orbit_class + 1).max().unwrap_or(0);
    let mut sum = vec![0.0; n];
    let mut count = vec![0usize; n];
    for p in points {
        sum[p.orbit_class] += p.radius();
        count[p.orbit_class] += 1;
    }
    sum.iter()
        .zip(&count)
        .map(|(s, &c)| if c == 0 { 0.0 } else { s / c as f64 })
        .collect()
}

/// Six decimals, with negative zero printed as zero.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
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

pub fn render_svg(fig: &FigureSpec) -> String {
    let c = &fig.canvas;
    let mid = c.size / 2.0;
    let outer = fig
        .radii
        .iter()
        .copied()
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let scale = (mid - c.margin) / outer;
    let px = |x: f64| fmt6(mid + x * scale);
    let py = |y: f64| fmt6(mid - y * scale);
    let color = |k: usize| {
        c.palette
            .get(k % c.palette.len().max(1))
            .map_or("black", String::as_str)
    };
    let size = fmt6(c.size);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    if let Some(d) = &fig.description {
        let _ = writeln!(s, "<desc>{}</desc>", escape(d));
    }
    let _ = writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<g id="rings" fill="none" stroke="#999999" stroke-width="0.5">"##
    );
    for (k, r) in fig.radii.iter().enumerate() {
        let label = fig
            .ring_labels
            .get(k)
            .map(|l| format!(r#" data-label="{}""#, escape(l)))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<circle class="ring" data-class="{k}"{label} cx="{}" cy="{}" r="{}"/>"#,
            px(0.0),
            py(0.0),
            fmt6(r * scale)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g id="edges" stroke="#bbbbbb" stroke-width="0.3">"##);
    for &(i, j) in &fig.edges {
        let (a, b) = (&fig.points[i], &fig.points[j]);
        let _ = writeln!(
            s,
            r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="roots">"#);
    for p in &fig.points {
        let _ = writeln!(
            s,
            r#"<circle class="root" data-class="{}" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            p.orbit_class,
            px(p.x),
            py(p.y),
            fmt6(c.point_radius),
            color(p.orbit_class)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

/// One row per point: position, ring radius, class, source eigenvalue.
pub fn render_csv(points: &[PlanePoint], radii: &[f64]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for p in points {
        let r = radii
            .get(p.orbit_class)
            .copied()
            .unwrap_or_else(|| p.radius());
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt6(p.x),
            fmt6(p.y),
            fmt6(r),
            p.orbit_class,
            fmt6(p.source_eig.re),
            fmt6(p.source_eig.im)
        );
    }
    s
}

pub fn write_svg(fig: &FigureSpec, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(fig))?;
    Ok(())
}

pub fn write_csv(fig: &FigureSpec, path: &Path) -> Result<()> {
    std::fs::write(path, render_csv(&fig.points, &fig.radii))?;
    Ok(())
}
