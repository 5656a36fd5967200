//! Static SVG figures: a filled table, stroked overlay polygons, orbit dots.
//!
//! Panels are laid out left to right, each fitted to its own geometry with a
//! 10% margin. The y axis is flipped so counterclockwise stays counterclockwise.

use std::fmt::Write;

use dedal::{Complex64, Polygon};

const PANEL_PX: f64 = 400.0;
const MARGIN: f64 = 0.1;
const OVERLAY_COLORS: [&str; 4] = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

#[derive(Debug, Clone, Default)]
pub struct Panel {
    /// Filled, vertices labelled `z_i`.
    pub table: Option<Polygon>,
    /// Stroked, vertices labelled `w_i` when `label_overlays` is set.
    pub overlays: Vec<Polygon>,
    pub label_overlays: bool,
    pub dots: Vec<Complex64>,
    pub title: Option<String>,
}

impl Panel {
    fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.table
            .iter()
            .chain(&self.overlays)
            .flat_map(|p| p.vertices().iter().copied())
            .chain(self.dots.iter().copied())
    }
}

struct Frame {
    min: Complex64,
    max: Complex64,
    pad: f64,
    offset: f64,
}

impl Frame {
    fn new(panel: &Panel, offset: f64) -> Frame {
        let mut min = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut max = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for z in panel.points() {
            min = Complex64::new(min.re.min(z.re), min.im.min(z.im));
            max = Complex64::new(max.re.max(z.re), max.im.max(z.im));
        }
        if !min.re.is_finite() {
            min = Complex64::new(-1.0, -1.0);
            max = Complex64::new(1.0, 1.0);
        }
        let extent = (max.re - min.re).max(max.im - min.im).max(1e-9);
        Frame {
            min,
            max,
            pad: MARGIN * extent,
            offset,
        }
    }

    fn width(&self) -> f64 {
        self.max.re - self.min.re + 2.0 * self.pad
    }

    fn height(&self) -> f64 {
        self.max.im - self.min.im + 2.0 * self.pad
    }

    fn extent(&self) -> f64 {
        self.pad / MARGIN
    }

    fn map(&self, z: Complex64, top: f64) -> (f64, f64) {
        (
            self.offset + z.re - self.min.re + self.pad,
            top + self.max.im + self.pad - z.im,
        )
    }
}

fn points_attr(p: &Polygon, frame: &Frame, top: f64) -> String {
    p.vertices()
        .iter()
        .map(|&z| {
            let (x, y) = frame.map(z, top);
            format!("{x:.6},{y:.6}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn labels(out: &mut String, p: &Polygon, name: &str, frame: &Frame, top: f64, font: f64) {
    for (i, &z) in p.vertices().iter().enumerate() {
        let (x, y) = frame.map(z, top);
        let _ = writeln!(
            out,
            r#"<text x="{x:.6}" y="{:.6}" font-size="{font:.6}">{name}<tspan baseline-shift="sub" font-size="{:.6}">{}</tspan></text>"#,
            y - 0.3 * font,
            0.7 * font,
            i + 1
        );
    }
}

pub fn render(panels: &[Panel]) -> String {
    let mut frames = Vec::with_capacity(panels.len());
    let mut offset = 0.0;
    for panel in panels {
        let frame = Frame::new(panel, offset);
        offset += frame.width();
        frames.push(frame);
    }
    let width = offset;
    let height = frames.iter().map(Frame::height).fold(0.0, f64::max);
    let px_per_unit = frames
        .iter()
        .map(|f| PANEL_PX / f.width().max(f.height()))
        .fold(f64::INFINITY, f64::min);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.6} {height:.6}" width="{:.0}" height="{:.0}">"#,
        width * px_per_unit,
        height * px_per_unit
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width:.6}" height="{height:.6}" fill="white"/>"#
    );
    for (panel, frame) in panels.iter().zip(&frames) {
        // center shorter panels vertically
        let top = (height - frame.height()) / 2.0;
        let font = 0.04 * frame.extent();
        let _ = writeln!(out, "<g>");
        if let Some(title) = &panel.title {
            let _ = writeln!(
                out,
                r#"<text x="{:.6}" y="{:.6}" font-size="{:.6}" text-anchor="middle">{title}</text>"#,
                frame.offset + frame.width() / 2.0,
                top + 0.7 * frame.pad,
                font
            );
        }
        if let Some(table) = &panel.table {
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="#aec7e8" fill-opacity="0.6" stroke="#1f77b4" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##,
                points_attr(table, frame, top)
            );
        }
        for (k, overlay) in panel.overlays.iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"#,
                points_attr(overlay, frame, top),
                OVERLAY_COLORS[k % OVERLAY_COLORS.len()]
            );
        }
        for &z in &panel.dots {
            let (x, y) = frame.map(z, top);
            let _ = writeln!(
                out,
                r#"<circle cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="black"/>"#,
                0.008 * frame.extent()
            );
        }
        if let Some(table) = &panel.table {
            labels(&mut out, table, "z", frame, top, font);
        }
        if panel.label_overlays {
            for overlay in &panel.overlays {
                labels(&mut out, overlay, "w", frame, top, font);
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Polygon {
        Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn counts_elements() {
        let svg = render(&[Panel {
            table: Some(triangle()),
            overlays: vec![Polygon::from_xy(&[(-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]).unwrap()],
            label_overlays: true,
            ..Panel::default()
        }]);
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<text").count(), 6);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn viewbox_has_margin_and_flips_y() {
        let svg = render(&[Panel {
            table: Some(triangle()),
            ..Panel::default()
        }]);
        assert!(svg.contains(r#"viewBox="0 0 1.200000 1.200000""#));
        // z_1 = 0 sits at the bottom left, z_3 = i at the top left
        assert!(svg.contains(r#"points="0.100000,1.100000 1.100000,1.100000 0.100000,0.100000""#));
    }
}
