//! Standalone SVG 1.1 figures of point sets, spanning trees and disks.

use std::fmt::Write as _;
use std::io::Write;

use mstratio::{Bipartition, PointSet, SpanningTree};

const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";
const GREY: &str = "#9a9a9a";

/// What to draw on top of the points.
#[derive(Default)]
pub struct Figure<'a> {
    pub tree: Option<&'a SpanningTree>,
    /// Colours points and adds the two part trees.
    pub parts: Option<(&'a Bipartition, &'a SpanningTree, &'a SpanningTree)>,
    /// `(center index, radius)`
    pub disks: Vec<(usize, f64)>,
    pub title: Option<String>,
}

struct Frame {
    min_x: f64,
    min_y: f64,
    width: f64,
    height: f64,
}

impl Frame {
    /// Bounding box of points and disks, grown by 5% of its larger side.
    fn fit(set: &PointSet, disks: &[(usize, f64)]) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        let mut grow = |x: f64, y: f64, r: f64| {
            x0 = x0.min(x - r);
            x1 = x1.max(x + r);
            // svg y grows downwards
            y0 = y0.min(-y - r);
            y1 = y1.max(-y + r);
        };
        for p in set.iter() {
            grow(p[0], p[1], 0.0);
        }
        for &(i, r) in disks {
            let p = set.point(i);
            grow(p[0], p[1], r);
        }
        let span = (x1 - x0).max(y1 - y0);
        let span = if span > 0.0 { span } else { 1.0 };
        let margin = 0.05 * span;
        Frame {
            min_x: x0 - margin,
            min_y: y0 - margin,
            width: (x1 - x0) + 2.0 * margin,
            height: (y1 - y0) + 2.0 * margin,
        }
    }

    fn unit(&self) -> f64 {
        self.width.max(self.height)
    }
}

fn segments(svg: &mut String, set: &PointSet, tree: &SpanningTree, style: &str) {
    let _ = writeln!(svg, "  <g {style}>");
    for e in &tree.edges {
        let (a, b) = (set.point(e.u), set.point(e.v));
        let _ = writeln!(
            svg,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            a[0], -a[1], b[0], -b[1]
        );
    }
    svg.push_str("  </g>\n");
}

pub fn render(set: &PointSet, fig: &Figure) -> String {
    let frame = Frame::fit(set, &fig.disks);
    let u = frame.unit();
    let stroke = 0.004 * u;
    let dot = 0.008 * u;
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="800" height="{}">"#,
        frame.min_x,
        frame.min_y,
        frame.width,
        frame.height,
        (800.0 * frame.height / frame.width).round()
    );
    if let Some(title) = &fig.title {
        let _ = writeln!(svg, "  <title>{}</title>", escape(title));
    }
    let _ = writeln!(
        svg,
        r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        frame.min_x, frame.min_y, frame.width, frame.height
    );

    if !fig.disks.is_empty() {
        let _ = writeln!(
            svg,
            r#"  <g id="disks" fill="none" stroke="{GREY}" stroke-width="{stroke}">"#
        );
        for &(i, r) in &fig.disks {
            let p = set.point(i);
            let _ = writeln!(svg, r#"    <circle cx="{}" cy="{}" r="{r}"/>"#, p[0], -p[1]);
        }
        svg.push_str("  </g>\n");
    }

    if let Some(tree) = fig.tree {
        let style = if fig.parts.is_some() {
            format!(
                r#"id="emst" stroke="{GREY}" stroke-width="{stroke}" stroke-dasharray="{} {}""#,
                3.0 * stroke,
                2.0 * stroke
            )
        } else {
            format!(r#"id="emst" stroke="black" stroke-width="{stroke}""#)
        };
        segments(&mut svg, set, tree, &style);
    }

    let mut colour = vec!["black"; set.len()];
    if let Some((bp, red_tree, blue_tree)) = fig.parts {
        segments(
            &mut svg,
            set,
            red_tree,
            &format!(
                r#"id="red-tree" stroke="{RED}" stroke-width="{}""#,
                1.5 * stroke
            ),
        );
        segments(
            &mut svg,
            set,
            blue_tree,
            &format!(
                r#"id="blue-tree" stroke="{BLUE}" stroke-width="{}""#,
                1.5 * stroke
            ),
        );
        for &i in bp.red() {
            colour[i] = RED;
        }
        for &i in bp.blue() {
            colour[i] = BLUE;
        }
    }

    svg.push_str("  <g id=\"points\">\n");
    for (i, p) in set.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"    <circle cx="{}" cy="{}" r="{dot}" fill="{}"><title>{i}</title></circle>"#,
            p[0], -p[1], colour[i]
        );
    }
    svg.push_str("  </g>\n</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn emit_svg<W: Write>(set: &PointSet, fig: &Figure, mut out: W) -> std::io::Result<()> {
    out.write_all(render(set, fig).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use mstratio::{emst, validate};

    #[test]
    fn view_box_has_five_percent_margin() {
        let set = validate(vec![vec![0.0, 0.0], vec![10.0, 0.0], vec![10.0, 5.0]]).unwrap();
        let tree = emst(&set);
        let svg = render(
            &set,
            &Figure {
                tree: Some(&tree),
                ..Default::default()
            },
        );
        assert!(svg.contains(r#"viewBox="-0.5 -5.5 11 6""#), "{svg}");
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn disks_widen_the_frame() {
        let set = validate(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let svg = render(
            &set,
            &Figure {
                disks: vec![(0, 1.0), (1, 1.0)],
                ..Default::default()
            },
        );
        // x spans [-1, 2], y spans [-1, 1]
        assert!(svg.contains(r#"viewBox="-1.15 -1.15 3.3 2.3""#), "{svg}");
    }
}
