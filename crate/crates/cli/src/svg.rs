//! Minimal SVG 1.1 rendering of a network with its shortcuts.

use std::fmt::Write;

use shortcut_core::Point;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub at: Point,
    pub class: &'static str,
    pub label: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub vertices: Vec<Point>,
    pub closed: bool,
    pub shortcuts: Vec<(Point, Point)>,
    pub markers: Vec<Marker>,
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
    pad: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> Frame {
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
        let scale = CANVAS / span;
        let pad = MARGIN * CANVAS;
        Frame {
            min_x,
            max_y,
            scale,
            width: (max_x - min_x) * scale + 2.0 * pad,
            height: (max_y - min_y) * scale + 2.0 * pad,
            pad,
        }
    }

    // SVG's y axis points down
    fn map(&self, p: Point) -> (f64, f64) {
        (
            self.pad + (p.x - self.min_x) * self.scale,
            self.pad + (self.max_y - p.y) * self.scale,
        )
    }
}

pub fn render(scene: &Scene) -> String {
    let mut all = scene.vertices.clone();
    all.extend(scene.shortcuts.iter().flat_map(|&(a, b)| [a, b]));
    all.extend(scene.markers.iter().map(|m| m.at));
    let frame = Frame::fit(&all);
    let stroke = 2.0;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        frame.width, frame.height, frame.width, frame.height
    );
    let coords: Vec<String> = scene
        .vertices
        .iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let tag = if scene.closed { "polygon" } else { "polyline" };
    let _ = writeln!(
        out,
        r#"  <{tag} class="network" points="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#,
        coords.join(" ")
    );
    for &(a, b) in &scene.shortcuts {
        let (x1, y1) = frame.map(a);
        let (x2, y2) = frame.map(b);
        let _ = writeln!(
            out,
            r#"  <line class="shortcut" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="crimson" stroke-width="{stroke}" stroke-dasharray="8 5"/>"#
        );
    }
    for m in &scene.markers {
        let (x, y) = frame.map(m.at);
        let (fill, radius) = if m.class == "witness" {
            ("orange", 7.0)
        } else {
            ("royalblue", 5.0)
        };
        let _ = writeln!(
            out,
            r#"  <circle class="{}" cx="{x:.3}" cy="{y:.3}" r="{radius}" fill="{fill}"><title>{}</title></circle>"#,
            m.class, m.label
        );
    }
    out.push_str("</svg>\n");
    out
}
