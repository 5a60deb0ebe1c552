#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use shortcut_core::{CycleNetwork, PathNetwork, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn regular(n: usize) -> CycleNetwork {
    let pts = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    CycleNetwork::new(pts).unwrap()
}

pub fn square() -> CycleNetwork {
    CycleNetwork::new(vec![
        Point::new(0., 0.),
        Point::new(1., 0.),
        Point::new(1., 1.),
        Point::new(0., 1.),
    ])
    .unwrap()
}

/// Convex hull, counter-clockwise, without collinear points.
pub fn hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A convex cycle with between 3 and `max_vertices` vertices: either points
/// on a random ellipse or the hull of random points.
pub fn random_convex_cycle(rng: &mut impl Rng, max_vertices: usize) -> CycleNetwork {
    loop {
        let n = rng.gen_range(3..=max_vertices);
        let pts = if rng.gen_bool(0.5) {
            let (rx, ry) = (rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0));
            let rot: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            angles.sort_by(f64::total_cmp);
            angles
                .into_iter()
                .map(|t| {
                    let (x, y) = (rx * t.cos(), ry * t.sin());
                    Point::new(x * rot.cos() - y * rot.sin(), x * rot.sin() + y * rot.cos())
                })
                .collect()
        } else {
            hull(
                (0..3 * n)
                    .map(|_| Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                    .collect(),
            )
            .into_iter()
            .take(max_vertices)
            .collect()
        };
        let pts = hull(pts);
        if pts.len() < 3 {
            continue;
        }
        if let Ok(c) = CycleNetwork::new(pts) {
            if c.is_convex() && !c.is_degenerate() {
                return c;
            }
        }
    }
}

pub fn random_path(rng: &mut impl Rng, max_vertices: usize) -> PathNetwork {
    loop {
        let n = rng.gen_range(2..=max_vertices);
        let pts = (0..n)
            .map(|_| Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
            .collect();
        if let Ok(p) = PathNetwork::new(pts) {
            return p;
        }
    }
}

/// Point at arc length `t` along `vertices`, computed from scratch.
pub fn walk(vertices: &[Point], closed: bool, t: f64) -> Point {
    let n = vertices.len();
    let edges = if closed { n } else { n - 1 };
    let mut left = t;
    for i in 0..edges {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        let len = a.distance(b);
        if left <= len || i + 1 == edges {
            let f = (left / len).clamp(0.0, 1.0);
            return Point::new(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y));
        }
        left -= len;
    }
    vertices[0]
}
