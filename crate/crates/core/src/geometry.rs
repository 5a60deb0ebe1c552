//! Planar polygonal networks parameterized by arc length.
//!
//! A point on a network is addressed by an [`ArcPosition`]: the index of the
//! containing edge and the relative offset `lambda` along it. Both network
//! kinds keep prefix sums of their edge lengths so that conversions between
//! positions and arc length are a binary search away.
//!
//! Cycles are always stored counter-clockwise; input given clockwise is
//! re-oriented on construction while keeping the first vertex in place.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative geometry tolerance. Absolute tolerances are this value scaled by
/// the total length of the network at hand.
pub const GEOMETRY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product; positive when `other` turns left.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            (1.0 - t) * self.x + t * other.x,
            (1.0 - t) * self.y + t * other.y,
        )
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// A point on a network: edge `edge` at relative offset `lambda` from the
/// edge's first vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcPosition {
    pub edge: usize,
    pub lambda: f64,
}

impl ArcPosition {
    pub const fn new(edge: usize, lambda: f64) -> Self {
        ArcPosition { edge, lambda }
    }
}

/// Shared behaviour of [`PathNetwork`] and [`CycleNetwork`].
pub trait Network {
    fn vertices(&self) -> &[Point];

    /// Prefix sums of edge lengths, starting at `0.0`, one entry per edge
    /// plus one.
    fn cumulative(&self) -> &[f64];

    fn is_closed(&self) -> bool;

    fn edge_count(&self) -> usize {
        self.cumulative().len() - 1
    }

    fn total_length(&self) -> f64 {
        self.cumulative()[self.edge_count()]
    }

    fn tolerance(&self) -> f64 {
        GEOMETRY_EPS * self.total_length()
    }

    fn edge_length(&self, edge: usize) -> f64 {
        let cum = self.cumulative();
        cum[edge + 1] - cum[edge]
    }

    /// First and second vertex of `edge`; the last edge of a cycle closes it.
    fn edge_endpoints(&self, edge: usize) -> (Point, Point) {
        let v = self.vertices();
        (v[edge], v[(edge + 1) % v.len()])
    }

    /// Unit direction of travel along `edge`.
    fn edge_direction(&self, edge: usize) -> Point {
        let (a, b) = self.edge_endpoints(edge);
        (b - a) * (1.0 / self.edge_length(edge))
    }

    fn validate(&self, pos: ArcPosition) -> Result<()> {
        if pos.edge >= self.edge_count() || !(0.0..=1.0).contains(&pos.lambda) {
            return Err(Error::InvalidPosition {
                edge: pos.edge,
                lambda: pos.lambda,
                edge_count: self.edge_count(),
            });
        }
        Ok(())
    }

    fn point_at(&self, pos: ArcPosition) -> Result<Point> {
        self.validate(pos)?;
        let (a, b) = self.edge_endpoints(pos.edge);
        Ok(a.lerp(b, pos.lambda))
    }

    /// Arc length from the first vertex to `pos`.
    fn arc_length(&self, pos: ArcPosition) -> Result<f64> {
        self.validate(pos)?;
        Ok(self.cumulative()[pos.edge] + pos.lambda * self.edge_length(pos.edge))
    }

    /// Inverse of [`Network::arc_length`]. Cycles take `arc` modulo the total
    /// length; paths reject values outside `[0, |P|]`.
    fn locate(&self, arc: f64) -> Result<ArcPosition> {
        let total = self.total_length();
        let arc = if self.is_closed() {
            if !arc.is_finite() {
                return Err(Error::OutOfRange {
                    value: arc,
                    lo: 0.0,
                    hi: total,
                });
            }
            let wrapped = arc.rem_euclid(total);
            if wrapped >= total {
                0.0
            } else {
                wrapped
            }
        } else {
            let tol = self.tolerance();
            if !(arc >= -tol && arc <= total + tol) {
                return Err(Error::OutOfRange {
                    value: arc,
                    lo: 0.0,
                    hi: total,
                });
            }
            arc.clamp(0.0, total)
        };
        Ok(locate_in(self.cumulative(), arc))
    }

    /// Point at arc length `arc`; cycles wrap, paths clamp to their ends.
    fn point_at_arc(&self, arc: f64) -> Point {
        let total = self.total_length();
        let arc = if self.is_closed() {
            let wrapped = arc.rem_euclid(total);
            if wrapped >= total {
                0.0
            } else {
                wrapped
            }
        } else {
            arc.clamp(0.0, total)
        };
        let pos = locate_in(self.cumulative(), arc);
        let (a, b) = self.edge_endpoints(pos.edge);
        a.lerp(b, pos.lambda)
    }

    /// Rewrites `lambda == 1` as `lambda == 0` on the following edge, except
    /// at the last vertex of a path.
    fn canonical(&self, pos: ArcPosition) -> ArcPosition {
        if pos.lambda < 1.0 {
            return pos;
        }
        let next = pos.edge + 1;
        if next < self.edge_count() {
            ArcPosition::new(next, 0.0)
        } else if self.is_closed() {
            ArcPosition::new(0, 0.0)
        } else {
            pos
        }
    }
}

fn locate_in(cumulative: &[f64], arc: f64) -> ArcPosition {
    let edges = cumulative.len() - 1;
    let edge = cumulative
        .partition_point(|&c| c <= arc)
        .saturating_sub(1)
        .min(edges - 1);
    let len = cumulative[edge + 1] - cumulative[edge];
    let lambda = ((arc - cumulative[edge]) / len).clamp(0.0, 1.0);
    ArcPosition::new(edge, lambda)
}

fn prefix_sums(vertices: &[Point], closed: bool) -> Result<Vec<f64>> {
    let n = vertices.len();
    let edges = if closed { n } else { n - 1 };
    let mut cumulative = Vec::with_capacity(edges + 1);
    cumulative.push(0.0);
    let mut acc = 0.0;
    for i in 0..edges {
        let len = vertices[i].distance(vertices[(i + 1) % n]);
        if len.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidNetwork(format!(
                "vertices {} and {} coincide",
                i,
                (i + 1) % n
            )));
        }
        acc += len;
        cumulative.push(acc);
    }
    Ok(cumulative)
}

fn check_finite(vertices: &[Point]) -> Result<()> {
    match vertices.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidNetwork(format!(
            "vertex {i} has a non-finite coordinate"
        ))),
        None => Ok(()),
    }
}

/// A polygonal path from `s` (first vertex) to `e` (last vertex).
#[derive(Debug, Clone, PartialEq)]
pub struct PathNetwork {
    vertices: Vec<Point>,
    cumulative: Vec<f64>,
}

impl PathNetwork {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidNetwork(format!(
                "a path needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        check_finite(&vertices)?;
        let cumulative = prefix_sums(&vertices, false)?;
        Ok(PathNetwork {
            vertices,
            cumulative,
        })
    }

    pub fn start(&self) -> ArcPosition {
        ArcPosition::new(0, 0.0)
    }

    pub fn end(&self) -> ArcPosition {
        ArcPosition::new(self.edge_count() - 1, 1.0)
    }
}

impl Network for PathNetwork {
    fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    fn is_closed(&self) -> bool {
        false
    }
}

/// A closed polygonal cycle, stored counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleNetwork {
    vertices: Vec<Point>,
    cumulative: Vec<f64>,
    reoriented: bool,
}

impl CycleNetwork {
    /// Builds a cycle from its vertices. A closing vertex equal to the first
    /// one is dropped; clockwise input is reversed (vertex 0 stays first).
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() > 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 2 {
            return Err(Error::InvalidNetwork(format!(
                "a cycle needs at least 2 distinct vertices, got {}",
                vertices.len()
            )));
        }
        check_finite(&vertices)?;
        let mut reoriented = false;
        if signed_area(&vertices) < 0.0 {
            vertices[1..].reverse();
            reoriented = true;
        }
        let cumulative = prefix_sums(&vertices, true)?;
        let cycle = CycleNetwork {
            vertices,
            cumulative,
            reoriented,
        };
        if cycle.is_collinear() && !cycle.is_degenerate() {
            return Err(Error::InvalidNetwork(
                "cycle lies on a line but is not a single segment traversed forth and back".into(),
            ));
        }
        Ok(cycle)
    }

    /// Whether the input was clockwise and got reversed on construction.
    pub fn was_reoriented(&self) -> bool {
        self.reoriented
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    fn is_collinear(&self) -> bool {
        let v = &self.vertices;
        let origin = v[0];
        let far = v
            .iter()
            .copied()
            .max_by(|a, b| a.distance(origin).total_cmp(&b.distance(origin)))
            .unwrap_or(origin);
        let axis = far - origin;
        let scale = axis.norm();
        let tol = self.tolerance();
        v.iter().all(|&p| axis.cross(p - origin).abs() <= tol * scale)
    }

    /// True iff the cycle traces one segment forth and back.
    pub fn is_degenerate(&self) -> bool {
        if !self.is_collinear() {
            return false;
        }
        let origin = self.vertices[0];
        let far = self
            .vertices
            .iter()
            .copied()
            .max_by(|a, b| a.distance(origin).total_cmp(&b.distance(origin)))
            .unwrap_or(origin);
        let axis = (far - origin) * (1.0 / far.distance(origin));
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|&p| axis.dot(p - origin))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
                (lo.min(t), hi.max(t))
            });
        (self.total_length() - 2.0 * (hi - lo)).abs() <= self.tolerance()
    }

    /// True iff the cycle is simple, has positive area and never turns
    /// right. Collinear vertices are allowed.
    pub fn is_convex(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return false;
        }
        let total = self.total_length();
        if self.signed_area() <= GEOMETRY_EPS * total * total {
            return false;
        }
        let mut turning = 0.0;
        for i in 0..n {
            let e1 = v[i] - v[(i + n - 1) % n];
            let e2 = v[(i + 1) % n] - v[i];
            let cross = e1.cross(e2);
            if cross < -GEOMETRY_EPS * e1.norm() * e2.norm() {
                return false;
            }
            turning += cross.atan2(e1.dot(e2));
        }
        (turning - TAU).abs() < 1e-6
    }
}

impl Network for CycleNetwork {
    fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    fn is_closed(&self) -> bool {
        true
    }
}

fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    0.5 * (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum::<f64>()
}

/// A straight segment between two points of a network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub a: ArcPosition,
    pub b: ArcPosition,
    pub length: f64,
}

impl Chord {
    pub fn new<N: Network + ?Sized>(net: &N, a: ArcPosition, b: ArcPosition) -> Result<Self> {
        let length = net.point_at(a)?.distance(net.point_at(b)?);
        Ok(Chord { a, b, length })
    }
}

/// Distance between two points along a path.
pub fn path_distance(path: &PathNetwork, a: ArcPosition, b: ArcPosition) -> Result<f64> {
    Ok((path.arc_length(a)? - path.arc_length(b)?).abs())
}

/// Counter-clockwise, clockwise and geodesic distance from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleDistances {
    pub ccw: f64,
    pub cw: f64,
    pub geodesic: f64,
}

pub fn cycle_distances(cycle: &CycleNetwork, a: ArcPosition, b: ArcPosition) -> Result<CycleDistances> {
    let total = cycle.total_length();
    let ccw = ccw_arc(cycle.arc_length(a)?, cycle.arc_length(b)?, total);
    let cw = total - ccw;
    Ok(CycleDistances {
        ccw,
        cw,
        geodesic: ccw.min(cw),
    })
}

/// Counter-clockwise arc from arc coordinate `from` to `to` on a cycle of
/// length `total`, in `[0, total)`.
pub fn ccw_arc(from: f64, to: f64, total: f64) -> f64 {
    let d = (to - from).rem_euclid(total);
    if d >= total {
        0.0
    } else {
        d
    }
}

/// Plain continuous diameter: `|P|` for a path, `|C|/2` for a cycle.
pub fn plain_diameter<N: Network + ?Sized>(net: &N) -> f64 {
    if net.is_closed() {
        net.total_length() / 2.0
    } else {
        net.total_length()
    }
}
