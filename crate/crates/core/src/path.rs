//! Optimal single shortcut for a polygonal path.
//!
//! Adding a shortcut `pq` to a path `P` from `s` to `e` creates one cycle.
//! The diameter of `P + pq` is attained by one of three candidate paths:
//! `U` (from `s` to `e` through the shortcut), `S` (from `s` to the point of
//! the cycle farthest from `s`) and `E` (symmetric for `e`).
//!
//! Some optimal shortcut always has `d(s, p) = d(e, q) = x`, so the search
//! runs over the single variable `x`. With `D(x) = |p(x) q(x)|` the problem
//! becomes: minimize `D(x)` subject to `4x + D(x) <= |P|`. The constraint
//! function is strictly increasing, so the feasible set is an interval
//! `[0, b]`, and `D²` is a convex quadratic between consecutive vertex
//! events, which makes the minimization a single sweep over the pieces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ArcPosition, Network, PathNetwork, Point};

/// Lengths of the three candidate diametral paths of `P + pq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathCandidateLengths {
    pub u_len: f64,
    pub s_len: f64,
    pub e_len: f64,
    /// `(d(p, q) - |pq|) / 2`
    pub slack: f64,
    /// `d(s, p)`
    pub x: f64,
    /// `d(e, q)`
    pub y: f64,
    pub shortcut_length: f64,
}

/// One of the three candidate diametral paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathCandidate {
    /// `s` to `e` through the shortcut.
    Through,
    /// `s` to its farthest point on the created cycle.
    FromStart,
    /// `e` to its farthest point on the created cycle.
    FromEnd,
}

impl PathCandidateLengths {
    pub fn diameter(&self) -> f64 {
        self.u_len.max(self.s_len).max(self.e_len)
    }

    /// Candidates whose length equals the diameter within `tol`.
    pub fn dominant(&self, tol: f64) -> Vec<PathCandidate> {
        let diam = self.diameter();
        [
            (PathCandidate::Through, self.u_len),
            (PathCandidate::FromStart, self.s_len),
            (PathCandidate::FromEnd, self.e_len),
        ]
        .into_iter()
        .filter(|&(_, len)| len >= diam - tol)
        .map(|(c, _)| c)
        .collect()
    }
}

/// Candidate path lengths for the shortcut between `p` and `q`; the two are
/// swapped when `q` is closer to `s`.
pub fn candidate_lengths(
    path: &PathNetwork,
    p: ArcPosition,
    q: ArcPosition,
) -> Result<PathCandidateLengths> {
    let (mut ap, mut aq) = (path.arc_length(p)?, path.arc_length(q)?);
    let (mut pp, mut pq) = (path.point_at(p)?, path.point_at(q)?);
    if ap > aq {
        std::mem::swap(&mut ap, &mut aq);
        std::mem::swap(&mut pp, &mut pq);
    }
    lengths_from_arcs(path, ap, aq, pp.distance(pq))
}

fn lengths_from_arcs(
    path: &PathNetwork,
    arc_p: f64,
    arc_q: f64,
    shortcut_length: f64,
) -> Result<PathCandidateLengths> {
    let network_distance = arc_q - arc_p;
    if shortcut_length >= network_distance - path.tolerance() {
        return Err(Error::NotAShortcut {
            chord_length: shortcut_length,
            network_distance,
        });
    }
    let x = arc_p;
    let y = path.total_length() - arc_q;
    let slack = (network_distance - shortcut_length) / 2.0;
    Ok(PathCandidateLengths {
        u_len: x + shortcut_length + y,
        s_len: x + shortcut_length + slack,
        e_len: y + shortcut_length + slack,
        slack,
        x,
        y,
        shortcut_length,
    })
}

/// Continuous diameter of `P + pq`.
pub fn augmented_path_diameter(path: &PathNetwork, p: ArcPosition, q: ArcPosition) -> Result<f64> {
    Ok(candidate_lengths(path, p, q)?.diameter())
}

/// The points at distance `x` from `s` and from `e`.
pub fn balanced_points(path: &PathNetwork, x: f64) -> Result<(ArcPosition, ArcPosition)> {
    let total = path.total_length();
    let half = total / 2.0;
    if !(x >= -path.tolerance() && x <= half + path.tolerance()) {
        return Err(Error::OutOfRange {
            value: x,
            lo: 0.0,
            hi: half,
        });
    }
    let x = x.clamp(0.0, half);
    Ok((path.locate(x)?, path.locate(total - x)?))
}

/// `D²(x)` on `[x_lo, x_hi]`, written in Bernstein form over
/// `λ = (x - x_lo) / (x_hi - x_lo)`:
/// `(1-λ)²·A + 2λ(1-λ)·B + λ²·C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicPiece {
    pub x_lo: f64,
    pub x_hi: f64,
    /// `|p(x_lo) q(x_lo)|²`
    pub coeff_a: f64,
    /// `<p(x_lo) - q(x_lo), p(x_hi) - q(x_hi)>`
    pub coeff_b: f64,
    /// `|p(x_hi) q(x_hi)|²`
    pub coeff_c: f64,
    /// `p(x_lo) - q(x_lo)`
    start_gap: Point,
    /// `p(x_hi) - q(x_hi)`
    end_gap: Point,
}

impl ParabolicPiece {
    fn from_gaps(x_lo: f64, x_hi: f64, start_gap: Point, end_gap: Point) -> Self {
        ParabolicPiece {
            x_lo,
            x_hi,
            coeff_a: start_gap.norm_squared(),
            coeff_b: start_gap.dot(end_gap),
            coeff_c: end_gap.norm_squared(),
            start_gap,
            end_gap,
        }
    }

    fn lambda(&self, x: f64) -> f64 {
        (x - self.x_lo) / (self.x_hi - self.x_lo)
    }

    /// `D²(x)`; valid for any `x`, meaningful on the piece.
    pub fn eval(&self, x: f64) -> f64 {
        let l = self.lambda(x);
        let m = 1.0 - l;
        (m * m * self.coeff_a + 2.0 * l * m * self.coeff_b + l * l * self.coeff_c).max(0.0)
    }

    /// `|w1 - w2|²` with `w = p - q`; zero when both endpoints move in
    /// parallel and `D²` is constant.
    fn curvature(&self) -> f64 {
        (self.start_gap - self.end_gap).norm_squared()
    }

    pub fn is_constant(&self) -> bool {
        self.curvature() <= f64::EPSILON * (self.coeff_a + self.coeff_c).max(f64::MIN_POSITIVE)
    }

    /// Location of the parabola's apex, `None` when `D²` is constant.
    pub fn apex(&self) -> Option<f64> {
        if self.is_constant() {
            return None;
        }
        let diff = self.start_gap - self.end_gap;
        Some((self.x_hi - self.x_lo) * self.start_gap.dot(diff) / diff.norm_squared() + self.x_lo)
    }

    /// Smallest minimizer of `D²` on `[lo, hi]`.
    pub fn argmin_on(&self, lo: f64, hi: f64) -> f64 {
        match self.apex() {
            Some(a) => a.clamp(lo, hi),
            None => lo,
        }
    }
}

/// Breakpoints of `D²` on `[0, |P|/2]`: the distances of all vertices from
/// `s` and from `e` that fall into that interval.
fn breakpoints(path: &PathNetwork) -> Vec<f64> {
    let total = path.total_length();
    let half = total / 2.0;
    let merge_tol = 1e-12 * total;
    let cum = path.cumulative();
    // From s the vertex distances increase; from e they increase when read
    // backwards. Merge both sorted runs.
    let from_s = cum.iter().copied().take_while(|&c| c < half);
    let from_e = cum.iter().rev().map(|&c| total - c).take_while(|&c| c < half);
    let mut a = from_s.peekable();
    let mut b = from_e.peekable();
    let mut out: Vec<f64> = Vec::with_capacity(cum.len() + 1);
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(&x), Some(&y)) if x <= y => a.next(),
            (Some(_), Some(_)) => b.next(),
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => break,
        };
        let x = next.unwrap();
        if out.last().map_or(true, |&last| x - last > merge_tol) {
            out.push(x);
        }
    }
    if half - out.last().copied().unwrap_or(0.0) > merge_tol {
        out.push(half);
    } else if let Some(last) = out.last_mut() {
        *last = half;
    }
    out
}

/// Exact piecewise representation of `D²` on `[0, |P|/2]`.
pub fn dsq_pieces(path: &PathNetwork) -> Vec<ParabolicPiece> {
    let total = path.total_length();
    let gap = |x: f64| path.point_at_arc(x) - path.point_at_arc(total - x);
    let bps = breakpoints(path);
    bps.windows(2)
        .map(|w| ParabolicPiece::from_gaps(w[0], w[1], gap(w[0]), gap(w[1])))
        .collect()
}

/// `B(x) = 4x + D(x)` evaluated on a piece.
fn budget_at(piece: &ParabolicPiece, x: f64) -> f64 {
    4.0 * x + piece.eval(x).sqrt()
}

/// Roots in `[0, 1]` of `alpha·t² + beta·t + gamma`.
fn unit_roots(alpha: f64, beta: f64, gamma: f64) -> Vec<f64> {
    let scale = alpha.abs().max(beta.abs()).max(gamma.abs());
    let mut roots = Vec::with_capacity(2);
    if scale == 0.0 {
        return roots;
    }
    if alpha.abs() <= 1e-14 * scale {
        if beta != 0.0 {
            roots.push(-gamma / beta);
        }
    } else {
        let disc = beta * beta - 4.0 * alpha * gamma;
        if disc >= -1e-14 * beta * beta {
            let sq = disc.max(0.0).sqrt();
            let q = -0.5 * (beta + beta.signum() * sq);
            if q != 0.0 {
                roots.push(q / alpha);
                roots.push(gamma / q);
            } else {
                roots.push(0.0);
            }
        }
    }
    roots.retain(|t| t.is_finite() && (-1e-9..=1.0 + 1e-9).contains(t));
    roots
}

/// Solves `D²(b) = (|P| - 4b)²` on one piece, falling back to bisection on
/// `B` when the closed form is not accurate enough.
fn solve_budget_on(piece: &ParabolicPiece, total: f64) -> f64 {
    let width = piece.x_hi - piece.x_lo;
    let k = total - 4.0 * piece.x_lo;
    // D²(λ) = A + 2λ(B - A) + λ²(A - 2B + C)
    let (a, b, c) = (piece.coeff_a, piece.coeff_b, piece.coeff_c);
    let alpha = (a - 2.0 * b + c) - 16.0 * width * width;
    let beta = 2.0 * (b - a) + 8.0 * k * width;
    let gamma = a - k * k;
    let target = 1e-10 * total;
    let best = unit_roots(alpha, beta, gamma)
        .into_iter()
        .map(|t| piece.x_lo + t.clamp(0.0, 1.0) * width)
        .filter(|&x| total - 4.0 * x >= -target)
        .min_by(|&x, &y| {
            (budget_at(piece, x) - total)
                .abs()
                .total_cmp(&(budget_at(piece, y) - total).abs())
        });
    if let Some(x) = best {
        if (budget_at(piece, x) - total).abs() <= target {
            return x;
        }
    }
    let (mut lo, mut hi) = (piece.x_lo, piece.x_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if budget_at(piece, mid) < total {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * total {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Index of the piece containing `b` together with `b` itself.
fn locate_budget(pieces: &[ParabolicPiece], total: f64) -> (usize, f64) {
    let first = &pieces[0];
    if budget_at(first, 0.0) >= total - 1e-9 * total {
        return (0, 0.0);
    }
    for (i, piece) in pieces.iter().enumerate() {
        if budget_at(piece, piece.x_hi) >= total {
            return (i, solve_budget_on(piece, total));
        }
    }
    // B(|P|/2) = 2|P| > |P|, so the loop always returns.
    let last = pieces.len() - 1;
    (last, pieces[last].x_hi)
}

/// The unique `b` in `[0, |P|/2]` with `4b + D(b) = |P|`.
pub fn budget_bound(path: &PathNetwork) -> f64 {
    locate_budget(&dsq_pieces(path), path.total_length()).1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathShortcutSolution {
    pub x_star: f64,
    pub p: ArcPosition,
    pub q: ArcPosition,
    /// `D(x*)`
    pub shortcut_length: f64,
    /// `(|P| + D(x*)) / 2`, or `|P|` when the segment is no shortcut.
    pub diameter: f64,
    pub budget_bound: f64,
    /// `|P| - diameter`
    pub improvement: f64,
}

/// Computes a shortcut minimizing the continuous diameter of the path.
///
/// Among several minimizers the smallest `x*` is returned. For a straight
/// path no segment is a shortcut; the result is then `x* = 0` with zero
/// improvement.
pub fn optimal_path_shortcut(path: &PathNetwork) -> PathShortcutSolution {
    let total = path.total_length();
    let tol = path.tolerance();
    let pieces = dsq_pieces(path);
    let (k, b) = locate_budget(&pieces, total);

    let mut best_x = 0.0;
    let mut best_dsq = pieces[0].eval(0.0);
    for piece in &pieces[..=k] {
        let hi = piece.x_hi.min(b);
        let x = piece.argmin_on(piece.x_lo, hi);
        let dsq = piece.eval(x);
        if dsq.sqrt() < best_dsq.sqrt() - tol {
            best_x = x;
            best_dsq = dsq;
        }
    }

    let shortcut_length = best_dsq.sqrt();
    let network_distance = total - 2.0 * best_x;
    let (p, q) = balanced_points(path, best_x).expect("x* lies in [0, |P|/2]");
    let (diameter, improvement) = if shortcut_length >= network_distance - tol {
        (total, 0.0)
    } else {
        let d = (total + shortcut_length) / 2.0;
        (d, total - d)
    };
    PathShortcutSolution {
        x_star: best_x,
        p,
        q,
        shortcut_length,
        diameter,
        budget_bound: b,
        improvement,
    }
}
