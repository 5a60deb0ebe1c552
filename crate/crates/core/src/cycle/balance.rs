//! Balanced configurations: for a point `p` on a convex cycle, the unique
//! `q`, `r`, `s` with all four candidate cycles of equal length.
//!
//! With `a + c = b + d = |C|/2` built in, a configuration is fixed by `p`,
//! the arc `a = d_ccw(p, r)` and the arc `d = d_ccw(s, p)`. The remaining
//! conditions are `|rs| = d - a` and `|pq| = d - c`.

use crate::error::{Error, Result};
use crate::geometry::{ArcPosition, CycleNetwork, Network, Point};

use super::pair::{AlternatingPair, PairArcs};

/// Residual target of the Newton iteration, relative to `|C|`.
const NEWTON_TARGET: f64 = 1e-12;
const NEWTON_MAX_STEPS: usize = 30;
/// Width at which the bisections stop, relative to `|C|`.
const BISECTION_WIDTH: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceSolver {
    /// Accepted residual, relative to `|C|`.
    pub tolerance: f64,
    /// Cap on the steps of each of the two nested bisections.
    pub max_iterations: usize,
    /// Bracket for `d_ccw(s, p)` as fractions of `|C|`, inside `[1/4, 1/2]`.
    pub outer_bracket: (f64, f64),
}

impl Default for BalanceSolver {
    fn default() -> Self {
        BalanceSolver {
            tolerance: 1e-7,
            max_iterations: 200,
            outer_bracket: (0.25, 0.5),
        }
    }
}

/// A point `p` (unwrapped arc coordinate) with the two free arcs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Frame {
    pub t_p: f64,
    pub a: f64,
    pub dd: f64,
}

impl Frame {
    /// Unwrapped arc coordinates of `p, r, q, s`.
    pub fn arcs(&self, total: f64) -> [f64; 4] {
        let t_r = self.t_p + self.a;
        let t_q = t_r + (total / 2.0 - self.dd);
        let t_s = self.t_p + total - self.dd;
        [self.t_p, t_r, t_q, t_s]
    }
}

struct Geometry<'a> {
    cycle: &'a CycleNetwork,
    total: f64,
}

impl<'a> Geometry<'a> {
    fn new(cycle: &'a CycleNetwork) -> Self {
        Geometry {
            cycle,
            total: cycle.total_length(),
        }
    }

    fn point(&self, t: f64) -> Point {
        self.cycle.point_at_arc(t)
    }

    /// Direction of travel at `t`, taken from the edge that starts at `t`
    /// when `t` is a vertex.
    fn tangent(&self, t: f64) -> Point {
        let edge = self.cycle.locate(t).map(|pos| pos.edge).unwrap_or(0);
        self.cycle.edge_direction(edge)
    }

    /// `(|rs| - (d - a), |pq| - (d - c))`.
    fn residuals(&self, f: &Frame) -> (f64, f64) {
        let [tp, tr, tq, ts] = f.arcs(self.total);
        let c = self.total / 2.0 - f.a;
        let rs = self.point(tr).distance(self.point(ts));
        let pq = self.point(tp).distance(self.point(tq));
        (rs - (f.dd - f.a), pq - (f.dd - c))
    }

    fn clamp(&self, f: &mut Frame) {
        let half = self.total / 2.0;
        f.dd = f.dd.clamp(self.total / 4.0, half);
        f.a = f.a.clamp(half - f.dd, f.dd);
    }

    fn newton(&self, start: Frame) -> Option<Frame> {
        let target = NEWTON_TARGET * self.total;
        let mut f = start;
        self.clamp(&mut f);
        for _ in 0..NEWTON_MAX_STEPS {
            let (r2, r3) = self.residuals(&f);
            if r2.abs().max(r3.abs()) <= target {
                return Some(f);
            }
            let [tp, tr, tq, ts] = f.arcs(self.total);
            let (p, r, q, s) = (self.point(tp), self.point(tr), self.point(tq), self.point(ts));
            let u_rs = unit(s - r)?;
            let u_pq = unit(q - p)?;
            let along_r = -u_rs.dot(self.tangent(tr));
            let along_s = u_rs.dot(self.tangent(ts));
            let along_q = u_pq.dot(self.tangent(tq));
            let j11 = along_r + 1.0;
            let j12 = -along_s - 1.0;
            let j21 = along_q - 1.0;
            let j22 = -along_q - 1.0;
            let det = j11 * j22 - j12 * j21;
            if det.abs() < 1e-12 {
                return None;
            }
            let da = (r2 * j22 - r3 * j12) / det;
            let ddd = (j11 * r3 - j21 * r2) / det;
            f.a -= da;
            f.dd -= ddd;
            self.clamp(&mut f);
        }
        let (r2, r3) = self.residuals(&f);
        (r2.abs().max(r3.abs()) <= target * 1e3).then_some(f)
    }

    /// For fixed `d`, the `a` at which red and blue split agree.
    fn inner(&self, t_p: f64, dd: f64, max_iterations: usize) -> f64 {
        let half = self.total / 2.0;
        let gap = |a: f64| {
            let f = Frame { t_p, a, dd };
            let [tp, tr, tq, ts] = f.arcs(self.total);
            let c = half - a;
            let pq = self.point(tp).distance(self.point(tq));
            let rs = self.point(tr).distance(self.point(ts));
            (c + pq) - (a + rs)
        };
        let (mut lo, mut hi) = (half - dd, dd);
        if gap(lo) <= 0.0 {
            return lo;
        }
        if gap(hi) >= 0.0 {
            return hi;
        }
        for _ in 0..max_iterations {
            if hi - lo <= BISECTION_WIDTH * self.total {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if gap(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn nested_bisection(&self, t_p: f64, solver: &BalanceSolver) -> Result<Frame> {
        let excess = |dd: f64| {
            let a = self.inner(t_p, dd, solver.max_iterations);
            let (r2, _) = self.residuals(&Frame { t_p, a, dd });
            (a, r2)
        };
        let (flo, fhi) = solver.outer_bracket;
        let (mut lo, mut hi) = (flo * self.total, fhi * self.total);
        if !(self.total / 4.0 - 1e-12 * self.total <= lo && lo < hi && hi <= self.total / 2.0 + 1e-12 * self.total) {
            return Err(Error::OutOfRange {
                value: flo.min(fhi),
                lo: 0.25,
                hi: 0.5,
            });
        }
        let (_, at_lo) = excess(lo);
        let (_, at_hi) = excess(hi);
        // rounding can push the excess a hair past zero at either end
        let slack = NEWTON_TARGET * self.total;
        if at_lo < -slack || at_hi > slack {
            return Err(Error::WrongConfiguration(
                "outer bracket does not enclose the balanced configuration",
            ));
        }
        for _ in 0..solver.max_iterations {
            if hi - lo <= BISECTION_WIDTH * self.total {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if excess(mid).1 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let dd = 0.5 * (lo + hi);
        let a = self.inner(t_p, dd, solver.max_iterations);
        Ok(Frame { t_p, a, dd })
    }
}

fn unit(v: Point) -> Option<Point> {
    let n = v.norm();
    (n > 0.0).then(|| v * (1.0 / n))
}

/// Four points `p, r, q, s` with `bowtie = hourglass = red = blue`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalancedConfiguration {
    pub pair: AlternatingPair,
    /// `(a + c) - (b + d)`, `|rs| - (d - a)` and `|pq| - (d - c)`.
    pub residuals: [f64; 3],
    /// `d`, which is also the diameter of the augmented cycle.
    pub diameter: f64,
    /// Arc coordinate of `p`; may exceed `|C|` during a sweep.
    pub p_arc: f64,
}

impl BalancedConfiguration {
    pub(crate) fn from_frame(cycle: &CycleNetwork, f: &Frame) -> Result<Self> {
        let total = cycle.total_length();
        let [tp, tr, tq, ts] = f.arcs(total);
        let pos = |t: f64| -> Result<ArcPosition> { cycle.locate(t) };
        let (p, r, q, s) = (pos(tp)?, pos(tr)?, pos(tq)?, pos(ts)?);
        let arcs = PairArcs::new(
            f.a,
            total / 2.0 - f.dd,
            total / 2.0 - f.a,
            f.dd,
            cycle.point_at_arc(tp).distance(cycle.point_at_arc(tq)),
            cycle.point_at_arc(tr).distance(cycle.point_at_arc(ts)),
        );
        Ok(BalancedConfiguration {
            pair: AlternatingPair { p, r, q, s, arcs },
            residuals: residuals_of(&arcs),
            diameter: f.dd,
            p_arc: f.t_p,
        })
    }

    pub(crate) fn frame(&self) -> Frame {
        Frame {
            t_p: self.p_arc,
            a: self.pair.arcs.a,
            dd: self.pair.arcs.d,
        }
    }

    /// Unwrapped arc coordinates of `p, r, q, s`.
    pub fn unwrapped_arcs(&self, total: f64) -> [f64; 4] {
        self.frame().arcs(total)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// The gap `b`, equal to `|C|/2` minus the diameter.
    pub fn gap(&self) -> f64 {
        self.pair.arcs.b
    }
}

pub(crate) fn residuals_of(arcs: &PairArcs) -> [f64; 3] {
    let PairArcs {
        a,
        b,
        c,
        d,
        len_pq,
        len_rs,
    } = *arcs;
    [(a + c) - (b + d), len_rs - (d - a), len_pq - (d - c)]
}

impl BalanceSolver {
    /// Balanced configuration for `p` at arc coordinate `t_p`, by nested
    /// bisection.
    pub fn solve(&self, cycle: &CycleNetwork, t_p: f64) -> Result<BalancedConfiguration> {
        let geo = Geometry::new(cycle);
        let frame = geo.nested_bisection(t_p, self)?;
        self.accept(cycle, &frame)
    }

    /// Same as [`BalanceSolver::solve`], starting Newton's method from
    /// `guess` and falling back to nested bisection.
    pub(crate) fn solve_from(&self, cycle: &CycleNetwork, t_p: f64, guess: &Frame) -> Result<Frame> {
        let geo = Geometry::new(cycle);
        let start = Frame {
            t_p,
            a: guess.a,
            dd: guess.dd,
        };
        if let Some(f) = geo.newton(start) {
            return Ok(f);
        }
        let f = geo.nested_bisection(t_p, self)?;
        self.accept(cycle, &f)?;
        Ok(f)
    }

    fn accept(&self, cycle: &CycleNetwork, frame: &Frame) -> Result<BalancedConfiguration> {
        let config = BalancedConfiguration::from_frame(cycle, frame)?;
        if config.max_residual() > self.tolerance * cycle.total_length() {
            return Err(Error::SolverNonConvergence {
                residuals: config.residuals,
            });
        }
        Ok(config)
    }
}

pub(crate) fn check_cycle(cycle: &CycleNetwork) -> Result<()> {
    if cycle.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if !cycle.is_convex() {
        return Err(Error::NotConvex);
    }
    Ok(())
}

/// The unique `q, r, s` in balanced configuration with `p`.
pub fn balanced_configuration(cycle: &CycleNetwork, p: ArcPosition) -> Result<BalancedConfiguration> {
    check_cycle(cycle)?;
    let t_p = cycle.arc_length(p)?;
    BalanceSolver::default().solve(cycle, t_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::pair::candidate_cycle_lengths;
    use approx::assert_abs_diff_eq;

    fn square() -> CycleNetwork {
        CycleNetwork::new(vec![
            Point::new(0., 0.),
            Point::new(1., 0.),
            Point::new(1., 1.),
            Point::new(0., 1.),
        ])
        .unwrap()
    }

    fn regular(n: usize) -> CycleNetwork {
        let pts = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        CycleNetwork::new(pts).unwrap()
    }

    #[test]
    fn square_configuration_is_balanced() {
        let c = square();
        let cfg = balanced_configuration(&c, ArcPosition::new(0, 0.5)).unwrap();
        assert!(cfg.max_residual() <= 1e-7 * 4.0);
        let len = candidate_cycle_lengths(&cfg.pair.arcs);
        assert_abs_diff_eq!(len.bowtie, len.hourglass, epsilon = 1e-6);
        assert_abs_diff_eq!(len.red_split, len.blue_split, epsilon = 1e-6);
        assert_abs_diff_eq!(len.bowtie, len.red_split, epsilon = 1e-6);
        let arcs = cfg.pair.arcs;
        assert!(arcs.a + arcs.b <= 2.0 + 1e-9);
        assert!(arcs.b + arcs.c <= 2.0 + 1e-9);
        assert_abs_diff_eq!(
            cfg.diameter,
            1.0 + (arcs.len_pq + arcs.len_rs) / 2.0,
            epsilon = 1e-6
        );
        assert!(cfg.gap() > 0.0);
    }

    #[test]
    fn reflex_quadrilateral_is_rejected() {
        let c = CycleNetwork::new(vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(1., 0.5),
            Point::new(1., 2.),
        ])
        .unwrap();
        assert_eq!(
            balanced_configuration(&c, ArcPosition::new(0, 0.0)),
            Err(Error::NotConvex)
        );
    }

    #[test]
    fn two_vertex_cycle_is_degenerate() {
        let c = CycleNetwork::new(vec![Point::new(0., 0.), Point::new(1., 0.)]).unwrap();
        assert_eq!(
            balanced_configuration(&c, ArcPosition::new(0, 0.0)),
            Err(Error::Degenerate)
        );
    }

    #[test]
    fn newton_agrees_with_bisection() {
        let c = regular(12);
        let solver = BalanceSolver::default();
        let base = solver.solve(&c, 0.3).unwrap();
        let frame = solver.solve_from(&c, 0.35, &base.frame()).unwrap();
        let direct = solver.solve(&c, 0.35).unwrap();
        assert_abs_diff_eq!(frame.a, direct.pair.arcs.a, epsilon = 1e-9);
        assert_abs_diff_eq!(frame.dd, direct.diameter, epsilon = 1e-9);
    }

    #[test]
    fn bracket_must_enclose_root() {
        let c = square();
        let solver = BalanceSolver {
            outer_bracket: (0.25, 0.26),
            ..BalanceSolver::default()
        };
        assert!(matches!(
            solver.solve(&c, 0.5),
            Err(Error::WrongConfiguration(_))
        ));
    }
}
