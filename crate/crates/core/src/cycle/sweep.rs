//! Linear-time sweep for the optimal pair of shortcuts on a convex cycle.
//!
//! `p` travels once around the cycle and `q`, `r`, `s` follow it in
//! balanced configuration, all moving counter-clockwise. A stage is a
//! maximal stretch during which no point crosses a vertex; there are at
//! most about `4n` of them.

use crate::error::{Error, Result};
use crate::geometry::{ccw_arc, CycleNetwork, Network};

use super::balance::{check_cycle, BalanceSolver, BalancedConfiguration, Frame};

const SAMPLES_PER_STAGE: usize = 32;
/// Resolution of the stage exit search, relative to `|C|`.
const EXIT_RESOLUTION: f64 = 1e-12;
/// Resolution of the golden-section refinement, relative to `|C|`.
const GOLDEN_RESOLUTION: f64 = 1e-9;

/// Edges hosting `p`, `r`, `q` and `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeQuadruple {
    pub p: usize,
    pub r: usize,
    pub q: usize,
    pub s: usize,
}

impl EdgeQuadruple {
    fn as_array(&self) -> [usize; 4] {
        [self.p, self.r, self.q, self.s]
    }

    fn from_array(e: [usize; 4]) -> Self {
        EdgeQuadruple {
            p: e[0],
            r: e[1],
            q: e[2],
            s: e[3],
        }
    }

    /// Edges of a configuration, preferring the edge that starts at a
    /// vertex over the one that ends there.
    pub fn of(config: &BalancedConfiguration) -> Self {
        let pair = &config.pair;
        EdgeQuadruple {
            p: pair.p.edge,
            r: pair.r.edge,
            q: pair.q.edge,
            s: pair.s.edge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageOutcome {
    /// Smallest diameter found while all points stay on `edges`.
    pub minimum: BalancedConfiguration,
    /// Configuration right after the first point leaves its edge.
    pub exit: BalancedConfiguration,
    pub edges: EdgeQuadruple,
    pub next_edges: EdgeQuadruple,
}

/// Unwrapped arc coordinate where the edge hosting the point at `t` ends.
fn edge_end(cycle: &CycleNetwork, edge: usize, t: f64) -> Result<f64> {
    let total = cycle.total_length();
    let tol = EXIT_RESOLUTION * total * 16.0;
    let len = cycle.edge_length(edge);
    let mut local = ccw_arc(cycle.cumulative()[edge], t, total);
    if local > total - tol {
        local -= total;
    }
    if local < -tol || local > len + tol {
        return Err(Error::WrongConfiguration("point is not on its stage edge"));
    }
    Ok(t + (len - local))
}

struct Family<'a> {
    cycle: &'a CycleNetwork,
    solver: &'a BalanceSolver,
}

impl Family<'_> {
    fn at(&self, t_p: f64, near: &Frame) -> Result<Frame> {
        self.solver.solve_from(self.cycle, t_p, near)
    }
}

/// Follows the balanced family from `start` while every point stays on its
/// edge in `edges`, and never beyond `p` arc coordinate `limit`.
pub fn advance_stage(
    cycle: &CycleNetwork,
    start: &BalancedConfiguration,
    edges: EdgeQuadruple,
    limit: f64,
    solver: &BalanceSolver,
) -> Result<StageOutcome> {
    let total = cycle.total_length();
    let family = Family { cycle, solver };
    let f0 = start.frame();
    let arcs0 = f0.arcs(total);
    let mut ends = [0.0; 4];
    for (i, (&e, &t)) in edges.as_array().iter().zip(arcs0.iter()).enumerate() {
        ends[i] = edge_end(cycle, e, t)?;
    }
    let eps = EXIT_RESOLUTION * total;
    let inside = |f: &Frame| {
        f.arcs(total)
            .iter()
            .zip(ends.iter())
            .skip(1)
            .all(|(&t, &end)| t <= end + eps)
    };

    let t_max = ends[0].min(limit).max(f0.t_p);
    let at_max = family.at(t_max, &f0)?;
    let (lo, hi) = if inside(&at_max) {
        (at_max, at_max)
    } else {
        let (mut lo, mut hi) = (f0, at_max);
        while hi.t_p - lo.t_p > eps {
            let mid = family.at(0.5 * (lo.t_p + hi.t_p), &lo)?;
            if inside(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    };

    let minimum = minimize(&family, &f0, &lo, total)?;

    let exit_arcs = hi.arcs(total);
    let n = cycle.edge_count();
    let mut next = edges.as_array();
    for i in 0..4 {
        let reached = if i == 0 {
            hi.t_p >= ends[0] - eps
        } else {
            exit_arcs[i] >= ends[i] - eps
        };
        if reached {
            next[i] = (next[i] + 1) % n;
        }
    }

    Ok(StageOutcome {
        minimum: BalancedConfiguration::from_frame(cycle, &minimum)?,
        exit: BalancedConfiguration::from_frame(cycle, &hi)?,
        edges,
        next_edges: EdgeQuadruple::from_array(next),
    })
}

/// Minimum of `d` over `p` in `[from, to]`: sampling, then golden-section
/// refinement around the best sample.
fn minimize(family: &Family, from: &Frame, to: &Frame, total: f64) -> Result<Frame> {
    let (t0, t1) = (from.t_p, to.t_p);
    if t1 - t0 <= GOLDEN_RESOLUTION * total {
        return Ok(if to.dd < from.dd { *to } else { *from });
    }
    let mut samples = Vec::with_capacity(SAMPLES_PER_STAGE);
    samples.push(*from);
    for k in 1..SAMPLES_PER_STAGE - 1 {
        let t = t0 + (t1 - t0) * k as f64 / (SAMPLES_PER_STAGE - 1) as f64;
        let prev = *samples.last().expect("non-empty");
        samples.push(family.at(t, &prev)?);
    }
    samples.push(*to);
    let best = samples
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.dd.total_cmp(&y.1.dd))
        .map(|(i, _)| i)
        .expect("non-empty");
    let mut lo = samples[best.saturating_sub(1)];
    let mut hi = samples[(best + 1).min(samples.len() - 1)];
    let mut winner = samples[best];

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = family.at(hi.t_p - INV_PHI * (hi.t_p - lo.t_p), &winner)?;
    let mut x2 = family.at(lo.t_p + INV_PHI * (hi.t_p - lo.t_p), &winner)?;
    while hi.t_p - lo.t_p > GOLDEN_RESOLUTION * total {
        if x1.dd <= x2.dd {
            hi = x2;
            x2 = x1;
            x1 = family.at(hi.t_p - INV_PHI * (hi.t_p - lo.t_p), &x2)?;
        } else {
            lo = x1;
            x1 = x2;
            x2 = family.at(lo.t_p + INV_PHI * (hi.t_p - lo.t_p), &x1)?;
        }
    }
    for cand in [x1, x2, lo, hi] {
        if cand.dd < winner.dd {
            winner = cand;
        }
    }
    Ok(winner)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclePairSolution {
    pub config: BalancedConfiguration,
    pub diameter: f64,
    /// `|C|/2` minus the new diameter.
    pub improvement: f64,
    /// Number of sweep stages.
    pub stages: usize,
}

/// Optimal pair of shortcuts for a convex cycle. Among equally good pairs
/// the one whose `p` comes first along the cycle wins.
pub fn optimal_pair(cycle: &CycleNetwork) -> Result<CyclePairSolution> {
    optimal_pair_with(cycle, &BalanceSolver::default())
}

pub fn optimal_pair_with(cycle: &CycleNetwork, solver: &BalanceSolver) -> Result<CyclePairSolution> {
    check_cycle(cycle)?;
    let total = cycle.total_length();
    let n = cycle.edge_count();
    let stage_cap = 8 * n + 64;
    let tie = EXIT_RESOLUTION * total;

    let mut current = solver.solve(cycle, 0.0)?;
    let mut edges = EdgeQuadruple::of(&current);
    let mut best = current;
    let mut stages = 0;
    loop {
        let stage = advance_stage(cycle, &current, edges, total, solver)?;
        stages += 1;
        if stage.minimum.diameter < best.diameter - tie {
            best = stage.minimum;
        }
        if stage.exit.p_arc >= total - tie {
            break;
        }
        if stages >= stage_cap {
            return Err(Error::SolverNonConvergence {
                residuals: stage.exit.residuals,
            });
        }
        current = stage.exit;
        edges = stage.next_edges;
    }

    let config = BalancedConfiguration::from_frame(cycle, &best.frame())?;
    if config.max_residual() > solver.tolerance * total {
        return Err(Error::SolverNonConvergence {
            residuals: config.residuals,
        });
    }
    Ok(CyclePairSolution {
        config,
        diameter: config.diameter,
        improvement: total / 2.0 - config.diameter,
        stages,
    })
}
