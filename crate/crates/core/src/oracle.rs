//! Brute-force reference computations used to check the solvers.
//!
//! Nothing in here relies on the structure of optimal solutions: diameters
//! come from shortest paths on sampled networks and optima from exhaustive
//! grids.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::geometry::{ArcPosition, Chord, CycleNetwork, Network, PathNetwork, Point};
use crate::path::augmented_path_diameter;

/// Largest grid accepted by [`grid_search_cycle_pair`].
pub const MAX_CYCLE_GRID: usize = 60;

/// Where a node of a [`DiscretizedNetwork`] sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Site {
    /// On the network, at this arc coordinate.
    Network(f64),
    /// Interior of chord `index`, at fraction `t` from its first end.
    Chord { index: usize, t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub site: Site,
    pub point: Point,
}

/// A network plus chords, cut into pieces no longer than `spacing`.
#[derive(Debug, Clone)]
pub struct DiscretizedNetwork {
    pub spacing: f64,
    pub nodes: Vec<Node>,
    pub adjacency: Vec<Vec<(usize, f64)>>,
    /// Chord endpoints are always junctions of the chain decomposition.
    anchors: Vec<usize>,
}

fn check_spacing(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: h,
            lo: 0.0,
            hi: f64::INFINITY,
        })
    }
}

/// Sorted, deduplicated arc coordinates of chord endpoints together with
/// `extra`, and the index of each chord end in that list.
fn junction_arcs<N: Network + ?Sized>(
    net: &N,
    chords: &[Chord],
    extra: &[f64],
) -> Result<(Vec<f64>, Vec<[usize; 2]>)> {
    let total = net.total_length();
    let merge = 1e-12 * total;
    let mut ends = Vec::with_capacity(chords.len());
    for ch in chords {
        ends.push([net.arc_length(ch.a)?, net.arc_length(ch.b)?]);
    }
    let mut arcs: Vec<f64> = extra.to_vec();
    arcs.extend(ends.iter().flatten().copied());
    let wrap = |t: f64| if net.is_closed() && t >= total - merge { 0.0 } else { t };
    let mut arcs: Vec<f64> = arcs.into_iter().map(wrap).collect();
    arcs.sort_by(f64::total_cmp);
    arcs.dedup_by(|x, y| (*x - *y).abs() <= merge);
    let find = |t: f64| {
        let t = wrap(t);
        arcs.iter()
            .position(|&x| (x - t).abs() <= merge)
            .expect("every chord end is a junction")
    };
    let index = ends.iter().map(|&[x, y]| [find(x), find(y)]).collect();
    Ok((arcs, index))
}

impl DiscretizedNetwork {
    pub fn new<N: Network + ?Sized>(net: &N, chords: &[Chord], h: f64) -> Result<Self> {
        check_spacing(h)?;
        let total = net.total_length();
        let mut breaks: Vec<f64> = net.cumulative().to_vec();
        if net.is_closed() {
            breaks.pop();
        }
        let (junctions, chord_ends) = junction_arcs(net, chords, &breaks)?;

        let mut nodes = Vec::new();
        let mut adjacency: Vec<Vec<(usize, f64)>> = Vec::new();
        let mut junction_node = Vec::with_capacity(junctions.len());
        let push = |nodes: &mut Vec<Node>, adjacency: &mut Vec<Vec<(usize, f64)>>, node: Node| {
            nodes.push(node);
            adjacency.push(Vec::new());
            nodes.len() - 1
        };
        let link = |adjacency: &mut Vec<Vec<(usize, f64)>>, u: usize, v: usize, w: f64| {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        };

        let count = junctions.len();
        let segments = if net.is_closed() { count } else { count - 1 };
        for &t in &junctions {
            let id = push(
                &mut nodes,
                &mut adjacency,
                Node {
                    site: Site::Network(t),
                    point: net.point_at_arc(t),
                },
            );
            junction_node.push(id);
        }
        for i in 0..segments {
            let from = junctions[i];
            let to = if i + 1 < count { junctions[i + 1] } else { junctions[0] + total };
            let len = to - from;
            let pieces = (len / h).ceil().max(1.0) as usize;
            let mut prev = junction_node[i];
            for k in 1..pieces {
                let t = from + len * k as f64 / pieces as f64;
                let id = push(
                    &mut nodes,
                    &mut adjacency,
                    Node {
                        site: Site::Network(if t >= total { t - total } else { t }),
                        point: net.point_at_arc(t),
                    },
                );
                link(&mut adjacency, prev, id, len / pieces as f64);
                prev = id;
            }
            link(&mut adjacency, prev, junction_node[(i + 1) % count], len / pieces as f64);
        }

        let mut anchors = Vec::new();
        for (index, (ch, &[ja, jb])) in chords.iter().zip(chord_ends.iter()).enumerate() {
            let (u, v) = (junction_node[ja], junction_node[jb]);
            anchors.push(u);
            anchors.push(v);
            if u == v || ch.length <= 0.0 {
                continue;
            }
            let (pa, pb) = (nodes[u].point, nodes[v].point);
            let pieces = (ch.length / h).ceil().max(1.0) as usize;
            let mut prev = u;
            for k in 1..pieces {
                let t = k as f64 / pieces as f64;
                let id = push(
                    &mut nodes,
                    &mut adjacency,
                    Node {
                        site: Site::Chord { index, t },
                        point: pa.lerp(pb, t),
                    },
                );
                link(&mut adjacency, prev, id, ch.length / pieces as f64);
                prev = id;
            }
            link(&mut adjacency, prev, v, ch.length / pieces as f64);
        }

        Ok(DiscretizedNetwork {
            spacing: h,
            nodes,
            adjacency,
            anchors,
        })
    }

    fn dijkstra(&self, source: usize) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(Entry(0.0, source));
        while let Some(Entry(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Entry(nd, v));
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance between two nodes.
    ///
    /// Nodes of degree two form chains between junctions, and a chain node
    /// reaches everything outside its chain through one of the chain's two
    /// junctions, so single-source searches from the junctions suffice.
    pub fn max_distance(&self) -> f64 {
        let n = self.nodes.len();
        let mut junction = vec![false; n];
        junction[0] = true;
        for &a in &self.anchors {
            junction[a] = true;
        }
        for (u, adj) in self.adjacency.iter().enumerate() {
            if adj.len() != 2 {
                junction[u] = true;
            }
        }
        let ids: Vec<usize> = (0..n).filter(|&u| junction[u]).collect();
        let mut slot = vec![usize::MAX; n];
        for (k, &u) in ids.iter().enumerate() {
            slot[u] = k;
        }
        let dist: Vec<Vec<f64>> = ids.iter().map(|&j| self.dijkstra(j)).collect();

        // chain membership: (chain id, junction slot at each end, offset, chain length)
        let mut chain_of = vec![None::<(usize, usize, usize, f64, f64)>; n];
        let mut chains = 0;
        for &j in &ids {
            for &(first, w0) in &self.adjacency[j] {
                if junction[first] || chain_of[first].is_some() {
                    continue;
                }
                let mut walk = vec![(first, w0)];
                let (mut prev, mut cur) = (j, first);
                let mut off = w0;
                let end = loop {
                    let &(next, w) = self.adjacency[cur]
                        .iter()
                        .find(|&&(v, _)| v != prev)
                        .unwrap_or(&self.adjacency[cur][0]);
                    off += w;
                    if junction[next] {
                        break next;
                    }
                    walk.push((next, off));
                    prev = cur;
                    cur = next;
                };
                for &(u, o) in &walk {
                    chain_of[u] = Some((chains, slot[j], slot[end], o, off));
                }
                chains += 1;
            }
        }

        let mut best: f64 = 0.0;
        for u in 0..n {
            if junction[u] {
                let row = &dist[slot[u]];
                for &d in row.iter().skip(u + 1) {
                    best = best.max(d);
                }
                continue;
            }
            let (cu, j1, j2, off, len) = chain_of[u].expect("non-junction nodes lie on chains");
            let (d1, d2) = (&dist[j1], &dist[j2]);
            for v in (u + 1)..n {
                let mut d = (off + d1[v]).min(len - off + d2[v]);
                if let Some((cv, _, _, off_v, _)) = chain_of[v] {
                    if cv == cu {
                        d = d.min((off - off_v).abs());
                    }
                }
                best = best.max(d);
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Diameter of `net` plus `chords` from all-pairs shortest paths over nodes
/// at most `h` apart. The result lies in `[true - h, true]`.
pub fn approx_diameter<N: Network + ?Sized>(net: &N, chords: &[Chord], h: f64) -> Result<f64> {
    Ok(DiscretizedNetwork::new(net, chords, h)?.max_distance())
}

/// Diameter of `net` plus `chords` from exact eccentricities of sample
/// points at most `h` apart. The result lies in `[true - h, true]`.
///
/// Each sample's eccentricity is exact: the farthest point on an edge that
/// does not contain the sample is reached through whichever end is
/// closer, at distance `(d(x, u) + d(x, v) + len) / 2`.
pub fn sampled_diameter<N: Network + ?Sized>(net: &N, chords: &[Chord], h: f64) -> Result<f64> {
    check_spacing(h)?;
    let total = net.total_length();
    let extra: &[f64] = if net.is_closed() { &[0.0] } else { &[0.0, total] };
    let (junctions, chord_ends) = junction_arcs(net, chords, extra)?;
    let k = junctions.len();

    // skeleton edges (u, v, length)
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    if net.is_closed() {
        for i in 0..k {
            let to = if i + 1 < k { junctions[i + 1] } else { junctions[0] + total };
            edges.push((i, (i + 1) % k, to - junctions[i]));
        }
    } else {
        for i in 0..k - 1 {
            edges.push((i, i + 1, junctions[i + 1] - junctions[i]));
        }
    }
    for (ch, &[u, v]) in chords.iter().zip(chord_ends.iter()) {
        if u != v && ch.length > 0.0 {
            edges.push((u, v, ch.length));
        }
    }

    let mut d = vec![vec![f64::INFINITY; k]; k];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in &edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }

    let mut best: f64 = 0.0;
    let mut du = vec![0.0; k];
    for (e, &(u, v, len)) in edges.iter().enumerate() {
        let pieces = (len / h).ceil().max(1.0) as usize;
        let cycle_through = 0.5 * (len + d[u][v]);
        for step in 0..=pieces {
            let t = len * step as f64 / pieces as f64;
            for (j, slot) in du.iter_mut().enumerate() {
                *slot = (t + d[u][j]).min(len - t + d[v][j]);
            }
            let mut ecc = cycle_through.min(len - t).max(cycle_through.min(t));
            for (f, &(a, b, w)) in edges.iter().enumerate() {
                if f != e {
                    ecc = ecc.max(0.5 * (du[a] + du[b] + w));
                }
            }
            best = best.max(ecc);
        }
    }
    Ok(best)
}

/// Best single shortcut of a path found on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGridResult {
    pub p: ArcPosition,
    pub q: ArcPosition,
    pub diameter: f64,
    /// The true optimum is at least `diameter - error_bound`.
    pub error_bound: f64,
}

/// Tries every shortcut between the `m + 1` evenly spaced points of a path.
pub fn grid_search_path(path: &PathNetwork, m: usize) -> Result<PathGridResult> {
    if m < 2 {
        return Err(Error::OutOfRange {
            value: m as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let total = path.total_length();
    let pos: Vec<ArcPosition> = (0..=m)
        .map(|i| path.locate(total * i as f64 / m as f64))
        .collect::<Result<_>>()?;
    let mut best = PathGridResult {
        p: path.start(),
        q: path.end(),
        diameter: total,
        error_bound: 2.0 * total / m as f64,
    };
    for i in 0..=m {
        for j in (i + 1)..=m {
            match augmented_path_diameter(path, pos[i], pos[j]) {
                Ok(diam) if diam < best.diameter => {
                    best.p = pos[i];
                    best.q = pos[j];
                    best.diameter = diam;
                }
                Ok(_) | Err(Error::NotAShortcut { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(best)
}

/// Tries shortcuts from `x` after the start to `x` before the end for `m + 1`
/// evenly spaced `x` in `[0, |P|/2]`.
pub fn grid_search_path_symmetric(path: &PathNetwork, m: usize) -> Result<PathGridResult> {
    let total = path.total_length();
    let mut best = PathGridResult {
        p: path.start(),
        q: path.end(),
        diameter: total,
        error_bound: total / m.max(1) as f64,
    };
    for i in 0..=m {
        let x = 0.5 * total * i as f64 / m.max(1) as f64;
        let p = path.locate(x)?;
        let q = path.locate(total - x)?;
        match augmented_path_diameter(path, p, q) {
            Ok(diam) if diam < best.diameter => {
                best.p = p;
                best.q = q;
                best.diameter = diam;
            }
            Ok(_) | Err(Error::NotAShortcut { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// Best alternating pair of chords found on a grid, endpoints as arc
/// coordinates in counter-clockwise order `p, r, q, s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleGridResult {
    pub arcs: [f64; 4],
    pub diameter: f64,
    /// Distance within which the true optimum lies.
    pub error_bound: f64,
}

fn pair_chords(cycle: &CycleNetwork, arcs: [f64; 4]) -> Result<[Chord; 2]> {
    let [p, r, q, s] = arcs.map(|t| cycle.locate(t));
    let (p, r, q, s) = (p?, r?, q?, s?);
    Ok([Chord::new(cycle, p, q)?, Chord::new(cycle, r, s)?])
}

/// Diameter of `C + pq + rs` for endpoints given by arc coordinates.
pub fn cycle_pair_diameter(cycle: &CycleNetwork, arcs: [f64; 4], h: f64) -> Result<f64> {
    sampled_diameter(cycle, &pair_chords(cycle, arcs)?, h)
}

/// Exhaustive search over alternating pairs with endpoints on `m` evenly
/// spaced points.
pub fn grid_search_cycle_pair(cycle: &CycleNetwork, m: usize, h: f64) -> Result<CycleGridResult> {
    if m > MAX_CYCLE_GRID {
        return Err(Error::BudgetExceeded {
            requested: m,
            limit: MAX_CYCLE_GRID,
        });
    }
    if m < 4 {
        return Err(Error::OutOfRange {
            value: m as f64,
            lo: 4.0,
            hi: MAX_CYCLE_GRID as f64,
        });
    }
    check_spacing(h)?;
    let total = cycle.total_length();
    let g = total / m as f64;
    let at = |i: usize| g * i as f64;
    let mut best = CycleGridResult {
        arcs: [0.0; 4],
        diameter: f64::INFINITY,
        error_bound: 6.0 * g + h,
    };
    for i1 in 0..m {
        for i2 in (i1 + 1)..m {
            for i3 in (i2 + 1)..m {
                for i4 in (i3 + 1)..m {
                    let arcs = [at(i1), at(i2), at(i3), at(i4)];
                    let diam = cycle_pair_diameter(cycle, arcs, h)?;
                    if diam < best.diameter {
                        best.arcs = arcs;
                        best.diameter = diam;
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Pattern search from `start`: moves endpoints by `step`,
/// halving `step` whenever no move helps, until it drops below `min_step`.
/// The endpoints keep their counter-clockwise order.
pub fn refine_cycle_pair(
    cycle: &CycleNetwork,
    start: [f64; 4],
    step: f64,
    min_step: f64,
    h: f64,
) -> Result<CycleGridResult> {
    check_spacing(h)?;
    let total = cycle.total_length();
    let ordered = |arcs: &[f64; 4]| {
        arcs[0] >= 0.0
            && arcs[3] < arcs[0] + total
            && arcs.windows(2).all(|w| w[0] <= w[1])
    };
    let mut arcs = start;
    let mut diam = cycle_pair_diameter(cycle, arcs, h)?;
    let mut step = step;
    while step >= min_step {
        let mut moved = false;
        // all 80 nonzero directions in {-1, 0, 1}^4; single-axis moves
        // stall on the ridges of the diameter
        for code in 0..81usize {
            if code == 40 {
                continue;
            }
            let mut trial = arcs;
            let mut c = code;
            for t in trial.iter_mut() {
                *t += (c % 3) as f64 - 1.0;
                c /= 3;
            }
            for (t, a) in trial.iter_mut().zip(arcs) {
                *t = a + (*t - a) * step;
            }
            if trial[0] < 0.0 {
                trial = trial.map(|t| t + total);
            }
            if trial[0] >= total {
                trial = trial.map(|t| t - total);
            }
            if !ordered(&trial) {
                continue;
            }
            let d = cycle_pair_diameter(cycle, trial, h)?;
            if d < diam {
                arcs = trial;
                diam = d;
                moved = true;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    Ok(CycleGridResult {
        arcs,
        diameter: diam,
        error_bound: h + 2.0 * min_step,
    })
}
