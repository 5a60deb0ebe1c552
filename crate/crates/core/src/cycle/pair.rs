//! Pairs of shortcuts on a cycle and the predicates that decide whether
//! they shrink its diameter.
//!
//! For an alternating pair the endpoints appear counter-clockwise as
//! `p, r, q, s`, splitting the cycle into arcs `a = d_ccw(p, r)`,
//! `b = d_ccw(r, q)`, `c = d_ccw(q, s)` and `d = d_ccw(s, p)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{ccw_arc, ArcPosition, Chord, CycleNetwork, Network, GEOMETRY_EPS};

/// Arc lengths and chord lengths of an alternating pair `pq`, `rs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairArcs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub len_pq: f64,
    pub len_rs: f64,
}

impl PairArcs {
    pub fn new(a: f64, b: f64, c: f64, d: f64, len_pq: f64, len_rs: f64) -> Self {
        PairArcs {
            a,
            b,
            c,
            d,
            len_pq,
            len_rs,
        }
    }

    pub fn total(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    /// Relabels the endpoints by `k` steps along `p → r → q → s`, which
    /// rotates the arcs and swaps the chord colours for odd `k`.
    pub fn rotated(&self, k: usize) -> PairArcs {
        let arcs = [self.a, self.b, self.c, self.d];
        let (len_pq, len_rs) = if k % 2 == 0 {
            (self.len_pq, self.len_rs)
        } else {
            (self.len_rs, self.len_pq)
        };
        PairArcs::new(
            arcs[k % 4],
            arcs[(k + 1) % 4],
            arcs[(k + 2) % 4],
            arcs[(k + 3) % 4],
            len_pq,
            len_rs,
        )
    }

    /// `a + b <= c + d` and `b + c <= a + d`: the red split contains `s`
    /// and the blue split contains `p`.
    pub fn is_normalized(&self) -> bool {
        let tol = GEOMETRY_EPS * self.total();
        self.a + self.b <= self.c + self.d + tol && self.b + self.c <= self.a + self.d + tol
    }

    /// Rotation `k` such that `self.rotated(k)` is normalized.
    pub fn normalizing_rotation(&self) -> usize {
        (0..4)
            .find(|&k| self.rotated(k).is_normalized())
            .expect("one of the four labelings is normalized")
    }

    pub fn normalized(&self) -> PairArcs {
        self.rotated(self.normalizing_rotation())
    }
}

/// Two shortcuts whose endpoints alternate along the cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingPair {
    pub p: ArcPosition,
    pub r: ArcPosition,
    pub q: ArcPosition,
    pub s: ArcPosition,
    pub arcs: PairArcs,
}

impl AlternatingPair {
    /// Builds the pair `pq`, `rs` from endpoints in counter-clockwise order
    /// `p, r, q, s` and relabels it so that the arcs are normalized.
    pub fn new(
        cycle: &CycleNetwork,
        p: ArcPosition,
        r: ArcPosition,
        q: ArcPosition,
        s: ArcPosition,
    ) -> Result<Self> {
        let raw = Self::unnormalized(cycle, p, r, q, s)?;
        let k = raw.arcs.normalizing_rotation();
        let ends = [raw.p, raw.r, raw.q, raw.s];
        Ok(AlternatingPair {
            p: ends[k % 4],
            r: ends[(k + 1) % 4],
            q: ends[(k + 2) % 4],
            s: ends[(k + 3) % 4],
            arcs: raw.arcs.rotated(k),
        })
    }

    pub(crate) fn unnormalized(
        cycle: &CycleNetwork,
        p: ArcPosition,
        r: ArcPosition,
        q: ArcPosition,
        s: ArcPosition,
    ) -> Result<Self> {
        let total = cycle.total_length();
        let [tp, tr, tq, ts] = [
            cycle.arc_length(p)?,
            cycle.arc_length(r)?,
            cycle.arc_length(q)?,
            cycle.arc_length(s)?,
        ];
        let a = ccw_arc(tp, tr, total);
        let b = ccw_arc(tr, tq, total);
        let c = ccw_arc(tq, ts, total);
        let d = ccw_arc(ts, tp, total);
        if (a + b + c + d - total).abs() > cycle.tolerance() {
            return Err(Error::WrongConfiguration(
                "endpoints are not in alternating order p, r, q, s",
            ));
        }
        let len_pq = cycle.point_at(p)?.distance(cycle.point_at(q)?);
        let len_rs = cycle.point_at(r)?.distance(cycle.point_at(s)?);
        Ok(AlternatingPair {
            p,
            r,
            q,
            s,
            arcs: PairArcs::new(a, b, c, d, len_pq, len_rs),
        })
    }

    pub fn chords(&self) -> [Chord; 2] {
        [
            Chord {
                a: self.p,
                b: self.q,
                length: self.arcs.len_pq,
            },
            Chord {
                a: self.r,
                b: self.s,
                length: self.arcs.len_rs,
            },
        ]
    }
}

/// Lengths of the four candidate diametral cycles of an alternating pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateCycleLengths {
    /// `a + c + |pq| + |rs|`
    pub bowtie: f64,
    /// `b + d + |pq| + |rs|`
    pub hourglass: f64,
    /// `c + d + |pq|`
    pub red_split: f64,
    /// `a + d + |rs|`
    pub blue_split: f64,
}

impl CandidateCycleLengths {
    pub fn get(&self, cycle: CandidateCycle) -> f64 {
        match cycle {
            CandidateCycle::Bowtie => self.bowtie,
            CandidateCycle::Hourglass => self.hourglass,
            CandidateCycle::RedSplit => self.red_split,
            CandidateCycle::BlueSplit => self.blue_split,
        }
    }

    pub fn max(&self) -> f64 {
        self.bowtie
            .max(self.hourglass)
            .max(self.red_split)
            .max(self.blue_split)
    }
}

pub fn candidate_cycle_lengths(arcs: &PairArcs) -> CandidateCycleLengths {
    let PairArcs {
        a,
        b,
        c,
        d,
        len_pq,
        len_rs,
    } = *arcs;
    CandidateCycleLengths {
        bowtie: a + c + len_pq + len_rs,
        hourglass: b + d + len_pq + len_rs,
        red_split: c + d + len_pq,
        blue_split: a + d + len_rs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateCycle {
    Bowtie,
    Hourglass,
    RedSplit,
    BlueSplit,
}

/// Comparison of two candidate cycles, once by their lengths and once by the
/// equivalent inequality between arcs and shortcut lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub left: CandidateCycle,
    pub right: CandidateCycle,
    pub by_lengths: Ordering,
    pub by_shortcuts: Ordering,
}

impl Relation {
    pub fn agrees(&self) -> bool {
        self.by_lengths == self.by_shortcuts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationReport {
    pub relations: [Relation; 6],
}

impl RelationReport {
    pub fn all_agree(&self) -> bool {
        self.relations.iter().all(Relation::agrees)
    }

    /// Ordering of `left` against `right` by length.
    pub fn compare(&self, left: CandidateCycle, right: CandidateCycle) -> Option<Ordering> {
        self.relations.iter().find_map(|rel| {
            if rel.left == left && rel.right == right {
                Some(rel.by_lengths)
            } else if rel.left == right && rel.right == left {
                Some(rel.by_lengths.reverse())
            } else {
                None
            }
        })
    }
}

fn cmp_tol(x: f64, y: f64, tol: f64) -> Ordering {
    if (x - y).abs() <= tol {
        Ordering::Equal
    } else if x < y {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Orders all six pairs of candidate cycles; values within `tol` compare
/// equal.
pub fn relations(arcs: &PairArcs, tol: f64) -> RelationReport {
    use CandidateCycle::*;
    let lengths = candidate_cycle_lengths(arcs);
    let PairArcs {
        a,
        b,
        c,
        d,
        len_pq,
        len_rs,
    } = *arcs;
    let rel = |left, right, lhs: f64, rhs: f64| Relation {
        left,
        right,
        by_lengths: cmp_tol(lengths.get(left), lengths.get(right), tol),
        by_shortcuts: cmp_tol(lhs, rhs, tol),
    };
    RelationReport {
        relations: [
            rel(Bowtie, Hourglass, a + c, b + d),
            rel(RedSplit, BlueSplit, c + len_pq, a + len_rs),
            rel(Bowtie, RedSplit, a + len_rs, d),
            rel(Bowtie, BlueSplit, c + len_pq, d),
            rel(Hourglass, RedSplit, b + len_rs, c),
            rel(Hourglass, BlueSplit, b + len_pq, a),
        ],
    }
}

fn ensure_shortcut(length: f64, geodesic: f64, tol: f64) -> Result<()> {
    if length >= geodesic - tol {
        Err(Error::NotAShortcut {
            chord_length: length,
            network_distance: geodesic,
        })
    } else {
        Ok(())
    }
}

/// Whether an alternating pair strictly decreases the diameter:
/// `|pq| + |rs| < a + c` and `|pq| + |rs| < b + d`.
pub fn useful_alternating(arcs: &PairArcs) -> Result<bool> {
    let PairArcs {
        a,
        b,
        c,
        d,
        len_pq,
        len_rs,
    } = *arcs;
    let tol = GEOMETRY_EPS * arcs.total();
    ensure_shortcut(len_pq, (a + b).min(c + d), tol)?;
    ensure_shortcut(len_rs, (b + c).min(a + d), tol)?;
    let sum = len_pq + len_rs;
    Ok(sum < a + c && sum < b + d)
}

/// Arcs of a consecutive pair: endpoints counter-clockwise `p, q, r, s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsecutiveArcs {
    /// `d_ccw(p, q)`
    pub pq: f64,
    /// `d_ccw(q, r)`
    pub qr: f64,
    /// `d_ccw(r, s)`
    pub rs: f64,
    /// `d_ccw(s, p)`
    pub sp: f64,
    pub len_pq: f64,
    pub len_rs: f64,
}

impl ConsecutiveArcs {
    pub fn total(&self) -> f64 {
        self.pq + self.qr + self.rs + self.sp
    }

    /// Swaps the roles of the two chords, `(p, q, r, s) → (r, s, p, q)`.
    pub fn swapped(&self) -> ConsecutiveArcs {
        ConsecutiveArcs {
            pq: self.rs,
            qr: self.sp,
            rs: self.pq,
            sp: self.qr,
            len_pq: self.len_rs,
            len_rs: self.len_pq,
        }
    }

    /// Labels chosen so that `d_ccw(q, r) <= d_ccw(s, p)`.
    pub fn normalized(&self) -> ConsecutiveArcs {
        if self.qr <= self.sp {
            *self
        } else {
            self.swapped()
        }
    }
}

/// Whether a consecutive pair strictly decreases the diameter:
/// `|pq| + |rs| < d_ccw(s, p) - d_ccw(q, r)` after normalizing the labels.
pub fn useful_consecutive(arcs: &ConsecutiveArcs) -> Result<bool> {
    let total = arcs.total();
    let tol = GEOMETRY_EPS * total;
    ensure_shortcut(arcs.len_pq, arcs.pq.min(total - arcs.pq), tol)?;
    ensure_shortcut(arcs.len_rs, arcs.rs.min(total - arcs.rs), tol)?;
    let n = arcs.normalized();
    Ok(n.len_pq + n.len_rs < n.sp - n.qr)
}

/// Two shortcuts `pq`, `rs` with endpoints counter-clockwise `p, q, r, s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsecutivePair {
    pub p: ArcPosition,
    pub q: ArcPosition,
    pub r: ArcPosition,
    pub s: ArcPosition,
    pub arcs: ConsecutiveArcs,
}

impl ConsecutivePair {
    /// Builds the pair and relabels it so that `d_ccw(q, r) <= d_ccw(s, p)`.
    pub fn new(
        cycle: &CycleNetwork,
        p: ArcPosition,
        q: ArcPosition,
        r: ArcPosition,
        s: ArcPosition,
    ) -> Result<Self> {
        let total = cycle.total_length();
        let [tp, tq, tr, ts] = [
            cycle.arc_length(p)?,
            cycle.arc_length(q)?,
            cycle.arc_length(r)?,
            cycle.arc_length(s)?,
        ];
        let arcs = ConsecutiveArcs {
            pq: ccw_arc(tp, tq, total),
            qr: ccw_arc(tq, tr, total),
            rs: ccw_arc(tr, ts, total),
            sp: ccw_arc(ts, tp, total),
            len_pq: cycle.point_at(p)?.distance(cycle.point_at(q)?),
            len_rs: cycle.point_at(r)?.distance(cycle.point_at(s)?),
        };
        if (arcs.total() - total).abs() > cycle.tolerance() {
            return Err(Error::WrongConfiguration(
                "endpoints are not in consecutive order p, q, r, s",
            ));
        }
        if arcs.qr <= arcs.sp {
            Ok(ConsecutivePair { p, q, r, s, arcs })
        } else {
            Ok(ConsecutivePair {
                p: r,
                q: s,
                r: p,
                s: q,
                arcs: arcs.swapped(),
            })
        }
    }

    pub fn chords(&self) -> [Chord; 2] {
        [
            Chord {
                a: self.p,
                b: self.q,
                length: self.arcs.len_pq,
            },
            Chord {
                a: self.r,
                b: self.s,
                length: self.arcs.len_rs,
            },
        ]
    }
}

/// Replaces a useful consecutive pair by an alternating pair that is at
/// least as good: `pr, rs` when `d_ccw(p, q) <= d_ccw(r, s)`, otherwise the
/// mirror image `pq, qs`. Both results touch at one point and therefore
/// also count as consecutive.
pub fn consecutive_to_alternating(
    cycle: &CycleNetwork,
    pair: &ConsecutivePair,
) -> Result<AlternatingPair> {
    let (ends, arcs) = if pair.arcs.qr <= pair.arcs.sp {
        ([pair.p, pair.q, pair.r, pair.s], pair.arcs)
    } else {
        ([pair.r, pair.s, pair.p, pair.q], pair.arcs.swapped())
    };
    let [p, q, r, s] = ends;
    if !useful_consecutive(&arcs)? {
        return Err(Error::NotUseful);
    }
    if arcs.pq <= arcs.rs {
        AlternatingPair::new(cycle, p, r, r, s)
    } else {
        AlternatingPair::new(cycle, p, q, q, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use approx::assert_abs_diff_eq;
    use CandidateCycle::*;

    fn square() -> CycleNetwork {
        CycleNetwork::new(vec![
            Point::new(0., 0.),
            Point::new(1., 0.),
            Point::new(1., 1.),
            Point::new(0., 1.),
        ])
        .unwrap()
    }

    #[test]
    fn candidate_length_examples() {
        let l = candidate_cycle_lengths(&PairArcs::new(1., 1., 1., 1., 0.5, 0.5));
        assert_eq!(
            (l.bowtie, l.hourglass, l.red_split, l.blue_split),
            (3.0, 3.0, 2.5, 2.5)
        );
        let l = candidate_cycle_lengths(&PairArcs::new(0.7, 1.1, 0.4, 1.8, 0.0, 0.0));
        assert_eq!(l.bowtie, 0.7 + 0.4);
        assert_eq!(l.hourglass, 1.1 + 1.8);
        let l = candidate_cycle_lengths(&PairArcs::new(2., 0.5, 1.5, 2., 0.5, 1.));
        assert_eq!(
            (l.bowtie, l.hourglass, l.red_split, l.blue_split),
            (5.0, 4.0, 4.0, 5.0)
        );
    }

    #[test]
    fn symmetric_pair_relations_are_equalities() {
        let report = relations(&PairArcs::new(1., 1., 1., 1., 0.5, 0.5), 1e-12);
        assert!(report.all_agree());
        assert_eq!(report.compare(Bowtie, Hourglass), Some(Ordering::Equal));
        assert_eq!(report.compare(RedSplit, BlueSplit), Some(Ordering::Equal));
        assert_eq!(report.compare(Bowtie, RedSplit), Some(Ordering::Greater));
    }

    #[test]
    fn short_blue_chord_makes_bowtie_shorter_than_red_split() {
        // a + |rs| < d
        let arcs = PairArcs::new(0.5, 1.0, 1.0, 1.5, 0.6, 0.3);
        let report = relations(&arcs, 1e-12);
        assert!(report.all_agree());
        assert_eq!(report.compare(Bowtie, RedSplit), Some(Ordering::Less));
        assert_eq!(report.compare(RedSplit, Bowtie), Some(Ordering::Greater));
    }

    #[test]
    fn usefulness_examples() {
        assert!(useful_alternating(&PairArcs::new(1., 1., 1., 1., 0.5, 0.5)).unwrap());
        assert!(!useful_alternating(&PairArcs::new(1., 1., 1., 1., 1.1, 1.1)).unwrap());
        assert!(matches!(
            useful_alternating(&PairArcs::new(1., 1., 1., 1., 2.0, 0.5)),
            Err(Error::NotAShortcut { .. })
        ));
        let consecutive = |len: f64| ConsecutiveArcs {
            pq: 1.0,
            qr: 0.5,
            rs: 1.0,
            sp: 2.0,
            len_pq: len / 2.0,
            len_rs: len / 2.0,
        };
        assert!(useful_consecutive(&consecutive(0.3)).unwrap());
        assert!(!useful_consecutive(&consecutive(1.6)).unwrap());
        // labels swapped: still the same pair
        assert!(useful_consecutive(&consecutive(0.3).swapped()).unwrap());
    }

    #[test]
    fn normalization_rotates_labels() {
        let arcs = PairArcs::new(2.0, 1.0, 0.5, 0.5, 0.9, 0.4);
        assert!(!arcs.is_normalized());
        let n = arcs.normalized();
        assert!(n.is_normalized());
        assert_abs_diff_eq!(n.total(), arcs.total(), epsilon = 1e-15);
        let before = candidate_cycle_lengths(&arcs);
        let after = candidate_cycle_lengths(&n);
        let mut x = [before.bowtie, before.hourglass];
        let mut y = [after.bowtie, after.hourglass];
        x.sort_by(f64::total_cmp);
        y.sort_by(f64::total_cmp);
        assert_eq!(x, y);
    }

    #[test]
    fn alternating_pair_on_square() {
        let c = square();
        let pair = AlternatingPair::new(
            &c,
            c.locate(0.5).unwrap(),
            c.locate(1.5).unwrap(),
            c.locate(2.5).unwrap(),
            c.locate(3.5).unwrap(),
        )
        .unwrap();
        assert_eq!(pair.arcs.a, 1.0);
        assert_eq!(pair.arcs.len_pq, 1.0);
        // the two midlines cross; the bowtie still has length 4
        assert!(!useful_alternating(&pair.arcs).unwrap());
        let wrong = AlternatingPair::new(
            &c,
            c.locate(0.5).unwrap(),
            c.locate(2.5).unwrap(),
            c.locate(1.5).unwrap(),
            c.locate(3.5).unwrap(),
        );
        assert!(matches!(wrong, Err(Error::WrongConfiguration(_))));
    }

    #[test]
    fn touching_consecutive_pair_is_kept() {
        let c = square();
        let p = c.locate(0.8).unwrap();
        let q = c.locate(1.2).unwrap();
        let s = c.locate(2.2).unwrap();
        let pair = ConsecutivePair::new(&c, p, q, q, s).unwrap();
        assert!(useful_consecutive(&pair.arcs).unwrap());
        let alt = consecutive_to_alternating(&c, &pair).unwrap();
        let mut lens = [alt.arcs.len_pq, alt.arcs.len_rs];
        let mut orig = [pair.arcs.len_pq, pair.arcs.len_rs];
        lens.sort_by(f64::total_cmp);
        orig.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(lens[0], orig[0], epsilon = 1e-12);
        assert_abs_diff_eq!(lens[1], orig[1], epsilon = 1e-12);
        assert!(useful_alternating(&alt.arcs).unwrap());
    }

    #[test]
    fn consecutive_pair_rejects_alternating_order() {
        let c = square();
        let wrong = ConsecutivePair::new(
            &c,
            c.locate(0.5).unwrap(),
            c.locate(2.5).unwrap(),
            c.locate(1.5).unwrap(),
            c.locate(3.5).unwrap(),
        );
        assert!(matches!(wrong, Err(Error::WrongConfiguration(_))));
    }
}
