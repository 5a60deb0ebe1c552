//! Pairs of shortcuts on cycles.

pub mod balance;
pub mod pair;
pub mod sweep;

pub use balance::{balanced_configuration, BalanceSolver, BalancedConfiguration};
pub use pair::{
    candidate_cycle_lengths, consecutive_to_alternating, relations, useful_alternating,
    useful_consecutive, AlternatingPair, CandidateCycle, CandidateCycleLengths, ConsecutiveArcs,
    ConsecutivePair, PairArcs, Relation, RelationReport,
};
pub use sweep::{advance_stage, optimal_pair, optimal_pair_with, CyclePairSolution, EdgeQuadruple, StageOutcome};

use crate::error::{Error, Result};
use crate::geometry::{cycle_distances, Chord, CycleNetwork, Network};
use crate::oracle::approx_diameter;

/// Checks on the discretized network that a single shortcut does not
/// shrink the diameter: `diam(C + pq) >= |C|/2 - 2h`.
pub fn single_shortcut_no_gain_check(cycle: &CycleNetwork, chord: &Chord, h: f64) -> Result<bool> {
    let geodesic = cycle_distances(cycle, chord.a, chord.b)?.geodesic;
    if chord.length >= geodesic - cycle.tolerance() {
        return Err(Error::NotAShortcut {
            chord_length: chord.length,
            network_distance: geodesic,
        });
    }
    let diam = approx_diameter(cycle, std::slice::from_ref(chord), h)?;
    Ok(diam >= cycle.total_length() / 2.0 - 2.0 * h)
}

/// Absolute residuals of the seven identities satisfied by a balanced
/// optimal pair, in this order:
///
/// 1. `a + c = b + d = |C|/2`
/// 2. `|rs| = d - a = c - b`
/// 3. `|pq| = d - c = a - b`
/// 4. `d = |C|/4 + (|pq| + |rs|)/2`
/// 5. `b = |C|/4 - (|pq| + |rs|)/2`
/// 6. `a = |C|/4 + (|pq| - |rs|)/2`
/// 7. `c = |C|/4 + (|rs| - |pq|)/2`
///
/// Chained equalities report the larger deviation.
pub fn check_corollary_3_14(arcs: &PairArcs) -> [f64; 7] {
    let PairArcs {
        a,
        b,
        c,
        d,
        len_pq,
        len_rs,
    } = *arcs;
    let total = arcs.total();
    let quarter = total / 4.0;
    let sum = len_pq + len_rs;
    [
        (a + c - total / 2.0).abs().max((b + d - total / 2.0).abs()),
        (len_rs - (d - a)).abs().max((len_rs - (c - b)).abs()),
        (len_pq - (d - c)).abs().max((len_pq - (a - b)).abs()),
        (d - (quarter + sum / 2.0)).abs(),
        (b - (quarter - sum / 2.0)).abs(),
        (a - (quarter + (len_pq - len_rs) / 2.0)).abs(),
        (c - (quarter + (len_rs - len_pq) / 2.0)).abs(),
    ]
}
