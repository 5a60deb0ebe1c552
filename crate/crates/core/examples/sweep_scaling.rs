//! Prints sweep stage counts and timings for regular polygons.

use std::time::Instant;

use shortcut_core::cycle::optimal_pair;
use shortcut_core::{CycleNetwork, Point};

fn regular(n: usize) -> CycleNetwork {
    let pts = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    CycleNetwork::new(pts).expect("regular polygon")
}

fn main() {
    for n in [16, 64, 256, 1024, 4096] {
        let c = regular(n);
        let start = Instant::now();
        let sol = optimal_pair(&c).expect("convex");
        println!(
            "n={n:5} stages={:6} (4n+8={:6}) diameter={:.9} time={:?}",
            sol.stages,
            4 * n + 8,
            sol.diameter,
            start.elapsed()
        );
    }
}
