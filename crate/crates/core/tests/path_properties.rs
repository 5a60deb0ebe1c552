mod common;

use proptest::prelude::*;

use common::{random_path, rng, walk};
use shortcut_core::oracle::{grid_search_path, sampled_diameter};
use shortcut_core::path::{
    augmented_path_diameter, balanced_points, budget_bound, candidate_lengths, dsq_pieces,
    optimal_path_shortcut,
};
use shortcut_core::{Chord, Network, PathNetwork, Point};

fn path_strategy() -> impl Strategy<Value = PathNetwork> {
    (any::<u64>(), 2usize..16).prop_map(|(seed, n)| random_path(&mut rng(seed), n))
}

fn direct_gap(path: &PathNetwork, x: f64) -> f64 {
    let v = path.vertices();
    let total = path.total_length();
    walk(v, false, x).distance(walk(v, false, total - x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn budget_grows_at_least_twice_as_fast(path in path_strategy(), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let half = path.total_length() / 2.0;
        let (x, y) = if u < v { (u * half, v * half) } else { (v * half, u * half) };
        let budget = |x: f64| 4.0 * x + direct_gap(&path, x);
        prop_assert!(budget(y) - budget(x) >= 2.0 * (y - x) - 1e-9 * path.total_length());
    }

    #[test]
    fn pieces_match_direct_evaluation(path in path_strategy(), f in 0.0..1.0f64) {
        let total = path.total_length();
        for piece in dsq_pieces(&path) {
            let x = piece.x_lo + f * (piece.x_hi - piece.x_lo);
            let direct = direct_gap(&path, x).powi(2);
            prop_assert!((piece.eval(x) - direct).abs() <= 1e-9 * total * total);
        }
    }

    #[test]
    fn budget_bound_solves_its_equation(path in path_strategy()) {
        let total = path.total_length();
        let b = budget_bound(&path);
        if b > 0.0 {
            prop_assert!((4.0 * b + direct_gap(&path, b) - total).abs() <= 1e-7 * total);
        }
    }

    #[test]
    fn solution_is_consistent(path in path_strategy()) {
        let total = path.total_length();
        let sol = optimal_path_shortcut(&path);
        prop_assert!(sol.improvement >= 0.0);
        prop_assert!(sol.diameter <= total + 1e-12);
        prop_assert!(sol.diameter >= total / 2.0 - 1e-12);
        prop_assert!((sol.diameter + sol.improvement - total).abs() <= 1e-9 * total);
        if sol.improvement > 1e-9 * total {
            let d = augmented_path_diameter(&path, sol.p, sol.q).unwrap();
            prop_assert!((d - sol.diameter).abs() <= 1e-9 * total);
            prop_assert!(sol.x_star <= sol.budget_bound + 1e-9 * total);
        }
    }

    #[test]
    fn candidate_formula_matches_sampled_oracle(path in path_strategy(), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let total = path.total_length();
        let p = path.locate(u.min(v) * total).unwrap();
        let q = path.locate(u.max(v) * total).unwrap();
        if let Ok(lengths) = candidate_lengths(&path, p, q) {
            let h = total / 2000.0;
            let chord = Chord::new(&path, p, q).unwrap();
            let oracle = sampled_diameter(&path, &[chord], h).unwrap();
            prop_assert!(oracle <= lengths.diameter() + 1e-9 * total);
            prop_assert!(oracle >= lengths.diameter() - h - 1e-9 * total);
        }
    }
}

#[test]
fn solver_beats_two_dimensional_grid() {
    let mut r = rng(7);
    for _ in 0..10 {
        let path = random_path(&mut r, 8);
        let sol = optimal_path_shortcut(&path);
        let grid = grid_search_path(&path, 200).unwrap();
        assert!(sol.diameter <= grid.diameter + 1e-9 * path.total_length());
        assert!(sol.diameter >= grid.diameter - grid.error_bound);
    }
}

#[test]
fn balanced_points_are_symmetric() {
    let path = PathNetwork::new(vec![Point::new(0., 0.), Point::new(4., 0.), Point::new(4., 4.)]).unwrap();
    let (p, q) = balanced_points(&path, 1.5).unwrap();
    assert!((path.arc_length(p).unwrap() - 1.5).abs() < 1e-12);
    assert!((path.arc_length(q).unwrap() - 6.5).abs() < 1e-12);
}
