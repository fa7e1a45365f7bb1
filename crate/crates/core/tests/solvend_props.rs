mod common;

use common::{random_grid, random_points};
use necklace_core::solve1d::min_cuts_fair;
use necklace_core::solvend::{
    candidate_positions, exists_fair_budgets, exists_fair_total, min_total_lines,
    min_total_lines_over, Input,
};
use necklace_core::{is_fair, Fairness, NecklaceGrid, Outcome, PointSet};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn transpose(grid: &NecklaceGrid) -> NecklaceGrid {
    let (r, c) = (grid.dims()[0], grid.dims()[1]);
    let cells = (0..c)
        .flat_map(|j| (0..r).map(move |i| (i, j)))
        .map(|(i, j)| grid.get(&[i, j]))
        .collect();
    NecklaceGrid::new(vec![c, r], grid.palette(), cells).unwrap()
}

#[test]
fn one_axis_agrees_with_the_string_solver() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let n = 2 * rng.gen_range(1..=7);
        let grid = random_grid(&mut rng, &[n], k);
        let a = min_cuts_fair(&grid).unwrap().found().unwrap();
        let b = exists_fair_total(&grid, usize::MAX).found().unwrap();
        assert_eq!(a.total, b.lines);
        assert_eq!(a.cuts, b.splitting);
        assert_eq!(a.assignment, b.assignment);
    }
}

#[test]
fn budgets_are_symmetric_under_transpose() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..120 {
        let dims = [rng.gen_range(1..=4), 2 * rng.gen_range(1..=2)];
        let k = rng.gen_range(1..=3);
        let grid = random_grid(&mut rng, &dims, k);
        let flipped = transpose(&grid);
        for a in 0..=2 {
            for b in 0..=2 {
                let x = exists_fair_budgets(&grid, &[a, b]);
                let y = exists_fair_budgets(&flipped, &[b, a]);
                assert_eq!(x.is_ok(), y.is_ok());
                if let (Ok(x), Ok(y)) = (x, y) {
                    assert_eq!(x.is_found(), y.is_found(), "{dims:?} budgets {a},{b}");
                }
            }
        }
    }
}

#[test]
fn total_search_returns_fair_minimal_witnesses() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..120 {
        let dims = [rng.gen_range(1..=4), 2 * rng.gen_range(1..=2)];
        let k = rng.gen_range(1..=3);
        let grid = random_grid(&mut rng, &dims, k);
        let sol = exists_fair_total(&grid, usize::MAX).found().unwrap();
        assert_eq!(
            is_fair(&grid, &sol.splitting, &sol.assignment).unwrap(),
            Fairness::Fair
        );
        assert_eq!(sol.lines, sol.splitting.total());
        if sol.lines > 0 {
            assert!(!exists_fair_total(&grid, sol.lines - 1).is_found());
        }
        let via_points = min_total_lines(Input::Points(&PointSet::from_grid(&grid)))
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(via_points.lines, sol.lines);
    }
}

fn dense_positions(ps: &PointSet) -> Vec<Vec<i64>> {
    let bb = ps.bounding_box().unwrap();
    bb.iter().map(|&(lo, hi)| (lo + 1..=hi).collect()).collect()
}

#[test]
fn gap_candidates_lose_nothing() {
    let mut rng = StdRng::seed_from_u64(24);
    for _ in 0..300 {
        let k = rng.gen_range(1..=2);
        let ps = random_points(&mut rng, 6, 10, k);
        let sparse = min_total_lines(Input::Points(&ps)).unwrap();
        let dense = min_total_lines_over(&ps, dense_positions(&ps)).unwrap();
        match (&sparse, &dense) {
            (Outcome::Found(a), Outcome::Found(b)) => {
                assert_eq!(a.lines, b.lines);
                assert_eq!(
                    ps.is_fair(&a.splitting, &a.assignment).unwrap(),
                    Fairness::Fair
                );
            }
            (Outcome::NotFound, Outcome::NotFound) => {}
            (Outcome::OddCounts(x), Outcome::OddCounts(y)) => assert_eq!(x, y),
            other => panic!("mismatch {other:?}"),
        }
    }
}

#[test]
fn candidates_sit_between_occupied_coordinates() {
    let mut rng = StdRng::seed_from_u64(25);
    for _ in 0..100 {
        let ps = random_points(&mut rng, 9, 8, 1);
        for (axis, cands) in candidate_positions(&ps).iter().enumerate() {
            for &p in cands {
                let line = p as f64 - 0.5;
                assert!(ps.points().iter().any(|q| (q.coords[axis] as f64) < line));
                assert!(ps.points().iter().any(|q| (q.coords[axis] as f64) > line));
            }
        }
    }
}
