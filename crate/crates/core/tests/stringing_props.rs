mod common;

use common::random_grid;
use necklace_core::stringing::{box_pieces, lift_cuts, snake_order, split_via_stringing, SnakeMap};
use necklace_core::{is_fair, Fairness, Outcome, Splitting};
use rand::{rngs::StdRng, Rng, SeedableRng};

#[test]
fn random_grids_split_within_three_lines_per_colour() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=8);
        let cols = 2 * rng.gen_range(1..=4);
        let k = rng.gen_range(1..=4);
        let grid = random_grid(&mut rng, &[rows, cols], k);
        let Outcome::Found(r) = split_via_stringing(&grid).unwrap() else {
            panic!("even counts always split");
        };
        assert_eq!(
            is_fair(&grid, &r.splitting, &r.assignment).unwrap(),
            Fairness::Fair
        );
        assert!(r.lines_used <= 3 * r.snake_solution.total);
        assert!(r.lines_used <= 3 * k);
        let (snake, map) = snake_order(&grid).unwrap();
        assert_eq!(snake, r.snake);
        let owners =
            box_pieces(&r.splitting, &r.snake_solution.cuts, &map).expect("boxes refine pieces");
        let labels: Vec<u8> = owners
            .iter()
            .map(|&p| r.snake_solution.assignment.labels[p])
            .collect();
        assert_eq!(labels, r.assignment.labels);
    }
}

#[test]
fn every_single_cut_lifts_to_a_refinement() {
    for rows in 1..=5 {
        for cols in 1..=5 {
            let map = SnakeMap::new(rows, cols);
            for p in 1..(rows * cols) as i64 {
                let cuts = Splitting::new(vec![vec![p]]);
                let lifted = lift_cuts(&cuts, &map).unwrap();
                assert!(lifted.total() <= 3);
                assert!(lifted.validate(&[rows, cols]).is_ok());
                assert!(
                    box_pieces(&lifted, &cuts, &map).is_some(),
                    "{rows}x{cols} cut {p}"
                );
            }
        }
    }
}

#[test]
fn pairs_of_cuts_lift_to_refinements() {
    let (rows, cols) = (4, 5);
    let map = SnakeMap::new(rows, cols);
    let n = (rows * cols) as i64;
    for p in 1..n {
        for q in p + 1..n {
            let cuts = Splitting::new(vec![vec![p, q]]);
            let lifted = lift_cuts(&cuts, &map).unwrap();
            assert!(lifted.total() <= 6);
            assert!(box_pieces(&lifted, &cuts, &map).is_some());
        }
    }
}

#[test]
fn colours_are_preserved_along_the_snake() {
    let mut rng = StdRng::seed_from_u64(32);
    let grid = random_grid(&mut rng, &[5, 6], 3);
    let (snake, map) = snake_order(&grid).unwrap();
    let mut a = snake.cells().to_vec();
    let mut b = grid.cells().to_vec();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    for p in 0..map.len() {
        assert_eq!(snake.cells()[p], grid.cells()[map.cell_at(p)]);
    }
}
