//! Splitting a 2-D necklace by stringing it into a 1-D one.
//!
//! The grid is read as a boustrophedon (even rows left to right, odd rows
//! right to left), the resulting string is split with the fewest cuts, and
//! every string cut is lifted to whole grid lines:
//!
//! * a cut at a row turn becomes the horizontal line between the two rows;
//! * a cut inside row `r` becomes the vertical line at that column boundary
//!   plus the horizontal lines bounding row `r` (grid edges are not lines).
//!
//! Horizontal lines are shared between cuts, so at most three lines are used
//! per string cut. Every box of the lifted splitting lies inside one piece
//! of the string, and inherits that piece's family.
//!
//! In `d` dimensions the same idea strings the grid along a snake and lifts
//! each cut to one hyperplane per axis plus the two bounding hyperplanes of
//! every enclosing slab, `2d - 1` in all; only `d = 2` is implemented.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FamilyAssignment, NecklaceGrid, Outcome, Splitting};
use crate::solve1d::{min_cuts_fair, SplitSolution};

/// Bijection between grid cells and positions along the snake.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeMap {
    rows: usize,
    cols: usize,
    /// snake position -> row-major cell index
    order: Vec<usize>,
}

impl SnakeMap {
    pub fn new(rows: usize, cols: usize) -> Self {
        let order = (0..rows * cols)
            .map(|p| {
                let (r, i) = (p / cols, p % cols);
                let c = if r % 2 == 0 { i } else { cols - 1 - i };
                r * cols + c
            })
            .collect();
        SnakeMap { rows, cols, order }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Row-major cell index at snake position `p`.
    pub fn cell_at(&self, p: usize) -> usize {
        self.order[p]
    }

    /// Snake position of `(row, col)`.
    pub fn position_of(&self, row: usize, col: usize) -> usize {
        row * self.cols
            + if row % 2 == 0 {
                col
            } else {
                self.cols - 1 - col
            }
    }
}

fn require_2d(grid: &NecklaceGrid) -> Result<()> {
    if grid.dim() == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "stringing needs a 2-D necklace, got {} axes",
            grid.dim()
        )))
    }
}

/// The boustrophedon string of a 2-D grid.
pub fn snake_order(grid: &NecklaceGrid) -> Result<(NecklaceGrid, SnakeMap)> {
    require_2d(grid)?;
    let map = SnakeMap::new(grid.dims()[0], grid.dims()[1]);
    let beads: Vec<_> = map.order.iter().map(|&i| grid.cells()[i]).collect();
    Ok((NecklaceGrid::from_colors_1d(grid.palette(), &beads)?, map))
}

/// Whole-line realisation of the string cuts on the grid.
pub fn lift_cuts(snake_cuts: &Splitting, map: &SnakeMap) -> Result<Splitting> {
    snake_cuts.validate(&[map.len()])?;
    let (rows, cols) = (map.rows, map.cols);
    let mut horizontal = BTreeSet::new();
    let mut vertical = BTreeSet::new();
    for &p in &snake_cuts.cuts[0] {
        let p = p as usize;
        if p % cols == 0 {
            horizontal.insert(p / cols);
            continue;
        }
        let row = p / cols;
        let offset = p % cols;
        vertical.insert(if row % 2 == 0 { offset } else { cols - offset });
        for edge in [row, row + 1] {
            if edge > 0 && edge < rows {
                horizontal.insert(edge);
            }
        }
    }
    Ok(Splitting::new(vec![
        horizontal.into_iter().map(|x| x as i64).collect(),
        vertical.into_iter().map(|x| x as i64).collect(),
    ]))
}

/// Every intermediate of the stringing pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringingResult {
    /// the 1-D necklace read along the snake
    pub snake: NecklaceGrid,
    pub snake_solution: SplitSolution,
    pub splitting: Splitting,
    pub assignment: FamilyAssignment,
    pub lines_used: usize,
}

/// Index of the snake piece containing each snake position.
fn piece_of_positions(snake_cuts: &[i64], len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    let mut piece = 0;
    for p in 0..len {
        if snake_cuts.get(piece).is_some_and(|&c| c as usize == p) {
            piece += 1;
        }
        out.push(piece);
    }
    out
}

/// Checks that every box of `lifted` lies inside a single snake piece and
/// returns the piece of each box.
pub fn box_pieces(
    lifted: &Splitting,
    snake_cuts: &Splitting,
    map: &SnakeMap,
) -> Option<Vec<usize>> {
    let pieces = piece_of_positions(&snake_cuts.cuts[0], map.len());
    let mut owner: Vec<Option<usize>> = vec![None; lifted.box_count()];
    for row in 0..map.rows {
        for col in 0..map.cols {
            let b = lifted.box_index(&[row as i64, col as i64]);
            let piece = pieces[map.position_of(row, col)];
            match owner[b] {
                None => owner[b] = Some(piece),
                Some(q) if q != piece => return None,
                Some(_) => {}
            }
        }
    }
    // every box of a splitting of the full grid is non-empty
    owner.into_iter().collect()
}

/// Splits `grid` through its snake string, realising at most three lines
/// per string cut.
pub fn split_via_stringing(grid: &NecklaceGrid) -> Result<Outcome<StringingResult>> {
    let (snake, map) = snake_order(grid)?;
    let sol = match min_cuts_fair(&snake)? {
        Outcome::Found(sol) => sol,
        Outcome::NotFound => return Ok(Outcome::NotFound),
        Outcome::OddCounts(c) => return Ok(Outcome::OddCounts(c)),
    };
    let splitting = lift_cuts(&sol.cuts, &map)?;
    let owners = box_pieces(&splitting, &sol.cuts, &map)
        .expect("lifted boxes always refine the snake pieces");
    let assignment =
        FamilyAssignment::new(owners.iter().map(|&p| sol.assignment.labels[p]).collect());
    Ok(Outcome::Found(StringingResult {
        lines_used: splitting.total(),
        snake,
        snake_solution: sol,
        splitting,
        assignment,
    }))
}
