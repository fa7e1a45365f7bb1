//! Fair splittings of d-dimensional grids and point sets by axis-aligned
//! hyperplanes.
//!
//! Both inputs reduce to the same thing: a finite list of candidate cut
//! positions per axis and a multiset of coloured sites. For a grid the
//! candidates are all interior bead boundaries; for a point set only cuts
//! between consecutive occupied coordinates matter.
//!
//! Search order is total cuts ascending, then the per-axis allocation
//! lexicographically, then positions lexicographically, axis 0 first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ColorId, FamilyAssignment, NecklaceGrid, Outcome, PointSet, Splitting};
use crate::partition::lex_least_labeling;
use crate::search::{find_first, Combinations};

/// A fair splitting found by the d-dimensional solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinesSolution {
    pub lines: usize,
    pub splitting: Splitting,
    pub assignment: FamilyAssignment,
}

/// Anything the solver accepts.
#[derive(Debug, Clone, Copy)]
pub enum Input<'a> {
    Grid(&'a NecklaceGrid),
    Points(&'a PointSet),
}

struct Instance {
    palette: usize,
    positions: Vec<Vec<i64>>,
    /// site ranks per axis (how many candidate positions lie at or below it)
    ranks: Vec<Vec<usize>>,
    colors: Vec<ColorId>,
    target: Vec<u32>,
}

impl Instance {
    fn build(
        palette: usize,
        positions: Vec<Vec<i64>>,
        sites: impl Iterator<Item = (Vec<i64>, ColorId)>,
    ) -> std::result::Result<Self, Vec<ColorId>> {
        let mut ranks = Vec::new();
        let mut colors = Vec::new();
        let mut totals = vec![0u32; palette];
        for (coords, color) in sites {
            ranks.push(
                coords
                    .iter()
                    .zip(&positions)
                    .map(|(&c, pos)| pos.partition_point(|&p| p <= c))
                    .collect(),
            );
            colors.push(color);
            totals[color.index()] += 1;
        }
        let odd: Vec<ColorId> = totals
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(i, _)| ColorId(i as u16))
            .collect();
        if !odd.is_empty() {
            return Err(odd);
        }
        Ok(Instance {
            palette,
            target: totals.iter().map(|c| c / 2).collect(),
            positions,
            ranks,
            colors,
        })
    }

    fn from_grid(grid: &NecklaceGrid) -> std::result::Result<Self, Vec<ColorId>> {
        let positions = grid
            .dims()
            .iter()
            .map(|&n| (1..n as i64).collect())
            .collect();
        let sites = grid
            .cells()
            .iter()
            .enumerate()
            .map(|(i, &c)| (grid.coords_of(i).into_iter().map(|x| x as i64).collect(), c));
        Instance::build(grid.palette(), positions, sites)
    }

    fn from_points(
        ps: &PointSet,
        positions: Vec<Vec<i64>>,
    ) -> std::result::Result<Self, Vec<ColorId>> {
        let sites = ps.points().iter().map(|p| (p.coords.clone(), p.color));
        Instance::build(ps.palette(), positions, sites)
    }

    /// Fair labeling of the boxes cut by the chosen candidate indices.
    fn solve(&self, chosen: &[Vec<usize>]) -> Option<LinesSolution> {
        let k = self.palette;
        let slabs: Vec<Vec<usize>> = chosen
            .iter()
            .zip(&self.positions)
            .map(|(idx, pos)| {
                (0..=pos.len())
                    .map(|r| idx.partition_point(|&i| i < r))
                    .collect()
            })
            .collect();
        let radix: Vec<usize> = chosen.iter().map(|c| c.len() + 1).collect();
        let boxes: usize = radix.iter().product();
        let mut flat = vec![0u32; boxes * k];
        for (ranks, color) in self.ranks.iter().zip(&self.colors) {
            let mut b = 0;
            for axis in 0..ranks.len() {
                b = b * radix[axis] + slabs[axis][ranks[axis]];
            }
            flat[b * k + color.index()] += 1;
        }
        let labels = lex_least_labeling(&flat, k, &self.target)?;
        let cuts = chosen
            .iter()
            .zip(&self.positions)
            .map(|(idx, pos)| idx.iter().map(|&i| pos[i]).collect())
            .collect();
        Some(LinesSolution {
            lines: chosen.iter().map(Vec::len).sum(),
            splitting: Splitting::new(cuts),
            assignment: FamilyAssignment::new(labels),
        })
    }

    /// First fair splitting with exactly `budgets[i]` cuts on axis `i`.
    fn search_budgets(&self, budgets: &[usize]) -> Option<LinesSolution> {
        let per_axis: Vec<Vec<Vec<usize>>> = budgets
            .iter()
            .zip(&self.positions)
            .map(|(&r, pos)| Combinations::new(pos.len(), r).collect())
            .collect();
        find_first(Product::new(per_axis), |chosen| self.solve(chosen))
    }

    fn search_total(&self, max_total: usize) -> Option<LinesSolution> {
        let caps: Vec<usize> = self.positions.iter().map(Vec::len).collect();
        let limit = max_total.min(caps.iter().sum());
        (0..=limit).find_map(|m| {
            allocations(m, &caps)
                .into_iter()
                .find_map(|budgets| self.search_budgets(&budgets))
        })
    }
}

/// Lexicographic product of per-axis choice lists.
struct Product {
    lists: Vec<Vec<Vec<usize>>>,
    odometer: Option<Vec<usize>>,
}

impl Product {
    fn new(lists: Vec<Vec<Vec<usize>>>) -> Self {
        let odometer = lists
            .iter()
            .all(|l| !l.is_empty())
            .then(|| vec![0; lists.len()]);
        Product { lists, odometer }
    }
}

impl Iterator for Product {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        let odo = self.odometer.as_mut()?;
        let item = odo
            .iter()
            .zip(&self.lists)
            .map(|(&i, l)| l[i].clone())
            .collect();
        let mut axis = odo.len();
        loop {
            if axis == 0 {
                self.odometer = None;
                break;
            }
            axis -= 1;
            odo[axis] += 1;
            if odo[axis] < self.lists[axis].len() {
                break;
            }
            odo[axis] = 0;
        }
        Some(item)
    }
}

/// Ways to spread `m` cuts over axes with the given capacities, in
/// lexicographic order of the per-axis counts.
pub fn allocations(m: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(m: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match caps.split_first() {
            None => {
                if m == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&cap, rest)) => {
                let rest_cap: usize = rest.iter().sum();
                for r in m.saturating_sub(rest_cap)..=m.min(cap) {
                    cur.push(r);
                    rec(m - r, rest, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(m, caps, &mut Vec::new(), &mut out);
    out
}

/// A fair splitting of `grid` with exactly `budgets[i]` cuts on axis `i`.
pub fn exists_fair_budgets(
    grid: &NecklaceGrid,
    budgets: &[usize],
) -> Result<Outcome<LinesSolution>> {
    if budgets.len() != grid.dim() {
        return Err(Error::InvalidSplitting(format!(
            "{} budgets for a {}-dimensional grid",
            budgets.len(),
            grid.dim()
        )));
    }
    for (axis, (&r, &n)) in budgets.iter().zip(grid.dims()).enumerate() {
        if r > n - 1 {
            return Err(Error::BudgetTooLarge {
                axis,
                budget: r,
                max: n - 1,
            });
        }
    }
    Ok(match Instance::from_grid(grid) {
        Err(odd) => Outcome::OddCounts(odd),
        Ok(inst) => inst
            .search_budgets(budgets)
            .map_or(Outcome::NotFound, Outcome::Found),
    })
}

/// A fair splitting of `grid` using at most `max_total` cuts in total, with
/// the fewest cuts among those.
pub fn exists_fair_total(grid: &NecklaceGrid, max_total: usize) -> Outcome<LinesSolution> {
    match Instance::from_grid(grid) {
        Err(odd) => Outcome::OddCounts(odd),
        Ok(inst) => inst
            .search_total(max_total)
            .map_or(Outcome::NotFound, Outcome::Found),
    }
}

/// Candidate cut positions of a point set: one per gap between consecutive
/// distinct occupied coordinates, at `floor((a + b) / 2) + 1` so that the
/// line `x = p - 1/2` lies strictly between `a` and `b`.
pub fn candidate_positions(ps: &PointSet) -> Vec<Vec<i64>> {
    (0..ps.dim())
        .map(|axis| {
            let mut coords: Vec<i64> = ps.points().iter().map(|p| p.coords[axis]).collect();
            coords.sort_unstable();
            coords.dedup();
            coords
                .windows(2)
                .map(|w| (w[0] + w[1]).div_euclid(2) + 1)
                .collect()
        })
        .collect()
}

/// Fewest lines of a fair splitting of `ps` using only the given cut
/// positions (sorted, per axis).
pub fn min_total_lines_over(
    ps: &PointSet,
    positions: Vec<Vec<i64>>,
) -> Result<Outcome<LinesSolution>> {
    if positions.len() != ps.dim() {
        return Err(Error::InvalidSplitting(
            "one position list per axis is required".into(),
        ));
    }
    Splitting::new(positions.clone()).check_monotone()?;
    Ok(match Instance::from_points(ps, positions) {
        Err(odd) => Outcome::OddCounts(odd),
        Ok(inst) => inst
            .search_total(usize::MAX)
            .map_or(Outcome::NotFound, Outcome::Found),
    })
}

/// Fewest axis-aligned lines admitting a fair splitting, with the canonical
/// witness. A point set with coincident points of one colour may have no
/// fair splitting at all.
pub fn min_total_lines(input: Input<'_>) -> Result<Outcome<LinesSolution>> {
    match input {
        Input::Grid(grid) => Ok(exists_fair_total(grid, usize::MAX)),
        Input::Points(ps) => min_total_lines_over(ps, candidate_positions(ps)),
    }
}
