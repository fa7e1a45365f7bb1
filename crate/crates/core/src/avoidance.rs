//! Backtracking search for colourings in which no interval (1-D) or square
//! (2-D) has a fair splitting with at most `t` cuts in total.
//!
//! The colouring grows one cell at a time and every extension is checked
//! only on the regions that end at the new cell. Colours make their first
//! appearance in the order given by the caller, which removes the branches
//! that differ only by renaming colours.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ColorId, NecklaceGrid, Outcome};
use crate::solve1d::exists_fair_in_word;
use crate::solvend::exists_fair_total;

/// Does `word[lo..hi]` have a fair splitting with at most `t` cuts?
pub fn interval_is_bad(word: &[ColorId], palette: usize, lo: usize, hi: usize, t: usize) -> bool {
    assert!(
        lo < hi && hi <= word.len(),
        "interval [{lo}, {hi}) out of range"
    );
    exists_fair_in_word(&word[lo..hi], palette, t).is_found()
}

/// No factor `uv` with `u` and `v` having equal colour counts.
pub fn is_abelian_square_free(word: &[ColorId]) -> bool {
    let k = word.iter().map(|c| c.index() + 1).max().unwrap_or(0);
    let n = word.len();
    let mut prefix = vec![vec![0u32; k]; n + 1];
    for (i, c) in word.iter().enumerate() {
        prefix[i + 1] = prefix[i].clone();
        prefix[i + 1][c.index()] += 1;
    }
    for lo in 0..n {
        for half in 1..=(n - lo) / 2 {
            let (a, m, b) = (&prefix[lo], &prefix[lo + half], &prefix[lo + 2 * half]);
            if (0..k).all(|c| m[c] - a[c] == b[c] - m[c]) {
                return false;
            }
        }
    }
    true
}

/// Every interval of `word` is free of fair splittings with at most `t` cuts.
pub fn word_avoids(word: &[ColorId], palette: usize, t: usize) -> bool {
    (0..word.len()).all(|hi| (0..hi).all(|lo| !interval_is_bad(word, palette, lo, hi + 1, t)))
}

/// Outcome of a backtracking run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceRun {
    pub k: usize,
    pub t: usize,
    pub d: usize,
    /// target length (1-D) or patch side (2-D); `None` means no target
    pub limit: Option<usize>,
    /// order in which colours may first appear
    pub color_order: Vec<ColorId>,
    /// cells in the deepest colouring found
    pub reached: usize,
    /// `true` when the whole tree was searched without reaching the limit
    pub exhausted: bool,
    /// colours of the deepest colouring, in fill order
    pub witness: Vec<ColorId>,
    /// the deepest 2-D colouring as rows, unfilled cells as `null`
    pub patch: Option<Vec<Vec<Option<ColorId>>>>,
    /// search-tree nodes visited
    pub nodes: u64,
}

/// Search with colours introduced in increasing order.
pub fn backtrack_search(
    k: usize,
    t: usize,
    d: usize,
    limit: Option<usize>,
) -> Result<AvoidanceRun> {
    let order: Vec<ColorId> = (0..k).map(|c| ColorId(c as u16)).collect();
    backtrack_search_ordered(k, t, d, limit, &order)
}

/// Search with colours introduced in the order of `order`, a permutation of
/// the palette.
pub fn backtrack_search_ordered(
    k: usize,
    t: usize,
    d: usize,
    limit: Option<usize>,
    order: &[ColorId],
) -> Result<AvoidanceRun> {
    if k == 0 || k > u16::MAX as usize {
        return Err(Error::Unsupported(format!("palette of {k} colours")));
    }
    let mut sorted: Vec<usize> = order.iter().map(|c| c.index()).collect();
    sorted.sort_unstable();
    if sorted != (0..k).collect::<Vec<_>>() {
        return Err(Error::InvalidTarget);
    }
    let mut search = match d {
        1 => Search::new(k, t, order, limit, None),
        2 => {
            let side = limit
                .ok_or_else(|| Error::Unsupported("a 2-D search needs a patch side".into()))?;
            Search::new(k, t, order, Some(side * side), Some(side))
        }
        _ => return Err(Error::Unsupported(format!("avoidance in dimension {d}"))),
    };
    let reached_limit = search.dfs(0);
    let patch = search.side.map(|side| {
        let mut rows = vec![vec![None; side]; side];
        for (&(r, c), &color) in search.cells.iter().zip(&search.best) {
            rows[r][c] = Some(color);
        }
        rows
    });
    Ok(AvoidanceRun {
        k,
        t,
        d,
        limit,
        color_order: order.to_vec(),
        reached: search.best.len(),
        exhausted: !reached_limit,
        witness: search.best,
        patch,
        nodes: search.nodes,
    })
}

struct Search<'a> {
    k: usize,
    t: usize,
    order: &'a [ColorId],
    /// cells to fill
    target: Option<usize>,
    side: Option<usize>,
    /// 2-D fill order: anti-diagonals, top row first
    cells: Vec<(usize, usize)>,
    word: Vec<ColorId>,
    best: Vec<ColorId>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(
        k: usize,
        t: usize,
        order: &'a [ColorId],
        target: Option<usize>,
        side: Option<usize>,
    ) -> Self {
        let cells = side
            .map(|n| {
                let mut v: Vec<(usize, usize)> =
                    (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
                v.sort_by_key(|&(r, c)| (r + c, r));
                v
            })
            .unwrap_or_default();
        Search {
            k,
            t,
            order,
            target,
            side,
            cells,
            word: Vec::new(),
            best: Vec::new(),
            nodes: 0,
        }
    }

    /// Returns `true` once the target size is reached.
    fn dfs(&mut self, used: usize) -> bool {
        self.nodes += 1;
        if self.word.len() > self.best.len() {
            self.best = self.word.clone();
        }
        if self.target == Some(self.word.len()) {
            return true;
        }
        for i in 0..self.k.min(used + 1) {
            let color = self.order[i];
            self.word.push(color);
            if !self.new_cell_is_bad() && self.dfs(used.max(i + 1)) {
                return true;
            }
            self.word.pop();
        }
        false
    }

    fn new_cell_is_bad(&self) -> bool {
        match self.side {
            None => {
                let hi = self.word.len();
                (0..hi - 1).any(|lo| interval_is_bad(&self.word, self.k, lo, hi, self.t))
            }
            Some(_) => {
                let filled = self.word.len();
                let (r, c) = self.cells[filled - 1];
                let color_at = |rr: usize, cc: usize| {
                    let idx = self.cells.iter().position(|&p| p == (rr, cc)).unwrap();
                    self.word[idx]
                };
                (2..=r.min(c) + 1).any(|s| {
                    let rows: Vec<Vec<ColorId>> = (r + 1 - s..=r)
                        .map(|rr| (c + 1 - s..=c).map(|cc| color_at(rr, cc)).collect())
                        .collect();
                    let grid = NecklaceGrid::from_rows(self.k, &rows).expect("square patch");
                    matches!(exists_fair_total(&grid, self.t), Outcome::Found(_))
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<ColorId> {
        s.chars()
            .map(|ch| ColorId(ch as u16 - 'a' as u16))
            .collect()
    }

    #[test]
    fn bad_intervals() {
        assert!(interval_is_bad(&w("abab"), 2, 0, 4, 1));
        assert!(!interval_is_bad(&w("ab"), 2, 0, 2, 0));
        assert!(!interval_is_bad(&w("aabb"), 2, 0, 4, 1));
        assert!(interval_is_bad(&w("aabb"), 2, 0, 4, 2));
    }

    #[test]
    fn abelian_squares() {
        assert!(!is_abelian_square_free(&w("abab")));
        assert!(is_abelian_square_free(&w("abc")));
        assert!(is_abelian_square_free(&w("abcbabc")) == brute_free(&w("abcbabc")));
        assert!(!is_abelian_square_free(&w("abcbac")));
        assert!(is_abelian_square_free(&w("")));
    }

    fn brute_free(word: &[ColorId]) -> bool {
        let n = word.len();
        for lo in 0..n {
            for len in (2..=n - lo).step_by(2) {
                let (l, r) = word[lo..lo + len].split_at(len / 2);
                let mut a: Vec<_> = l.to_vec();
                let mut b: Vec<_> = r.to_vec();
                a.sort();
                b.sort();
                if a == b {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn one_colour_dies_at_one() {
        let run = backtrack_search(1, 1, 1, None).unwrap();
        assert!(run.exhausted);
        assert_eq!(run.reached, 1);
    }

    #[test]
    fn two_colours_die_at_three() {
        let run = backtrack_search(2, 1, 1, None).unwrap();
        assert!(run.exhausted);
        assert_eq!(run.witness, w("aba"));
    }

    #[test]
    fn reaching_the_limit() {
        let run = backtrack_search(4, 1, 1, Some(20)).unwrap();
        assert!(!run.exhausted);
        assert_eq!(run.reached, 20);
        assert!(is_abelian_square_free(&run.witness));
    }

    #[test]
    fn patch_search() {
        let run = backtrack_search(3, 1, 2, Some(3)).unwrap();
        let patch = run.patch.unwrap();
        assert_eq!(patch.len(), 3);
        assert_eq!(run.reached, run.witness.len());
    }

    #[test]
    fn bad_orders_are_rejected() {
        assert!(backtrack_search_ordered(2, 1, 1, None, &[ColorId(0), ColorId(0)]).is_err());
        assert!(backtrack_search(2, 1, 3, Some(3)).is_err());
        assert!(backtrack_search(2, 1, 2, None).is_err());
    }
}
