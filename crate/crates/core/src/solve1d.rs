//! Fair splittings of one-dimensional necklaces.
//!
//! Cut sets are enumerated by increasing size and, within a size, in
//! lexicographic order of positions; the first cut set whose pieces admit a
//! fair labeling wins and its labeling is the lexicographically least one.
//! That order makes every answer canonical.

use serde::{Deserialize, Serialize};

pub use crate::partition::partition_feasible;

use crate::error::{Error, Result};
use crate::model::{ColorId, FamilyAssignment, NecklaceGrid, Outcome, Splitting};
use crate::partition::lex_least_labeling;
use crate::search::{find_first, Combinations};

/// A verified fair splitting of a 1-D necklace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSolution {
    pub cuts: Splitting,
    pub assignment: FamilyAssignment,
    pub total: usize,
}

fn require_1d(grid: &NecklaceGrid) -> Result<()> {
    if grid.dim() == 1 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "expected a 1-D necklace, got {} axes",
            grid.dim()
        )))
    }
}

/// Prefix colour counts: row `i` holds the counts of `word[..i]`.
struct Prefix {
    k: usize,
    rows: Vec<u32>,
}

impl Prefix {
    fn new(word: &[ColorId], k: usize) -> Self {
        let mut rows = vec![0u32; (word.len() + 1) * k];
        for (i, c) in word.iter().enumerate() {
            let (done, rest) = rows.split_at_mut((i + 1) * k);
            rest[..k].copy_from_slice(&done[i * k..]);
            rest[c.index()] += 1;
        }
        Prefix { k, rows }
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.rows[i * self.k..(i + 1) * self.k]
    }
}

fn solve_cut_set(
    prefix: &Prefix,
    n: usize,
    target: &[u32],
    cut_idx: &[usize],
) -> Option<SplitSolution> {
    let k = prefix.k;
    let positions: Vec<usize> = cut_idx.iter().map(|&i| i + 1).collect();
    let mut flat = Vec::with_capacity((positions.len() + 1) * k);
    let mut prev = 0;
    for &b in positions.iter().chain(std::iter::once(&n)) {
        flat.extend(
            prefix
                .row(b)
                .iter()
                .zip(prefix.row(prev))
                .map(|(hi, lo)| hi - lo),
        );
        prev = b;
    }
    let labels = lex_least_labeling(&flat, k, target)?;
    Some(SplitSolution {
        total: positions.len(),
        cuts: Splitting::new(vec![positions.into_iter().map(|p| p as i64).collect()]),
        assignment: FamilyAssignment::new(labels),
    })
}

fn search_word(word: &[ColorId], palette: usize, max_cuts: usize) -> Outcome<SplitSolution> {
    let mut totals = vec![0u32; palette];
    for c in word {
        totals[c.index()] += 1;
    }
    let odd: Vec<ColorId> = totals
        .iter()
        .enumerate()
        .filter(|(_, &c)| c % 2 == 1)
        .map(|(i, _)| ColorId(i as u16))
        .collect();
    if !odd.is_empty() {
        return Outcome::OddCounts(odd);
    }
    let target: Vec<u32> = totals.iter().map(|c| c / 2).collect();
    let n = word.len();
    let prefix = Prefix::new(word, palette);
    let positions = n.saturating_sub(1);
    for cuts in 0..=max_cuts.min(positions) {
        let hit = find_first(Combinations::new(positions, cuts), |idx| {
            solve_cut_set(&prefix, n, &target, idx)
        });
        if let Some(sol) = hit {
            return Outcome::Found(sol);
        }
    }
    Outcome::NotFound
}

/// Canonical fair splitting of `word` with at most `max_cuts` cuts.
pub fn exists_fair_in_word(
    word: &[ColorId],
    palette: usize,
    max_cuts: usize,
) -> Outcome<SplitSolution> {
    search_word(word, palette, max_cuts)
}

/// A fair splitting with at most `t` cuts, if one exists.
pub fn exists_fair_with_cuts(grid: &NecklaceGrid, t: usize) -> Result<Outcome<SplitSolution>> {
    require_1d(grid)?;
    Ok(search_word(grid.cells(), grid.palette(), t))
}

/// Fewest cuts of a fair splitting, with the canonical witness. For an
/// even-count necklace over `k` colours the answer is at most `k`.
pub fn min_cuts_fair(grid: &NecklaceGrid) -> Result<Outcome<SplitSolution>> {
    require_1d(grid)?;
    let out = search_word(grid.cells(), grid.palette(), grid.len());
    if let Outcome::Found(sol) = &out {
        debug_assert!(sol.total <= grid.palette());
    }
    Ok(out)
}

const ORACLE_MAX_LEN: usize = 24;

/// Brute-force decision: every cut set of size at most `t`, every labeling
/// of its pieces, family sums compared directly. Shares nothing with the
/// solver above.
pub fn oracle_brute(grid: &NecklaceGrid, t: usize) -> Result<bool> {
    require_1d(grid)?;
    let n = grid.len();
    if n > ORACLE_MAX_LEN {
        return Err(Error::ResourceExceeded {
            what: "brute-force oracle length",
            needed: n as u128,
            budget: ORACLE_MAX_LEN as u128,
        });
    }
    let word = grid.cells();
    let k = grid.palette();
    let slots = n - 1;
    for mask in 0u32..(1u32 << slots) {
        if mask.count_ones() as usize > t {
            continue;
        }
        // pieces as colour counts, cut after bead i when bit i is set
        let mut pieces: Vec<Vec<i64>> = vec![vec![0; k]];
        for (i, c) in word.iter().enumerate() {
            pieces.last_mut().unwrap()[c.index()] += 1;
            if i < slots && mask >> i & 1 == 1 {
                pieces.push(vec![0; k]);
            }
        }
        for labels in 0u32..(1u32 << pieces.len()) {
            let mut balance = vec![0i64; k];
            for (j, p) in pieces.iter().enumerate() {
                let sign = if labels >> j & 1 == 1 { -1 } else { 1 };
                for (b, v) in balance.iter_mut().zip(p) {
                    *b += sign * v;
                }
            }
            if balance.iter().all(|&b| b == 0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_fair, Fairness};

    fn word(w: &str) -> NecklaceGrid {
        NecklaceGrid::from_word(w).unwrap()
    }

    fn cuts_of(sol: &SplitSolution) -> Vec<i64> {
        sol.cuts.cuts[0].clone()
    }

    #[test]
    fn abab_one_cut() {
        let sol = exists_fair_with_cuts(&word("abab"), 1)
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(cuts_of(&sol), vec![2]);
        assert_eq!(sol.assignment.labels, vec![0, 1]);
    }

    #[test]
    fn aabb_needs_two() {
        assert_eq!(
            exists_fair_with_cuts(&word("aabb"), 1).unwrap(),
            Outcome::NotFound
        );
        let sol = exists_fair_with_cuts(&word("aabb"), 2)
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(cuts_of(&sol), vec![1, 3]);
        assert_eq!(sol.assignment.labels, vec![0, 1, 0]);
    }

    #[test]
    fn zero_cuts_never_fair_for_nonempty() {
        assert_eq!(
            exists_fair_with_cuts(&word("aa"), 0).unwrap(),
            Outcome::NotFound
        );
    }

    #[test]
    fn odd_counts_are_distinct() {
        assert_eq!(
            exists_fair_with_cuts(&word("aab"), 2).unwrap(),
            Outcome::OddCounts(vec![ColorId(1)])
        );
        assert!(matches!(
            min_cuts_fair(&word("abc")).unwrap(),
            Outcome::OddCounts(_)
        ));
    }

    #[test]
    fn min_cuts_examples() {
        assert_eq!(
            min_cuts_fair(&word("abab")).unwrap().found().unwrap().total,
            1
        );
        assert_eq!(
            min_cuts_fair(&word("aabb")).unwrap().found().unwrap().total,
            2
        );
        let abba = min_cuts_fair(&word("abba")).unwrap().found().unwrap();
        assert_eq!((abba.total, cuts_of(&abba)), (1, vec![2]));
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_brute(&word("abab"), 1).unwrap());
        assert!(!oracle_brute(&word("aabb"), 1).unwrap());
        assert!(oracle_brute(&word("aabb"), 2).unwrap());
        assert!(oracle_brute(&word("abcabc"), 3).unwrap());
        assert!(!oracle_brute(&word("aa"), 0).unwrap());
    }

    #[test]
    fn witnesses_pass_is_fair() {
        for w in ["abab", "aabb", "abba", "abcabc", "aabbccaabbcc", "abcacb"] {
            let g = word(w);
            let sol = min_cuts_fair(&g).unwrap().found().unwrap();
            assert_eq!(
                is_fair(&g, &sol.cuts, &sol.assignment).unwrap(),
                Fairness::Fair,
                "{w}"
            );
        }
    }

    #[test]
    fn rejects_two_dimensional_input() {
        let g = NecklaceGrid::new(vec![2, 2], 1, vec![ColorId(0); 4]).unwrap();
        assert!(matches!(
            exists_fair_with_cuts(&g, 1),
            Err(Error::Unsupported(_))
        ));
    }
}
