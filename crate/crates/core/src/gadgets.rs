//! Lower bounds on the number of axis-aligned lines for point sets.
//!
//! [`certify_min_lines`] walks every splitting with at most `m` lines and
//! checks each for a fair labeling. It keeps its own candidate lines, its
//! own subset enumeration and its own subset-sum search so that it can be
//! run against [`crate::solvend::min_total_lines`] as an independent check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ColorId, FamilyAssignment, Point, PointSet, Splitting};
use crate::solvend::LinesSolution;

/// Largest number of splittings the certifier will walk by default.
pub const DEFAULT_SPLITTING_BUDGET: u128 = 200_000_000;

/// Transcript of an exhaustive run that found no fair splitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub max_lines: usize,
    pub points: usize,
    pub palette: usize,
    /// candidate lines per axis, one per gap between occupied coordinates
    pub candidates: Vec<usize>,
    /// splittings examined, indexed by their number of lines
    pub splittings_by_lines: Vec<u64>,
    pub splittings: u64,
    /// colours with an odd number of points (then nothing is fair)
    pub odd_colors: Vec<ColorId>,
    pub exhausted: bool,
}

impl Certificate {
    /// Re-runs the enumeration and checks that it reproduces this transcript.
    pub fn replay(&self, ps: &PointSet) -> Result<bool> {
        Ok(match certify_min_lines(ps, self.max_lines)? {
            CertifyOutcome::Certificate(c) => &c == self,
            CertifyOutcome::Counterexample(_) => false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertifyOutcome {
    /// no fair splitting uses `max_lines` lines or fewer
    Certificate(Certificate),
    /// a fair splitting within the line budget
    Counterexample(LinesSolution),
}

impl CertifyOutcome {
    pub fn is_certificate(&self) -> bool {
        matches!(self, CertifyOutcome::Certificate(_))
    }
}

/// Sorted distinct coordinates per axis.
fn distinct_coords(ps: &PointSet) -> Vec<Vec<i64>> {
    (0..ps.dim())
        .map(|axis| {
            let mut v: Vec<i64> = ps.points().iter().map(|p| p.coords[axis]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect()
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

struct Certifier {
    k: usize,
    target: Vec<u32>,
    /// (axis, gap) for every candidate line, axis 0 first
    lines: Vec<(usize, usize)>,
    /// rank of each point's coordinate among the distinct values of its axis
    ranks: Vec<Vec<usize>>,
    colors: Vec<usize>,
    dim: usize,
}

impl Certifier {
    /// Flat per-box colour counts of the splitting made of `chosen` lines.
    fn box_counts(&self, chosen: &[usize]) -> Vec<u32> {
        let dim = self.dim;
        let mut per_axis: Vec<Vec<usize>> = vec![Vec::new(); dim];
        for &l in chosen {
            let (axis, gap) = self.lines[l];
            per_axis[axis].push(gap);
        }
        let mut index = Vec::with_capacity(self.ranks.len());
        for r in &self.ranks {
            let mut b = 0;
            for axis in 0..dim {
                let slab = per_axis[axis].iter().filter(|&&g| g < r[axis]).count();
                b = b * (per_axis[axis].len() + 1) + slab;
            }
            index.push(b);
        }
        let count: usize = per_axis.iter().map(|g| g.len() + 1).product();
        let mut counts = vec![0u32; count * self.k];
        for (b, &c) in index.iter().zip(&self.colors) {
            counts[b * self.k + c] += 1;
        }
        counts
    }

    /// Family-0 set of boxes hitting the target, tried include-first.
    fn fair_labels(&self, counts: &[u32]) -> Option<Vec<u8>> {
        let k = self.k;
        let n = counts.len() / k;
        let mut suffix = vec![0u32; (n + 1) * k];
        for b in (0..n).rev() {
            for c in 0..k {
                suffix[b * k + c] = suffix[(b + 1) * k + c] + counts[b * k + c];
            }
        }
        let mut labels = vec![1u8; n];
        let mut need = self.target.clone();
        fn dfs(
            b: usize,
            k: usize,
            counts: &[u32],
            suffix: &[u32],
            need: &mut [u32],
            labels: &mut [u8],
        ) -> bool {
            if need.iter().all(|&x| x == 0) {
                return true;
            }
            if (0..k).any(|c| need[c] > suffix[b * k + c]) {
                return false;
            }
            let piece = &counts[b * k..(b + 1) * k];
            if piece.iter().zip(need.iter()).all(|(p, n)| p <= n) {
                need.iter_mut().zip(piece).for_each(|(n, p)| *n -= p);
                labels[b] = 0;
                if dfs(b + 1, k, counts, suffix, need, labels) {
                    return true;
                }
                labels[b] = 1;
                need.iter_mut().zip(piece).for_each(|(n, p)| *n += p);
            }
            dfs(b + 1, k, counts, suffix, need, labels)
        }
        if dfs(0, k, counts, &suffix, &mut need, &mut labels) {
            // empty boxes carry nothing; keep them with family 0
            for b in 0..n {
                if counts[b * k..(b + 1) * k].iter().all(|&x| x == 0) {
                    labels[b] = 0;
                }
            }
            Some(labels)
        } else {
            None
        }
    }

    fn witness(&self, chosen: &[usize], labels: Vec<u8>, distinct: &[Vec<i64>]) -> LinesSolution {
        let mut cuts: Vec<Vec<i64>> = vec![Vec::new(); self.dim];
        for &l in chosen {
            let (axis, gap) = self.lines[l];
            cuts[axis].push(distinct[axis][gap] + 1);
        }
        LinesSolution {
            lines: chosen.len(),
            splitting: Splitting::new(cuts),
            assignment: FamilyAssignment::new(labels),
        }
    }
}

/// Either proves that every fair splitting of `ps` needs more than `m`
/// lines, or returns one that uses at most `m`.
pub fn certify_min_lines(ps: &PointSet, m: usize) -> Result<CertifyOutcome> {
    certify_min_lines_with_budget(ps, m, DEFAULT_SPLITTING_BUDGET)
}

pub fn certify_min_lines_with_budget(
    ps: &PointSet,
    m: usize,
    budget: u128,
) -> Result<CertifyOutcome> {
    let distinct = distinct_coords(ps);
    let candidates: Vec<usize> = distinct.iter().map(|v| v.len().saturating_sub(1)).collect();
    let mut transcript = Certificate {
        max_lines: m,
        points: ps.len(),
        palette: ps.palette(),
        candidates: candidates.clone(),
        splittings_by_lines: vec![0; m.min(candidates.iter().sum()) + 1],
        splittings: 0,
        odd_colors: ps.totals().odd_colors(),
        exhausted: true,
    };
    if !transcript.odd_colors.is_empty() {
        return Ok(CertifyOutcome::Certificate(transcript));
    }
    let total: usize = candidates.iter().sum();
    let needed: u128 = (0..=m.min(total)).map(|j| binom(total, j)).sum();
    if needed > budget {
        return Err(Error::ResourceExceeded {
            what: "splittings to certify",
            needed,
            budget,
        });
    }
    let lines = candidates
        .iter()
        .enumerate()
        .flat_map(|(axis, &n)| (0..n).map(move |g| (axis, g)))
        .collect();
    let ranks = ps
        .points()
        .iter()
        .map(|p| {
            p.coords
                .iter()
                .zip(&distinct)
                .map(|(c, d)| d.binary_search(c).unwrap())
                .collect()
        })
        .collect();
    let cert = Certifier {
        k: ps.palette(),
        target: ps.totals().0.iter().map(|c| c / 2).collect(),
        lines,
        ranks,
        colors: ps.points().iter().map(|p| p.color.index()).collect(),
        dim: ps.dim(),
    };

    fn walk(
        cert: &Certifier,
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        seen: &mut u64,
    ) -> Option<(Vec<usize>, Vec<u8>)> {
        if left == 0 {
            *seen += 1;
            let counts = cert.box_counts(chosen);
            return cert.fair_labels(&counts).map(|l| (chosen.clone(), l));
        }
        for l in start..=cert.lines.len().saturating_sub(left) {
            if l >= cert.lines.len() {
                break;
            }
            chosen.push(l);
            let hit = walk(cert, l + 1, left - 1, chosen, seen);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    for j in 0..=m.min(total) {
        let mut seen = 0;
        let hit = walk(&cert, 0, j, &mut Vec::new(), &mut seen);
        transcript.splittings_by_lines[j] = seen;
        transcript.splittings += seen;
        if let Some((chosen, labels)) = hit {
            return Ok(CertifyOutcome::Counterexample(
                cert.witness(&chosen, labels, &distinct),
            ));
        }
    }
    Ok(CertifyOutcome::Certificate(transcript))
}

/// A gadget together with the certificate that it needs the target number
/// of lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub points: PointSet,
    pub certificate: Certificate,
    /// point sets that passed the cheap filters and reached the certifier
    pub certified_candidates: u64,
}

/// Does some choice of at most `cuts` cuts split the weighted sequence into
/// runs whose weights can be shared equally?
fn weighted_fair(weights: &[u32], cuts: usize) -> bool {
    let total: u32 = weights.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let half = total / 2;
    fn go(weights: &[u32], pos: usize, cuts: usize, runs: &mut Vec<u32>, half: u32) -> bool {
        // close the current run at the end
        let rest: u32 = weights[pos..].iter().sum();
        runs.push(rest);
        let mut reach: u64 = 1;
        for &r in runs.iter() {
            reach |= reach << r;
        }
        runs.pop();
        if reach >> half & 1 == 1 {
            return true;
        }
        if cuts == 0 {
            return false;
        }
        for cut in pos + 1..weights.len() {
            runs.push(weights[pos..cut].iter().sum());
            let ok = go(weights, cut, cuts - 1, runs, half);
            runs.pop();
            if ok {
                return true;
            }
        }
        false
    }
    go(weights, 0, cuts, &mut Vec::new(), half)
}

/// Is there a fair splitting made of one line in each direction?
fn cross_fair(masks: &[u32], width: usize) -> bool {
    let n: u32 = masks.iter().map(|m| m.count_ones()).sum();
    if n % 2 == 1 {
        return false;
    }
    for row in 1..masks.len() {
        for col in 1..width {
            let low = (1u32 << col) - 1;
            let mut q = [0u32; 4];
            for (r, &m) in masks.iter().enumerate() {
                let base = if r < row { 0 } else { 2 };
                q[base] += (m & low).count_ones();
                q[base + 1] += (m & !low).count_ones();
            }
            if (0u32..16).any(|s| {
                (0..4)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| q[i])
                    .sum::<u32>()
                    * 2
                    == n
            }) {
                return true;
            }
        }
    }
    false
}

/// Marginals of length `len` summing to `n` with entries at most `cap`,
/// first entry positive, in lexicographic order.
fn marginals(n: usize, len: usize, cap: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, len: usize, cap: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = len - cur.len();
        let lo = if cur.is_empty() { 1 } else { 0 };
        for v in lo..=cap.min(left) {
            if left - v > (slots - 1) * cap {
                continue;
            }
            cur.push(v as u32);
            rec(left - v, len, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, len, cap, &mut Vec::new(), &mut out);
    out
}

/// Images of a planar set under the eight symmetries of the square,
/// translated back to the origin and sorted.
fn symmetric_images(pts: &[(i64, i64)]) -> Vec<Vec<(i64, i64)>> {
    let maps: [fn(i64, i64) -> (i64, i64); 8] = [
        |x, y| (x, y),
        |x, y| (y, -x),
        |x, y| (-x, -y),
        |x, y| (-y, x),
        |x, y| (x, -y),
        |x, y| (-x, y),
        |x, y| (y, x),
        |x, y| (-y, -x),
    ];
    maps.iter()
        .map(|f| {
            let mut img: Vec<(i64, i64)> = pts.iter().map(|&(x, y)| f(x, y)).collect();
            let mx = img.iter().map(|p| p.0).min().unwrap_or(0);
            let my = img.iter().map(|p| p.1).min().unwrap_or(0);
            img.iter_mut().for_each(|p| *p = (p.0 - mx, p.1 - my));
            img.sort_unstable();
            img
        })
        .collect()
}

/// Lexicographically least image of `pts` under the square's symmetries.
pub fn canonical_form(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    symmetric_images(pts).into_iter().min().unwrap_or_default()
}

/// Searches single-colour planar sets inside `[0, box_bound)^2` with at
/// most `max_points` points for one that no fair splitting with fewer than
/// `target` lines exists for.
///
/// Sizes are tried in increasing order; within a size, row and column
/// counts are fixed first and must already defeat `target - 1` parallel
/// lines. Only canonical forms are certified, so the answer is the first
/// canonical set in that order.
pub fn search_gadget(box_bound: usize, max_points: usize, target: usize) -> Result<Option<Gadget>> {
    if target == 0 {
        return Err(Error::InvalidPoints("target must be at least 1".into()));
    }
    let b = box_bound;
    let mut certified_candidates = 0u64;
    let mut by_count: Vec<Vec<u32>> = vec![Vec::new(); b + 1];
    for mask in 0u32..1 << b {
        by_count[mask.count_ones() as usize].push(mask);
    }
    for n in (2..=max_points.min(b * b)).step_by(2) {
        let ok: Vec<Vec<u32>> = marginals(n, b, b)
            .into_iter()
            .filter(|m| !weighted_fair(m, target - 1))
            .collect();
        for cols in &ok {
            for rows in &ok {
                let mut found = None;
                fill_rows(
                    rows,
                    &mut cols.clone(),
                    &mut Vec::new(),
                    &by_count,
                    &mut |masks| {
                        if target > 2 && cross_fair(masks, b) {
                            return Ok(false);
                        }
                        let pts: Vec<(i64, i64)> = masks
                            .iter()
                            .enumerate()
                            .flat_map(|(r, &mask)| {
                                (0..b)
                                    .filter(move |c| mask >> c & 1 == 1)
                                    .map(move |c| (r as i64, c as i64))
                            })
                            .collect();
                        if canonical_form(&pts) != pts {
                            return Ok(false);
                        }
                        certified_candidates += 1;
                        let ps = PointSet::planar(&pts);
                        if let CertifyOutcome::Certificate(certificate) =
                            certify_min_lines(&ps, target - 1)?
                        {
                            found = Some(Gadget {
                                points: ps,
                                certificate,
                                certified_candidates,
                            });
                            return Ok(true);
                        }
                        Ok(false)
                    },
                )?;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
    }
    Ok(None)
}

/// Enumerates 0/1 matrices with the given row and column sums, row masks in
/// increasing order, stopping when `visit` returns `true`.
fn fill_rows(
    rows: &[u32],
    cols_left: &mut [u32],
    masks: &mut Vec<u32>,
    by_count: &[Vec<u32>],
    visit: &mut dyn FnMut(&[u32]) -> Result<bool>,
) -> Result<bool> {
    let r = masks.len();
    if r == rows.len() {
        return visit(masks);
    }
    let rows_after = (rows.len() - r - 1) as u32;
    let mut empty = 0u32;
    let mut forced = 0u32;
    for (c, &v) in cols_left.iter().enumerate() {
        if v == 0 {
            empty |= 1 << c;
        } else if v == rows_after + 1 {
            forced |= 1 << c;
        } else if v > rows_after + 1 {
            return Ok(false);
        }
    }
    for &mask in &by_count[rows[r] as usize] {
        if mask & empty != 0 || mask & forced != forced {
            continue;
        }
        let width = cols_left.len();
        let bits = |m: u32| (0..width).filter(move |c| m >> c & 1 == 1);
        bits(mask).for_each(|c| cols_left[c] -= 1);
        masks.push(mask);
        let done = fill_rows(rows, cols_left, masks, by_count, visit);
        masks.pop();
        bits(mask).for_each(|c| cols_left[c] += 1);
        if done? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `k - 1` copies of a single-colour gadget in colours `0..k-1`, placed
/// diagonally so that no axis-parallel line meets two of them, followed by
/// a two-point pair in colour `k - 1` past the last copy.
///
/// Any fair splitting needs the gadget's line count on every copy, with
/// distinct lines per copy, and one more line for the pair.
pub fn compose_far_apart(gadget: &PointSet, k: usize) -> Result<PointSet> {
    if k < 2 {
        return Err(Error::InvalidPoints("composition needs k >= 2".into()));
    }
    let Some(bb) = gadget.bounding_box() else {
        return Err(Error::InvalidPoints("empty gadget".into()));
    };
    let color = gadget.points()[0].color;
    if gadget.points().iter().any(|p| p.color != color) {
        return Err(Error::InvalidPoints(
            "gadget must use a single colour".into(),
        ));
    }
    let step: Vec<i64> = bb.iter().map(|(lo, hi)| 2 * (hi - lo + 1)).collect();
    let mut points = Vec::new();
    for copy in 0..k - 1 {
        for p in gadget.points() {
            let coords = p
                .coords
                .iter()
                .zip(&bb)
                .zip(&step)
                .map(|((c, (lo, _)), s)| c - lo + s * copy as i64)
                .collect();
            points.push(Point::new(coords, ColorId(copy as u16)));
        }
    }
    let base: Vec<i64> = step.iter().map(|s| s * (k - 1) as i64).collect();
    for shift in 0..2 {
        points.push(Point::new(
            base.iter().map(|b| b + shift).collect(),
            ColorId(k as u16 - 1),
        ));
    }
    PointSet::new(gadget.dim(), k, points)
}

/// Per colour, the `[min, max]` coordinate range on every axis; `true` when
/// the ranges of different colours are pairwise disjoint on every axis.
pub fn colors_separated(ps: &PointSet) -> bool {
    let mut ranges: Vec<Option<Vec<(i64, i64)>>> = vec![None; ps.palette()];
    for p in ps.points() {
        let r = ranges[p.color.index()]
            .get_or_insert_with(|| p.coords.iter().map(|&c| (c, c)).collect());
        for (b, &c) in r.iter_mut().zip(&p.coords) {
            b.0 = b.0.min(c);
            b.1 = b.1.max(c);
        }
    }
    let present: Vec<&Vec<(i64, i64)>> = ranges.iter().flatten().collect();
    for (i, a) in present.iter().enumerate() {
        for b in &present[i + 1..] {
            for axis in 0..ps.dim() {
                if a[axis].0 <= b[axis].1 && b[axis].0 <= a[axis].1 {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Fairness;

    fn rows_to_points(rows: &[u32], width: usize) -> PointSet {
        let pts: Vec<(i64, i64)> = rows
            .iter()
            .enumerate()
            .flat_map(|(r, &m)| {
                (0..width)
                    .filter(move |c| m >> c & 1 == 1)
                    .map(move |c| (r as i64, c as i64))
            })
            .collect();
        PointSet::planar(&pts)
    }

    #[test]
    fn square_corners_counterexample_at_one() {
        let ps = PointSet::planar(&[(0, 0), (0, 4), (4, 0), (4, 4)]);
        match certify_min_lines(&ps, 1).unwrap() {
            CertifyOutcome::Counterexample(sol) => {
                assert_eq!(sol.lines, 1);
                assert_eq!(
                    ps.is_fair(&sol.splitting, &sol.assignment).unwrap(),
                    Fairness::Fair
                );
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn two_points_need_a_line() {
        let ps = PointSet::planar(&[(0, 0), (3, 1)]);
        let out = certify_min_lines(&ps, 0).unwrap();
        let CertifyOutcome::Certificate(c) = out else {
            panic!()
        };
        assert_eq!(c.splittings, 1);
        assert!(c.exhausted);
        assert!(c.replay(&ps).unwrap());
        assert!(!certify_min_lines(&ps, 1).unwrap().is_certificate());
    }

    #[test]
    fn odd_sets_are_certified_trivially() {
        let ps = PointSet::planar(&[(0, 0), (1, 1), (2, 2)]);
        let CertifyOutcome::Certificate(c) = certify_min_lines(&ps, 5).unwrap() else {
            panic!()
        };
        assert_eq!(c.odd_colors, vec![ColorId(0)]);
    }

    #[test]
    fn budget_is_enforced() {
        let ps = PointSet::planar(&(0..20).map(|i| (i, (i * 7) % 20)).collect::<Vec<_>>());
        assert!(matches!(
            certify_min_lines_with_budget(&ps, 6, 1000),
            Err(Error::ResourceExceeded { .. })
        ));
    }

    #[test]
    fn known_three_line_gadget() {
        let g = rows_to_points(&[3, 13, 10, 22, 24], 5);
        assert_eq!(g.len(), 12);
        assert!(certify_min_lines(&g, 2).unwrap().is_certificate());
        assert!(!certify_min_lines(&g, 3).unwrap().is_certificate());
    }

    #[test]
    fn weighted_filter() {
        assert!(weighted_fair(&[1, 1], 1));
        assert!(!weighted_fair(&[1, 1], 0));
        assert!(!weighted_fair(&[2, 2, 2], 1));
        assert!(weighted_fair(&[2, 2, 2, 2], 1));
        assert!(weighted_fair(&[1, 2, 1], 2));
    }

    #[test]
    fn cross_filter() {
        // 2x2 block: one line of each direction splits it 1+1 | 1+1
        assert!(cross_fair(&[3, 3], 2));
        assert!(!cross_fair(&[3, 13, 10, 22, 24], 5));
    }

    #[test]
    fn canonical_forms_agree_across_symmetries() {
        let pts = vec![(0, 0), (0, 1), (2, 1)];
        let c = canonical_form(&pts);
        for img in symmetric_images(&pts) {
            assert_eq!(canonical_form(&img), c);
        }
    }

    #[test]
    fn small_targets() {
        let g1 = search_gadget(3, 6, 1).unwrap().unwrap();
        assert_eq!(g1.points.len(), 2);
        let g2 = search_gadget(3, 6, 2).unwrap().unwrap();
        assert_eq!(g2.points.len(), 4);
        assert!(certify_min_lines(&g2.points, 1).unwrap().is_certificate());
    }

    #[test]
    fn composition_layout() {
        let g = PointSet::planar(&[(5, 5), (6, 7)]);
        let two = compose_far_apart(&g, 2).unwrap();
        assert_eq!(two.palette(), 2);
        assert_eq!(two.len(), 4);
        assert_eq!(two.points()[0].coords, vec![0, 0]);
        let three = compose_far_apart(&g, 3).unwrap();
        assert_eq!(three.len(), 6);
        assert!(colors_separated(&three));
        assert!(compose_far_apart(&g, 1).is_err());
    }
}
