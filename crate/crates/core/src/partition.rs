//! Splitting a list of pieces into two families with prescribed family-0 sum.
//!
//! The answer is always the lexicographically least labeling (label 0 puts a
//! piece in family 0), so callers get the same witness whichever strategy
//! runs underneath. Three exact strategies are used:
//!
//! * direct enumeration in lexicographic order for a handful of pieces,
//! * dynamic programming over the box of partial sums bounded by the target,
//! * meet-in-the-middle when there are few pieces but the target box is huge.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{ColorVector, FamilyAssignment};

const DIRECT_MAX_PIECES: usize = 10;
const DP_STATE_LIMIT: u128 = 1 << 26;
const MITM_MAX_PIECES: usize = 44;

/// Lexicographically least labeling whose family-0 sum is `target`, or
/// `None`. `target` must be half of the piece totals.
pub fn partition_feasible(
    pieces: &[ColorVector],
    target: &ColorVector,
) -> Result<Option<FamilyAssignment>> {
    let k = target.palette();
    if pieces.iter().any(|p| p.palette() != k) {
        return Err(Error::InvalidTarget);
    }
    let mut totals = ColorVector::zeros(k);
    for p in pieces {
        totals.add_assign(p);
    }
    if totals
        .0
        .iter()
        .zip(&target.0)
        .any(|(&tot, &t)| tot != 2 * t)
    {
        return Err(Error::InvalidTarget);
    }
    let flat: Vec<u32> = pieces.iter().flat_map(|p| p.0.iter().copied()).collect();
    Ok(lex_least_labeling(&flat, k, &target.0).map(FamilyAssignment::new))
}

/// Which exact method [`lex_least_labeling`] picks for a given instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Direct,
    Dynamic,
    MeetInTheMiddle,
}

fn state_count(target: &[u32]) -> u128 {
    target
        .iter()
        .try_fold(1u128, |acc, &t| acc.checked_mul(t as u128 + 1))
        .unwrap_or(u128::MAX)
}

pub fn choose_strategy(free_pieces: usize, target: &[u32]) -> Strategy {
    if free_pieces <= DIRECT_MAX_PIECES {
        return Strategy::Direct;
    }
    let states = state_count(target);
    let dp_cost = states.saturating_mul(free_pieces as u128);
    let mitm_cost = if free_pieces <= MITM_MAX_PIECES {
        (1u128 << free_pieces.div_ceil(2)) * (target.len() as u128 + 8)
    } else {
        u128::MAX
    };
    if mitm_cost < dp_cost || (states > DP_STATE_LIMIT && free_pieces <= MITM_MAX_PIECES) {
        Strategy::MeetInTheMiddle
    } else {
        Strategy::Dynamic
    }
}

/// Core of [`partition_feasible`] on a flat `n * k` array, without input
/// validation.
pub fn lex_least_labeling(pieces: &[u32], k: usize, target: &[u32]) -> Option<Vec<u8>> {
    lex_least_labeling_with(pieces, k, target, None)
}

/// Same as [`lex_least_labeling`] but with the strategy forced (used to
/// cross-check the strategies against each other).
pub fn lex_least_labeling_with(
    pieces: &[u32],
    k: usize,
    target: &[u32],
    force: Option<Strategy>,
) -> Option<Vec<u8>> {
    debug_assert_eq!(target.len(), k);
    let n = if k == 0 { 0 } else { pieces.len() / k };
    let mut labels = vec![0u8; n];
    let mut free = Vec::with_capacity(n);
    for i in 0..n {
        let p = &pieces[i * k..(i + 1) * k];
        if p.iter().all(|&x| x == 0) {
            continue;
        }
        if p.iter().zip(target).any(|(a, b)| a > b) {
            labels[i] = 1;
        } else {
            free.push(i);
        }
    }
    let free_labels = match force.unwrap_or_else(|| choose_strategy(free.len(), target)) {
        Strategy::Direct => direct(pieces, k, target, &free),
        Strategy::Dynamic => dynamic(pieces, k, target, &free),
        Strategy::MeetInTheMiddle => meet_in_the_middle(pieces, k, target, &free),
    }?;
    for (&i, l) in free.iter().zip(free_labels) {
        labels[i] = l;
    }
    Some(labels)
}

fn direct(pieces: &[u32], k: usize, target: &[u32], free: &[usize]) -> Option<Vec<u8>> {
    let m = free.len();
    if m == 0 {
        return target.iter().all(|&t| t == 0).then(Vec::new);
    }
    let mut sum = vec![0u32; k];
    'outer: for x in 0u64..(1u64 << m) {
        sum.iter_mut().for_each(|s| *s = 0);
        for (j, &i) in free.iter().enumerate() {
            if (x >> (m - 1 - j)) & 1 == 0 {
                for (s, &v) in sum.iter_mut().zip(&pieces[i * k..(i + 1) * k]) {
                    *s += v;
                }
            }
        }
        for (s, t) in sum.iter().zip(target) {
            if s != t {
                continue 'outer;
            }
        }
        return Some((0..m).map(|j| ((x >> (m - 1 - j)) & 1) as u8).collect());
    }
    None
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

fn dynamic(pieces: &[u32], k: usize, target: &[u32], free: &[usize]) -> Option<Vec<u8>> {
    let states = state_count(target) as usize;
    let mut strides = vec![1usize; k];
    for c in (0..k.saturating_sub(1)).rev() {
        strides[c] = strides[c + 1] * (target[c + 1] as usize + 1);
    }
    let offset = |i: usize| -> usize {
        pieces[i * k..(i + 1) * k]
            .iter()
            .zip(&strides)
            .map(|(&v, &s)| v as usize * s)
            .sum()
    };
    let m = free.len();
    // reach[j]: family-0 sums achievable from free[j..]
    let mut reach: Vec<Bitset> = Vec::with_capacity(m + 1);
    let mut last = Bitset::new(states);
    last.set(0);
    reach.push(last);
    let mut digits = vec![0u32; k];
    for &i in free.iter().rev() {
        let prev = reach.last().unwrap();
        let p = &pieces[i * k..(i + 1) * k];
        let off = offset(i);
        let mut next = Bitset(prev.0.clone());
        digits.iter_mut().for_each(|d| *d = 0);
        for s in 0..states {
            if prev.get(s)
                && digits
                    .iter()
                    .zip(p)
                    .zip(target)
                    .all(|((d, v), t)| d + v <= *t)
            {
                next.set(s + off);
            }
            for c in (0..k).rev() {
                digits[c] += 1;
                if digits[c] <= target[c] {
                    break;
                }
                digits[c] = 0;
            }
        }
        reach.push(next);
    }
    reach.reverse();
    let goal: usize = target
        .iter()
        .zip(&strides)
        .map(|(&t, &s)| t as usize * s)
        .sum();
    if !reach[0].get(goal) {
        return None;
    }
    let mut rem = target.to_vec();
    let mut rem_idx = goal;
    let mut labels = Vec::with_capacity(m);
    for (j, &i) in free.iter().enumerate() {
        let p = &pieces[i * k..(i + 1) * k];
        let fits = rem.iter().zip(p).all(|(r, v)| v <= r);
        if fits && reach[j + 1].get(rem_idx - offset(i)) {
            labels.push(0);
            rem_idx -= offset(i);
            rem.iter_mut().zip(p).for_each(|(r, v)| *r -= v);
        } else {
            labels.push(1);
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    Some(labels)
}

fn half_sums<'a>(
    pieces: &'a [u32],
    k: usize,
    target: &'a [u32],
    idx: &[usize],
) -> impl Iterator<Item = (u64, Vec<u32>)> + 'a {
    let h = idx.len();
    let idx = idx.to_vec();
    (0u64..(1u64 << h)).filter_map(move |x| {
        let mut sum = vec![0u32; k];
        for (j, &i) in idx.iter().enumerate() {
            if (x >> (h - 1 - j)) & 1 == 0 {
                for (s, &v) in sum.iter_mut().zip(&pieces[i * k..(i + 1) * k]) {
                    *s += v;
                }
            }
        }
        sum.iter()
            .zip(target)
            .all(|(s, t)| s <= t)
            .then_some((x, sum))
    })
}

fn meet_in_the_middle(pieces: &[u32], k: usize, target: &[u32], free: &[usize]) -> Option<Vec<u8>> {
    let m = free.len();
    let h = m / 2;
    let (front, back) = free.split_at(h);
    // back half: first (lexicographically least) mask reaching each sum
    let mut table: HashMap<Vec<u32>, u64> = HashMap::new();
    for (x, sum) in half_sums(pieces, k, target, back) {
        table.entry(sum).or_insert(x);
    }
    let b = back.len();
    for (x, sum) in half_sums(pieces, k, target, front) {
        let need: Vec<u32> = target.iter().zip(&sum).map(|(t, s)| t - s).collect();
        if let Some(&y) = table.get(&need) {
            let mut labels: Vec<u8> = (0..h).map(|j| ((x >> (h - 1 - j)) & 1) as u8).collect();
            labels.extend((0..b).map(|j| ((y >> (b - 1 - j)) & 1) as u8));
            return Some(labels);
        }
    }
    None
}
