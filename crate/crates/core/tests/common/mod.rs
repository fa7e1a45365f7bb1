#![allow(dead_code)]

use necklace_core::{ColorId, NecklaceGrid, Point, PointSet};
use rand::Rng;

pub fn c(v: usize) -> ColorId {
    ColorId(v as u16)
}

/// Every word of length `n` over `k` letters, as digit vectors.
pub fn all_words(n: usize, k: usize) -> Vec<Vec<ColorId>> {
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        out.push(digits.iter().map(|&d| c(d)).collect());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub fn even_counts(word: &[ColorId], k: usize) -> bool {
    let mut counts = vec![0usize; k];
    for w in word {
        counts[w.index()] += 1;
    }
    counts.iter().all(|n| n % 2 == 0)
}

/// Random colours over `k` letters, patched so that every colour count is
/// even. `len` must be even.
pub fn random_even_cells<R: Rng>(rng: &mut R, len: usize, k: usize) -> Vec<ColorId> {
    assert!(len % 2 == 0);
    let mut cells: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
    loop {
        let mut counts = vec![0usize; k];
        for &x in &cells {
            counts[x] += 1;
        }
        let odd: Vec<usize> = (0..k).filter(|&x| counts[x] % 2 == 1).collect();
        if odd.is_empty() {
            break;
        }
        let pos = cells.iter().position(|&x| x == odd[0]).unwrap();
        cells[pos] = odd[1];
    }
    cells.into_iter().map(c).collect()
}

pub fn random_grid<R: Rng>(rng: &mut R, dims: &[usize], k: usize) -> NecklaceGrid {
    let len: usize = dims.iter().product();
    NecklaceGrid::new(dims.to_vec(), k, random_even_cells(rng, len, k)).unwrap()
}

/// Random planar point set inside `[0, side)^2` with at most `max` points.
pub fn random_points<R: Rng>(rng: &mut R, side: i64, max: usize, k: usize) -> PointSet {
    let n = rng.gen_range(1..=max);
    let points = (0..n)
        .map(|_| {
            Point::new(
                vec![rng.gen_range(0..side), rng.gen_range(0..side)],
                c(rng.gen_range(0..k)),
            )
        })
        .collect();
    PointSet::new(2, k, points).unwrap()
}
