//! Small enumeration helpers shared by the solvers.

use rayon::prelude::*;

const CHUNK: usize = 1024;
const PARALLEL_MIN: usize = 64;

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// First `Some` produced by `f` in iteration order. Chunks of the iterator
/// are evaluated in parallel when more than one worker is available, but the
/// result is always the earliest hit, so the thread count never changes it.
pub fn find_first<T, R, I, F>(mut items: I, f: F) -> Option<R>
where
    I: Iterator<Item = T>,
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    let parallel = rayon::current_num_threads() > 1;
    loop {
        let chunk: Vec<T> = items.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return None;
        }
        let hit = if parallel && chunk.len() >= PARALLEL_MIN {
            chunk.par_iter().find_map_first(&f)
        } else {
            chunk.iter().find_map(&f)
        };
        if hit.is_some() {
            return hit;
        }
    }
}
