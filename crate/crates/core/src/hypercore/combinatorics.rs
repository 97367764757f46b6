// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Counting and ranking helpers: binomials, the combinatorial number system
//! for subsets, Lehmer ranks for orderings, and injection enumeration.

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
#[inline]
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    match k {
        0 => 1,
        1 => n,
        2 => n * (n - 1) / 2,
        3 => n * (n - 1) * (n - 2) / 6,
        _ => {
            let k = k.min(n - k);
            let mut acc: u128 = 1;
            for i in 0..k {
                acc = acc * (n - i) as u128 / (i + 1) as u128;
            }
            acc as usize
        }
    }
}

#[inline]
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Falling factorial `n (n-1) ... (n-j+1)`; zero when `j > n`.
pub fn falling_factorial(n: usize, j: usize) -> usize {
    if j > n {
        return 0;
    }
    (n - j + 1..=n).product()
}

/// Rank of a strictly increasing subset in colexicographic order.
#[inline]
pub fn subset_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &c)| binom(c, i + 1))
        .sum()
}

/// Inverse of [`subset_rank`] for subsets of size `j`.
pub fn subset_unrank(mut rank: usize, j: usize) -> Vec<usize> {
    let mut out = vec![0; j];
    for i in (0..j).rev() {
        // largest c with C(c, i+1) <= rank
        let mut c = i;
        while binom(c + 1, i + 1) <= rank {
            c += 1;
        }
        out[i] = c;
        rank -= binom(c, i + 1);
    }
    out
}

/// Advance a strictly increasing `j`-subset of `0..n` to its colex successor.
/// Returns `false` when `subset` was the last one.
pub fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let j = subset.len();
    for i in 0..j {
        let limit = if i + 1 < j { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (t, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = t;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every `j`-subset of `0..n` in colex (rank) order.
pub fn for_each_subset(n: usize, j: usize, mut f: impl FnMut(&[usize])) {
    if j > n {
        return;
    }
    let mut s: Vec<usize> = (0..j).collect();
    loop {
        f(&s);
        if !next_subset(&mut s, n) {
            break;
        }
    }
}

/// Lehmer rank of the ordering of a tuple of distinct values, relative to
/// its sorted arrangement. The identity ordering has rank 0.
#[inline]
pub fn perm_rank(tuple: &[usize]) -> usize {
    match tuple.len() {
        0 | 1 => 0,
        2 => (tuple[0] > tuple[1]) as usize,
        j => {
            let mut rank = 0;
            for i in 0..j {
                let smaller = tuple[i + 1..].iter().filter(|&&x| x < tuple[i]).count();
                rank = rank * (j - i) + smaller;
            }
            rank
        }
    }
}

/// Positions pattern for Lehmer rank `rank` on `j` items: `out[i]` is the
/// index into the sorted subset of the i-th tuple entry.
pub fn perm_unrank(mut rank: usize, j: usize) -> Vec<usize> {
    let mut digits = vec![0; j];
    for i in (0..j).rev() {
        let base = j - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..j).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Every ordered `j`-tuple of distinct elements of `0..n`, lexicographically.
#[derive(Debug, Clone)]
pub struct Injections {
    n: usize,
    current: Option<Vec<usize>>,
    used: Vec<bool>,
    started: bool,
}

pub fn enumerate_injections(j: usize, n: usize) -> Injections {
    let current = if j <= n { Some((0..j).collect()) } else { None };
    let mut used = vec![false; n];
    if let Some(c) = &current {
        for &v in c {
            used[v] = true;
        }
    }
    Injections {
        n,
        current,
        used,
        started: false,
    }
}

impl Injections {
    fn advance(&mut self) -> bool {
        let n = self.n;
        let Some(cur) = self.current.as_mut() else {
            return false;
        };
        let j = cur.len();
        let mut pos = j;
        while pos > 0 {
            pos -= 1;
            self.used[cur[pos]] = false;
            let next = (cur[pos] + 1..n).find(|&v| !self.used[v]);
            if let Some(v) = next {
                cur[pos] = v;
                self.used[v] = true;
                // refill the tail with the smallest unused values
                let mut fill = 0;
                for slot in cur.iter_mut().take(j).skip(pos + 1) {
                    while self.used[fill] {
                        fill += 1;
                    }
                    *slot = fill;
                    self.used[fill] = true;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Injections {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return self.current.clone();
        }
        if self.advance() {
            self.current.clone()
        } else {
            self.current = None;
            None
        }
    }
}
