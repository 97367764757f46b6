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

use rayon::prelude::*;

use super::Property;
use crate::error::{Error, Result};
use crate::hypercore::combinatorics::{binom, factorial, for_each_subset, next_subset, subset_rank};
use crate::hypercore::Hypergraph;
use crate::rng;

/// Parameters of a one-sided tester run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TesterParams {
    /// Size of each sampled vertex subset.
    pub sample_size: usize,
    pub delta: f64,
    pub epsilon: f64,
    pub sample_count: usize,
    pub seed: u64,
}

impl TesterParams {
    pub fn new(sample_size: usize, delta: f64, epsilon: f64, sample_count: usize, seed: u64) -> Result<Self> {
        if sample_size == 0 || sample_count == 0 {
            return Err(Error::InvalidParameter(
                "sample size and sample count must be positive".into(),
            ));
        }
        for (name, v) in [("delta", delta), ("epsilon", epsilon)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(Self {
            sample_size,
            delta,
            epsilon,
            sample_count,
            seed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Satisfaction {
    pub fraction: f64,
    /// Standard error of the estimate; zero for exhaustive counts.
    pub std_error: f64,
    pub subsets_checked: usize,
}

const SHARD: usize = 1024;

/// Fraction of `size`-subsets `W` with `restrict(g, W)` obeying `property`.
///
/// Monte Carlo mode draws subsets i.i.d. by partial Fisher-Yates in shards
/// of 1024, shard `s` using `rng::stream(seed, s)`. When `samples` reaches
/// `C(n, size)` every subset is visited once instead.
pub fn local_satisfaction(property: &Property, g: &Hypergraph, size: usize, mode: Mode) -> Result<Satisfaction> {
    property.check_palette(g)?;
    let n = g.n();
    if size > n {
        return Err(Error::InvalidParameter(format!(
            "sample size {size} exceeds vertex count {n}"
        )));
    }
    let total = binom(n, size);
    let samples = match mode {
        Mode::MonteCarlo { samples: 0, .. } => {
            return Err(Error::InvalidParameter("sample count must be positive".into()))
        }
        Mode::MonteCarlo { samples, seed } if samples < total => Some((samples, seed)),
        _ => None,
    };
    let obeys_on = |w: &[usize]| property.obeys_unchecked(&g.restrict(w).expect("in range"));
    match samples {
        None => {
            let mut hits = 0usize;
            for_each_subset(n, size, |w| hits += obeys_on(w) as usize);
            Ok(Satisfaction {
                fraction: hits as f64 / total as f64,
                std_error: 0.0,
                subsets_checked: total,
            })
        }
        Some((samples, seed)) => {
            let shards = samples.div_ceil(SHARD);
            let hits: usize = (0..shards)
                .into_par_iter()
                .map(|s| {
                    let mut r = rng::stream(seed, s as u64);
                    let count = SHARD.min(samples - s * SHARD);
                    (0..count)
                        .filter(|_| obeys_on(&rng::sample_subset(&mut r, n, size)))
                        .count()
                })
                .sum();
            let p = hits as f64 / samples as f64;
            Ok(Satisfaction {
                fraction: p,
                std_error: (p * (1.0 - p) / samples as f64).sqrt(),
                subsets_checked: samples,
            })
        }
    }
}

/// One-sided test decision: local satisfaction at least `1 - delta`.
pub fn locally_almost_obeys(property: &Property, g: &Hypergraph, params: &TesterParams) -> Result<bool> {
    let s = local_satisfaction(
        property,
        g,
        params.sample_size,
        Mode::MonteCarlo {
            samples: params.sample_count,
            seed: params.seed,
        },
    )?;
    Ok(s.fraction >= 1.0 - params.delta)
}

/// Fraction of `k`-subsets (`k` the palette order) on which the two
/// hypergraphs restrict differently.
pub fn distance(a: &Hypergraph, b: &Hypergraph) -> Result<f64> {
    if !a.palette().compatible(b.palette()) {
        return Err(Error::PaletteMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    let n = a.n();
    let k = a.order();
    let total = binom(n, k);
    if a.color0() != b.color0() {
        return Ok(1.0);
    }
    if total == 0 {
        return Ok(if a == b { 0.0 } else { 1.0 });
    }
    // per level, which subsets carry any differing ordering
    let mut differs: Vec<Vec<bool>> = vec![Vec::new()];
    for j in 1..=k {
        let (sa, da) = a.level_data(j);
        let (sb, db) = b.level_data(j);
        let full = factorial(j);
        let mut d = vec![false; binom(n, j)];
        for (rank, slot) in d.iter_mut().enumerate() {
            *slot = (0..full).any(|p| {
                let ia = if sa == 1 { rank } else { rank * sa + p };
                let ib = if sb == 1 { rank } else { rank * sb + p };
                da[ia] != db[ib]
            });
        }
        differs.push(d);
    }
    // position patterns of every sub-subset of a k-set, grouped by size
    let patterns: Vec<Vec<Vec<usize>>> = (0..=k)
        .map(|j| {
            let mut out = Vec::new();
            for_each_subset(k, j, |s| out.push(s.to_vec()));
            out
        })
        .collect();
    let mut w: Vec<usize> = (0..k).collect();
    let mut sub = Vec::with_capacity(k);
    let mut count = 0usize;
    loop {
        let hit = (1..=k).any(|j| {
            patterns[j].iter().any(|pat| {
                sub.clear();
                sub.extend(pat.iter().map(|&p| w[p]));
                differs[j][subset_rank(&sub)]
            })
        });
        count += hit as usize;
        if !next_subset(&mut w, n) {
            break;
        }
    }
    Ok(count as f64 / total as f64)
}
