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

//! Meet-closure (weak monotonicity) search.

use std::sync::Arc;

use rand::Rng;

use super::Property;
use crate::error::{Error, Result};
use crate::hypercore::combinatorics::{binom, factorial};
use crate::hypercore::{Color, Hypergraph, Palette};
use crate::rng;

/// Number of distinct hypergraphs on `n` vertices, `None` past `u128`.
pub fn hypergraph_count(palette: &Palette, n: usize) -> Option<u128> {
    let mut count: u128 = 1;
    for j in 0..=palette.order() {
        let slots = (binom(n, j) * factorial(j)) as u32;
        let size = palette.size(j) as u128;
        count = count.checked_mul(size.checked_pow(slots)?)?;
    }
    Some(count)
}

fn radices(palette: &Palette, n: usize) -> Vec<u16> {
    (0..=palette.order())
        .flat_map(|j| {
            let slots = binom(n, j) * factorial(j);
            std::iter::repeat_n(palette.size(j) as u16, slots)
        })
        .collect()
}

/// Every hypergraph on `n` vertices, refusing when there are more than
/// `ceiling` of them.
pub fn enumerate_hypergraphs(
    palette: Arc<Palette>,
    n: usize,
    ceiling: u128,
) -> Result<impl Iterator<Item = Hypergraph>> {
    let count = hypergraph_count(&palette, n).unwrap_or(u128::MAX);
    if count > ceiling {
        return Err(Error::TooLarge { count, ceiling });
    }
    let radix = radices(&palette, n);
    let mut digits: Option<Vec<Color>> = Some(vec![0; radix.len()]);
    Ok(std::iter::from_fn(move || {
        let current = digits.take()?;
        let g = Hypergraph::from_encoding(palette.clone(), n, &current).expect("digits in range");
        let mut next = current;
        let mut carried = true;
        for (d, &r) in next.iter_mut().zip(&radix) {
            if (*d as u16) + 1 < r {
                *d += 1;
                carried = false;
                break;
            }
            *d = 0;
        }
        if !carried {
            digits = Some(next);
        }
        Some(g)
    }))
}

/// Uniformly random hypergraph on `n` vertices.
pub fn random_hypergraph<R: Rng>(palette: &Arc<Palette>, n: usize, r: &mut R) -> Hypergraph {
    let code: Vec<Color> = radices(palette, n)
        .into_iter()
        .map(|radix| r.gen_range(0..radix) as Color)
        .collect();
    Hypergraph::from_encoding(palette.clone(), n, &code).expect("digits in range")
}

/// Limits for [`check_meet_closed`].
#[derive(Debug, Clone, Copy)]
pub struct MeetSearch {
    /// Largest hypergraph count enumerated exhaustively per vertex count.
    pub enumeration_ceiling: u128,
    /// Largest number of obeying pairs checked exhaustively.
    pub pair_ceiling: usize,
    /// Random draws per vertex count when a limit is exceeded.
    pub samples: usize,
    pub seed: u64,
}

impl Default for MeetSearch {
    fn default() -> Self {
        MeetSearch {
            enumeration_ceiling: 1 << 22,
            pair_ceiling: 1 << 24,
            samples: 100_000,
            seed: 0,
        }
    }
}

/// Looks for `G, G'` obeying `property` on at most `bound` vertices whose
/// meet violates it.
pub fn check_meet_closed(
    property: &Property,
    bound: usize,
    search: &MeetSearch,
) -> Result<Option<(Hypergraph, Hypergraph)>> {
    let palette = property.palette_arc().clone();
    palette.require_ordered()?;
    let mut r = rng::rng(search.seed);
    for n in 0..=bound {
        let obeying: Vec<Hypergraph> = match enumerate_hypergraphs(palette.clone(), n, search.enumeration_ceiling) {
            Ok(all) => all.filter(|g| property.obeys_unchecked(g)).collect(),
            Err(Error::TooLarge { .. }) => (0..search.samples)
                .map(|_| random_hypergraph(&palette, n, &mut r))
                .filter(|g| property.obeys_unchecked(g))
                .collect(),
            Err(e) => return Err(e),
        };
        let violates = |a: &Hypergraph, b: &Hypergraph| {
            !property.obeys_unchecked(&a.meet(b).expect("shared ordered palette"))
        };
        let m = obeying.len();
        if m * (m + 1) / 2 <= search.pair_ceiling {
            for i in 0..m {
                for j in i + 1..m {
                    if violates(&obeying[i], &obeying[j]) {
                        return Ok(Some((obeying[i].clone(), obeying[j].clone())));
                    }
                }
            }
        } else {
            for _ in 0..search.samples {
                let a = &obeying[r.gen_range(0..m)];
                let b = &obeying[r.gen_range(0..m)];
                if violates(a, b) {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
    }
    Ok(None)
}
