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


//! Majority repair toward a complete bipartite graph.
//!
//! The training graph on `A` is fitted by the complete bipartite graph
//! `(A_1, A_2)` closest in symmetric difference. A vertex goes to `V_1`
//! when it is adjacent to more of `A_2` than of `A_1`, otherwise to `V_2`,
//! and an output edge joins exactly the pairs in different classes.
//! Adjacency means an edge in either direction.

use std::sync::Arc;

use rand::Rng;

use super::{LocalRule, Recolor, View};
use crate::error::{Error, Result};
use crate::hypercore::{Color, Hypergraph, Palette};
use crate::rng;

/// Training sizes up to this are fitted by exhaustive search.
pub const EXACT_FIT_LIMIT: usize = 20;
/// Cost evaluations allowed to the local search above the limit.
pub const FIT_BUDGET: usize = 100_000;

/// A bipartition of `A`: bit `i` of `side` set means `i` is in `A_2`.
/// Vertex 0 is always in `A_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MajorityFit {
    pub side: u64,
    /// Pairs where the training graph and the fitted graph disagree.
    pub cost: u32,
    pub exact: bool,
    pub evaluations: usize,
}

pub struct MajorityRule {
    palette: Arc<Palette>,
    a_size: usize,
}

pub fn bipartite_majority(a_size: usize) -> Result<MajorityRule> {
    if a_size > 64 {
        return Err(Error::InvalidParameter(format!(
            "majority training size {a_size} above 64"
        )));
    }
    Ok(MajorityRule {
        palette: Arc::new(Palette::digraph()),
        a_size,
    })
}

struct Fitter {
    adj: Vec<u64>,
    all: u64,
    evaluations: usize,
}

impl Fitter {
    fn cost(&mut self, side: u64) -> u32 {
        self.evaluations += 1;
        let mut twice = 0;
        for (u, &adj) in self.adj.iter().enumerate() {
            let cross = if side >> u & 1 == 1 { !side } else { side };
            twice += ((adj ^ cross) & self.all & !(1u64 << u)).count_ones();
        }
        twice / 2
    }

    fn normalize(&self, side: u64) -> u64 {
        let side = side & self.all;
        if side & 1 == 1 {
            !side & self.all
        } else {
            side
        }
    }
}

/// Lexicographic comparison of indicator vectors, vertex 0 first.
fn better(cost: u32, side: u64, best: &MajorityFit) -> bool {
    cost < best.cost || (cost == best.cost && side.reverse_bits() < best.side.reverse_bits())
}

impl MajorityRule {
    pub fn fit(&self, training: &Hypergraph) -> MajorityFit {
        let a = training.n();
        let mut adj = vec![0u64; a];
        for (u, row) in adj.iter_mut().enumerate() {
            for v in 0..a {
                if u != v && (training.get2(u, v) == 1 || training.get2(v, u) == 1) {
                    *row |= 1 << v;
                }
            }
        }
        let all = if a == 64 { u64::MAX } else { (1u64 << a) - 1 };
        let mut f = Fitter { adj, all, evaluations: 0 };
        let mut best = MajorityFit {
            side: 0,
            cost: f.cost(0),
            exact: a <= EXACT_FIT_LIMIT,
            evaluations: 0,
        };
        if a <= 1 {
            best.evaluations = f.evaluations;
            return best;
        }
        if a <= EXACT_FIT_LIMIT {
            for half in 0..1u64 << (a - 1) {
                let side = half << 1;
                let c = f.cost(side);
                if better(c, side, &best) {
                    best.side = side;
                    best.cost = c;
                }
            }
        } else {
            let mut starts: Vec<u64> = f.adj.iter().map(|&n| f.normalize(n)).collect();
            let mut r = rng::rng(0x6d61_6a6f);
            while starts.len() < 4 * a {
                let s = r.gen::<u64>();
                starts.push(f.normalize(s));
            }
            'outer: for start in starts {
                let mut side = start;
                let mut c = f.cost(side);
                loop {
                    // best single-vertex move, vertex 0 stays in A_1
                    let mut step: Option<(u32, u64)> = None;
                    for u in 1..a {
                        if f.evaluations >= FIT_BUDGET {
                            break 'outer;
                        }
                        let t = side ^ (1 << u);
                        let ct = f.cost(t);
                        if ct < c && step.is_none_or(|(cs, ss)| ct < cs || (ct == cs && t.reverse_bits() < ss.reverse_bits())) {
                            step = Some((ct, t));
                        }
                        if better(ct, t, &best) {
                            best.side = t;
                            best.cost = ct;
                        }
                    }
                    match step {
                        Some((ct, t)) => {
                            side = t;
                            c = ct;
                        }
                        None => break,
                    }
                }
                if better(c, side, &best) {
                    best.side = side;
                    best.cost = c;
                }
            }
        }
        best.evaluations = f.evaluations;
        best
    }
}

struct Prepared {
    side: u64,
}

impl Recolor for Prepared {
    fn recolor(&self, v: &View<'_>) -> Color {
        if v.j() != 2 {
            return 0;
        }
        let a = v.a_size();
        let class = |x: usize| {
            let (mut c1, mut c2) = (0, 0);
            for i in 0..a {
                if v.get2(i, x) == 1 || v.get2(x, i) == 1 {
                    if self.side >> i & 1 == 1 {
                        c2 += 1;
                    } else {
                        c1 += 1;
                    }
                }
            }
            // true for V_1
            c2 > c1
        };
        (class(a) != class(a + 1)) as Color
    }
}

impl LocalRule for MajorityRule {
    fn name(&self) -> &str {
        "bipartite-majority"
    }

    fn palette(&self) -> &Arc<Palette> {
        &self.palette
    }

    fn a_size(&self) -> usize {
        self.a_size
    }

    fn prepare<'s>(&'s self, training: &Hypergraph) -> Box<dyn Recolor + 's> {
        Box::new(Prepared {
            side: self.fit(training).side,
        })
    }
}
