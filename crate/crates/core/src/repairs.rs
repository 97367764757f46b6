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


//! Repairs that are not local rules: the bucketed total-order repair and a
//! wrapper that runs the bipartite majority rule on a random training set.

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Morphism, Palette};
use crate::properties::distance;
use crate::rng;
use crate::rules::{apply_rule, bipartite_majority};

/// Bucket sizes and leftovers of an order repair.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderRepairReport {
    /// Training vertices in increasing order.
    pub training: Vec<usize>,
    /// `|V_i|` for `0 <= i <= N'`.
    pub bucket_sizes: Vec<usize>,
    pub leftover: usize,
    pub edit_fraction: f64,
}

impl OrderRepairReport {
    /// Leftovers over the non-training vertices.
    pub fn leftover_fraction(&self, n: usize) -> f64 {
        let free = n - self.training.len();
        if free == 0 {
            0.0
        } else {
            self.leftover as f64 / free as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderRepair {
    /// `order[k]` is the vertex of rank `k`; `graph` the total order it induces.
    Repaired {
        order: Vec<usize>,
        graph: Hypergraph,
        report: OrderRepairReport,
    },
    /// The training sample is not totally ordered; retry with another seed.
    UnorderedTraining { training: Vec<usize> },
}

/// Sorts `sample` by `G` if it is a strict total order there.
fn training_order(g: &Hypergraph, sample: &[usize]) -> Option<Vec<usize>> {
    let k = sample.len();
    let mut below = vec![0usize; k];
    for i in 0..k {
        for j in i + 1..k {
            match (g.get2(sample[i], sample[j]), g.get2(sample[j], sample[i])) {
                (1, 0) => below[j] += 1,
                (0, 1) => below[i] += 1,
                _ => return None,
            }
        }
    }
    let mut sorted = vec![usize::MAX; k];
    for (i, &b) in below.iter().enumerate() {
        if sorted[b] != usize::MAX {
            return None;
        }
        sorted[b] = sample[i];
    }
    Some(sorted)
}

/// The total order on `0..n` listing `order` from smallest up, as a digraph
/// with `(u, v)` an edge iff `u` comes first.
pub fn order_graph(order: &[usize]) -> Hypergraph {
    let n = order.len();
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut g = Hypergraph::new(Palette::digraph(), n);
    for u in 0..n {
        for v in 0..n {
            if pos[u] < pos[v] {
                g.set(&[u, v], 1).expect("in range");
            }
        }
    }
    g
}

/// Non-local repair of a corrupted total order, reading `u < v` as the
/// edge `(u, v)`.
///
/// A random training set of size `n_train` is sorted by `G`; each other
/// vertex lands in bucket `i` when it sits above exactly the `i` smallest
/// training vertices and below the rest. The output lists bucket 0, the
/// smallest training vertex, bucket 1, and so on, each bucket in index
/// order, then every vertex in no bucket in index order.
pub fn repair_total_order(g: &Hypergraph, n_train: usize, seed: u64) -> Result<OrderRepair> {
    let n = g.n();
    if n_train > n {
        return Err(Error::InvalidParameter(format!("training size {n_train} exceeds {n} vertices")));
    }
    if !g.palette().compatible(&Palette::digraph()) {
        return Err(Error::PaletteMismatch);
    }
    let sample = rng::sample_subset(&mut rng::rng(seed), n, n_train);
    let Some(training) = training_order(g, &sample) else {
        let mut training = sample;
        training.sort_unstable();
        return Ok(OrderRepair::UnorderedTraining { training });
    };
    let mut is_training = vec![false; n];
    for &t in &training {
        is_training[t] = true;
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n_train + 1];
    let mut leftovers = Vec::new();
    for v in (0..n).filter(|&v| !is_training[v]) {
        // above the first i training vertices, below the others
        let i = training.iter().take_while(|&&t| g.get2(t, v) == 1 && g.get2(v, t) == 0).count();
        if training[i..].iter().all(|&t| g.get2(v, t) == 1 && g.get2(t, v) == 0) {
            buckets[i].push(v);
        } else {
            leftovers.push(v);
        }
    }
    let mut order = Vec::with_capacity(n);
    for (i, bucket) in buckets.iter().enumerate() {
        order.extend_from_slice(bucket);
        if i < n_train {
            order.push(training[i]);
        }
    }
    order.extend_from_slice(&leftovers);
    let graph = order_graph(&order);
    let mut disagree = 0u64;
    for u in 0..n {
        for v in 0..n {
            if u != v && graph.get2(u, v) != g.get2(u, v) {
                disagree += 1;
            }
        }
    }
    let pairs = (n * n.saturating_sub(1)) as f64;
    let report = OrderRepairReport {
        training,
        bucket_sizes: buckets.iter().map(Vec::len).collect(),
        leftover: leftovers.len(),
        edit_fraction: if pairs > 0.0 { disagree as f64 / pairs } else { 0.0 },
    };
    Ok(OrderRepair::Repaired { order, graph, report })
}

/// Repaired graph on the non-training vertices (ascending labels) and its
/// distance from `G` restricted there.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteRepair {
    pub training: Vec<usize>,
    pub graph: Hypergraph,
    pub edit_fraction: f64,
}

/// Runs the majority rule on a uniformly drawn training set of `a_size`.
pub fn repair_bipartite(g: &Hypergraph, a_size: usize, seed: u64) -> Result<BipartiteRepair> {
    let n = g.n();
    if a_size > n {
        return Err(Error::InvalidParameter(format!("training size {a_size} exceeds {n} vertices")));
    }
    let rule = bipartite_majority(a_size)?;
    let training = rng::sample_subset(&mut rng::rng(seed), n, a_size);
    let phi = Morphism::new(training.clone(), n)?;
    let graph = apply_rule(&rule, g, &phi)?;
    let rest: Vec<usize> = (0..n).filter(|v| !training.contains(v)).collect();
    let edit_fraction = distance(&graph, &g.restrict(&rest)?)?;
    Ok(BipartiteRepair { training, graph, edit_fraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::{gen_corrupted_order, CorruptionSpec};
    use crate::properties::builtins::{is_complete_bipartite, is_total_order};

    fn repaired(r: OrderRepair) -> (Vec<usize>, Hypergraph, OrderRepairReport) {
        match r {
            OrderRepair::Repaired { order, graph, report } => (order, graph, report),
            OrderRepair::UnorderedTraining { .. } => panic!("training not ordered"),
        }
    }

    #[test]
    fn full_training_recovers_the_order() {
        let (g0, _) = gen_corrupted_order(&CorruptionSpec::new(100, 0.0, 0).unwrap());
        for seed in 0..3 {
            let (order, graph, report) = repaired(repair_total_order(&g0, 99, seed).unwrap());
            assert_eq!(order, (0..100).collect::<Vec<_>>());
            assert_eq!(graph, g0);
            assert_eq!(report.edit_fraction, 0.0);
            assert_eq!(report.leftover, 0);
        }
    }

    #[test]
    fn uncorrupted_buckets_are_intervals() {
        let (g0, _) = gen_corrupted_order(&CorruptionSpec::new(300, 0.0, 0).unwrap());
        let (order, graph, report) = repaired(repair_total_order(&g0, 10, 4).unwrap());
        // buckets are index ranges, so the repair is exact
        assert_eq!(order, (0..300).collect::<Vec<_>>());
        assert!(is_total_order(&graph));
        assert_eq!(report.bucket_sizes.iter().sum::<usize>(), 290);
    }

    #[test]
    fn corrupted_training_is_retryable() {
        let (_, g) = gen_corrupted_order(&CorruptionSpec::new(200, 0.3, 1).unwrap());
        let r = repair_total_order(&g, 40, 0).unwrap();
        assert!(matches!(r, OrderRepair::UnorderedTraining { ref training } if training.len() == 40));
        assert!(repair_total_order(&g, 201, 0).is_err());
    }

    #[test]
    fn mild_corruption_gives_an_exact_order() {
        let (_, g) = gen_corrupted_order(&CorruptionSpec::new(400, 0.0005, 2).unwrap());
        let mut done = 0;
        for seed in 0..20 {
            if let OrderRepair::Repaired { graph, report, .. } = repair_total_order(&g, 20, seed).unwrap() {
                assert!(is_total_order(&graph));
                // a leftover at the end costs about 2/n of the ordered pairs
                let lf = report.leftover_fraction(400);
                assert!(lf < 0.05);
                assert!(report.edit_fraction <= 2.0 * lf + 0.01);
                done += 1;
            }
        }
        assert!(done > 10);
    }

    #[test]
    fn order_graph_round_trip() {
        let g = order_graph(&[2, 0, 1]);
        assert!(is_total_order(&g));
        assert_eq!(g.get2(2, 0), 1);
        assert_eq!(g.get2(1, 0), 0);
    }

    fn complete_bipartite_graph(n: usize, side: impl Fn(usize) -> bool) -> Hypergraph {
        let mut g = Hypergraph::new_undirected(Palette::uniform(2, 2).unwrap(), n);
        for u in 0..n {
            for v in u + 1..n {
                if side(u) != side(v) {
                    g.set_subset(&[u, v], 1).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn exact_bipartite_input_is_kept() {
        let g = complete_bipartite_graph(60, |v| v % 3 == 0);
        let r = repair_bipartite(&g, 12, 5).unwrap();
        assert_eq!(r.edit_fraction, 0.0);
        assert!(is_complete_bipartite(&r.graph));
        assert_eq!(r.graph.n(), 48);
    }

    #[test]
    fn empty_graph_stays_empty() {
        let g = Hypergraph::new_undirected(Palette::uniform(2, 2).unwrap(), 30);
        let r = repair_bipartite(&g, 8, 0).unwrap();
        assert_eq!(r.edit_fraction, 0.0);
        assert!(r.graph.level_data(2).1.iter().all(|&c| c == 0));
        assert!(repair_bipartite(&g, 31, 0).is_err());
    }
}
