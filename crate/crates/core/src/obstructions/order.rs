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


//! Corrupted total orders.

use std::collections::BTreeMap;

use super::{check_anchors, CorruptionSpec, ObstructionKind, ObstructionReport};
use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Morphism, Palette};
use crate::properties::builtins::is_total_order;
use crate::rng;
use crate::rules::{EdgeColors, LazyModification, LocalRule};

/// The standard order on `0..M` (`G0(v, w) = 1` iff `v < w`) and a copy
/// with every ordered pair flipped independently with probability sigma.
pub fn gen_corrupted_order(spec: &CorruptionSpec) -> (Hypergraph, Hypergraph) {
    let mut g0 = Hypergraph::new(Palette::digraph(), spec.m);
    {
        let (slots, data) = g0.level_data_mut(2);
        debug_assert_eq!(slots, 2);
        // ascending ordering first in every block
        for block in data.chunks_mut(2) {
            block[0] = 1;
        }
    }
    let mut g = g0.clone();
    {
        let (_, data) = g.level_data_mut(2);
        let mut r = rng::rng(spec.seed);
        let len = data.len();
        rng::for_each_bernoulli(&mut r, len, spec.sigma, |i| data[i] ^= 1);
    }
    (g0, g)
}

/// Distinct non-anchor `v1 < v2` related alike to every anchor in both
/// directions and with `G(v1, v2) = G(v2, v1)`.
///
/// Vertices are bucketed by the sets of anchors they point to and are
/// pointed from; buckets are scanned largest first.
pub fn find_indistinguishable_pair(g: &Hypergraph, anchors: &[usize]) -> Result<Option<(usize, usize)>> {
    check_anchors(g.n(), anchors)?;
    if g.order() < 2 {
        return Err(Error::InvalidParameter("pair search needs order 2".into()));
    }
    let mut is_anchor = vec![false; g.n()];
    for &a in anchors {
        is_anchor[a] = true;
    }
    let mut buckets: BTreeMap<(Vec<u8>, Vec<u8>, u8), Vec<usize>> = BTreeMap::new();
    for v in (0..g.n()).filter(|&v| !is_anchor[v]) {
        let out: Vec<u8> = anchors.iter().map(|&a| g.get2(v, a)).collect();
        let inc: Vec<u8> = anchors.iter().map(|&a| g.get2(a, v)).collect();
        let c1 = g.get(&[v]);
        buckets.entry((out, inc, c1)).or_default().push(v);
    }
    let mut order: Vec<&Vec<usize>> = buckets.values().collect();
    order.sort_by_key(|b| std::cmp::Reverse(b.len()));
    for bucket in order {
        for (i, &v1) in bucket.iter().enumerate() {
            for &v2 in &bucket[i + 1..] {
                if g.get2(v1, v2) == g.get2(v2, v1) {
                    return Ok(Some((v1, v2)));
                }
            }
        }
    }
    Ok(None)
}

/// Checks the pair clauses directly, without buckets.
fn validate_pair(g: &Hypergraph, anchors: &[usize], v1: usize, v2: usize) -> Vec<String> {
    let mut ok = Vec::new();
    if v1 != v2 && !anchors.contains(&v1) && !anchors.contains(&v2) {
        ok.push("distinct".to_string());
    }
    if anchors.iter().all(|&a| g.get2(v1, a) == g.get2(v2, a)) {
        ok.push("to-anchors".to_string());
    }
    if anchors.iter().all(|&a| g.get2(a, v1) == g.get2(a, v2)) {
        ok.push("from-anchors".to_string());
    }
    if g.get(&[v1]) == g.get(&[v2]) {
        ok.push("vertex-colors".to_string());
    }
    if g.get2(v1, v2) == g.get2(v2, v1) {
        ok.push("pair-symmetric".to_string());
    }
    ok
}

/// Finds an indistinguishable pair outside `phi(A)` and certifies that
/// `T_phi(G)` colors both orderings of it alike, so it is not a total
/// order. Only the two entries of the pair are evaluated.
pub fn defeat_rule_order(g: &Hypergraph, rule: &dyn LocalRule, phi: &Morphism) -> Result<Option<ObstructionReport>> {
    if phi.target() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: phi.target(),
        });
    }
    let anchors = phi.image();
    let Some((v1, v2)) = find_indistinguishable_pair(g, anchors)? else {
        return Ok(None);
    };
    let lazy = LazyModification::new(rule, g, anchors)?;
    let i1 = lazy.output_index(v1).expect("not an anchor");
    let i2 = lazy.output_index(v2).expect("not an anchor");
    let forward = lazy.color(&[i1, i2]);
    let backward = lazy.color(&[i2, i1]);
    // locality forces this; a failure means the rule saw more than its view
    assert_eq!(forward, backward, "rule `{}` broke locality", rule.name());
    let mut clauses = validate_pair(g, anchors, v1, v2);
    clauses.push(format!("output-symmetric={forward}"));
    // a total order has exactly one direction per pair
    let mut pair = Hypergraph::new(Palette::digraph(), 2);
    pair.set(&[0, 1], forward)?;
    pair.set(&[1, 0], backward)?;
    if !is_total_order(&pair) {
        clauses.push("output-not-total".to_string());
    }
    Ok(Some(ObstructionReport {
        kind: ObstructionKind::Pair,
        anchors: anchors.to_vec(),
        witness: vec![v1, v2],
        clauses,
        probes: 1,
    }))
}
