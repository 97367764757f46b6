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

use crate::error::{Error, Result};
use crate::hypercore::combinatorics::{for_each_subset, next_subset};
use crate::hypercore::Hypergraph;

/// Whether the restriction to `w` is invariant under every permutation of
/// `w`: one color on its vertices and one color on its pairs.
pub fn is_monochromatic(g: &Hypergraph, w: &[usize]) -> bool {
    let same_vertices = g.order() < 1 || w.iter().all(|&v| g.get(&[v]) == g.get(&[w[0]]));
    if !same_vertices || g.order() < 2 || w.len() < 2 {
        return same_vertices;
    }
    let first = g.get2(w[0], w[1]);
    let mut uniform = true;
    for_each_subset(w.len(), 2, |p| {
        uniform &= g.get2(w[p[0]], w[p[1]]) == first;
    });
    uniform
}

/// First `target`-subset, in subset-rank order, on which the undirected
/// hypergraph `g` (order at most 2) is monochromatic.
pub fn find_monochromatic(g: &Hypergraph, target: usize) -> Result<Option<Vec<usize>>> {
    if g.order() > 2 {
        return Err(Error::InvalidParameter(format!(
            "monochromatic search needs order <= 2, found {}",
            g.order()
        )));
    }
    if !g.is_undirected() {
        return Err(Error::InvalidParameter(
            "monochromatic search needs an undirected hypergraph".into(),
        ));
    }
    if target > g.n() {
        return Ok(None);
    }
    let mut w: Vec<usize> = (0..target).collect();
    loop {
        if is_monochromatic(g, &w) {
            return Ok(Some(w));
        }
        if !next_subset(&mut w, g.n()) {
            return Ok(None);
        }
    }
}
