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

//! Induced containment: is there an injection `phi` with
//! `pullback(G, phi) == F`?

use crate::hypercore::combinatorics::enumerate_injections;
use crate::hypercore::{Color, Hypergraph};

/// Checks that must hold once position `depth` of the pattern is placed:
/// every tuple of pattern positions `<= depth` that uses `depth`.
fn checks_by_depth(pattern: &Hypergraph) -> Vec<Vec<(Vec<usize>, Color)>> {
    let m = pattern.n();
    let k = pattern.order();
    let mut by_depth = vec![Vec::new(); m];
    for j in 1..=k.min(m) {
        for tuple in enumerate_injections(j, m) {
            let depth = *tuple.iter().max().expect("non-empty");
            let color = pattern.get(&tuple);
            by_depth[depth].push((tuple, color));
        }
    }
    by_depth
}

fn level1_histogram(g: &Hypergraph) -> Vec<usize> {
    let mut hist = vec![0; g.palette().size(1)];
    for v in 0..g.n() {
        hist[g.get(&[v]) as usize] += 1;
    }
    hist
}

/// First injection (in search order) embedding `pattern` as an induced
/// sub-hypergraph of `g`, as the image list.
pub fn find_induced(g: &Hypergraph, pattern: &Hypergraph) -> Option<Vec<usize>> {
    let m = pattern.n();
    if m > g.n() || g.color0() != pattern.color0() {
        return None;
    }
    if g.order() >= 1 {
        let have = level1_histogram(g);
        let need = level1_histogram(pattern);
        if need.iter().zip(&have).any(|(n, h)| n > h) {
            return None;
        }
    }
    let checks = checks_by_depth(pattern);
    let mut image = Vec::with_capacity(m);
    let mut used = vec![false; g.n()];
    let mut scratch = Vec::new();
    if extend(g, &checks, &mut image, &mut used, &mut scratch) {
        Some(image)
    } else {
        None
    }
}

fn extend(
    g: &Hypergraph,
    checks: &[Vec<(Vec<usize>, Color)>],
    image: &mut Vec<usize>,
    used: &mut [bool],
    scratch: &mut Vec<usize>,
) -> bool {
    let depth = image.len();
    if depth == checks.len() {
        return true;
    }
    for v in 0..g.n() {
        if used[v] {
            continue;
        }
        image.push(v);
        let ok = checks[depth].iter().all(|(tuple, color)| {
            scratch.clear();
            scratch.extend(tuple.iter().map(|&p| image[p]));
            g.get(scratch) == *color
        });
        if ok {
            used[v] = true;
            if extend(g, checks, image, used, scratch) {
                return true;
            }
            used[v] = false;
        }
        image.pop();
    }
    false
}

pub fn contains_induced(g: &Hypergraph, pattern: &Hypergraph) -> bool {
    find_induced(g, pattern).is_some()
}
