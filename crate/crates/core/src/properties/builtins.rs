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

//! Named properties used by the CLI and the test suites.

use std::collections::{BTreeSet, VecDeque};

use super::Property;
use crate::error::{Error, Result};
use crate::hypercore::{enumerate_injections, Hypergraph, Morphism, Palette};
use crate::obstructions;

pub const NAMES: &[&str] = &[
    "total-order",
    "triangle-free",
    "bipartite",
    "complete-bipartite",
    "complete",
    "undirected",
    "orderable-leq3",
    "orderable-3u",
];

pub fn by_name(name: &str) -> Result<Property> {
    Ok(match name {
        "total-order" => total_order(),
        "triangle-free" => triangle_free(),
        "bipartite" => bipartite(),
        "complete-bipartite" => complete_bipartite(),
        "complete" => complete(),
        "undirected" => Property::predicate("undirected", Palette::digraph(), |g| g.is_undirected()),
        "orderable-leq3" => obstructions::orderable_leq3_property(),
        "orderable-3u" => obstructions::orderable_3u_property(),
        _ => {
            return Err(Error::Unknown {
                kind: "property",
                name: name.to_string(),
            })
        }
    })
}

/// `G_2(v, w) = 1` encodes `v < w` for a strict total order.
pub fn is_total_order(g: &Hypergraph) -> bool {
    let n = g.n();
    let mut out_degree = vec![0usize; n];
    for u in 0..n {
        for v in u + 1..n {
            match (g.get2(u, v), g.get2(v, u)) {
                (1, 0) => out_degree[u] += 1,
                (0, 1) => out_degree[v] += 1,
                _ => return false,
            }
        }
    }
    // a tournament is transitive iff its score sequence is 0..n
    let mut seen = vec![false; n];
    out_degree.into_iter().all(|d| !std::mem::replace(&mut seen[d], true))
}

pub fn total_order() -> Property {
    Property::predicate("total-order", Palette::digraph(), is_total_order)
}

fn two_vertex(edges: &[(usize, usize)]) -> Hypergraph {
    let mut g = Hypergraph::new(Palette::digraph(), 2);
    for &(u, v) in edges {
        g.set(&[u, v], 1).expect("valid");
    }
    g
}

/// No three vertices pairwise adjacent, where `u` and `v` are adjacent if
/// either direction is an edge. The family holds one digraph per
/// isomorphism class of such triangles (seven of them).
pub fn triangle_free() -> Property {
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let perms: Vec<Morphism> = enumerate_injections(3, 3)
        .map(|p| Morphism::new(p, 3).expect("permutation"))
        .collect();
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    // each pair is one of: forward, backward, both
    for code in 0..27u32 {
        let mut g = Hypergraph::new(Palette::digraph(), 3);
        let mut c = code;
        for &(u, v) in &pairs {
            let state = c % 3;
            c /= 3;
            if state != 1 {
                g.set(&[u, v], 1).expect("valid");
            }
            if state != 0 {
                g.set(&[v, u], 1).expect("valid");
            }
        }
        let canonical = perms
            .iter()
            .map(|p| g.pullback(p).expect("same size").encoding())
            .min()
            .expect("nonempty");
        if seen.insert(canonical) {
            members.push(g);
        }
    }
    Property::forbidden("triangle-free", Palette::digraph(), members).expect("digraph palette")
}

/// Every ordered pair is an edge.
pub fn complete() -> Property {
    Property::forbidden("complete", Palette::digraph(), vec![two_vertex(&[]), two_vertex(&[(0, 1)])])
        .expect("digraph palette")
}

/// The underlying undirected graph (edge if either direction is present)
/// is two-colorable.
pub fn is_bipartite(g: &Hypergraph) -> bool {
    let n = g.n();
    let adjacent = |u: usize, v: usize| g.get2(u, v) == 1 || g.get2(v, u) == 1;
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let s = side[u].expect("visited");
            for v in (0..n).filter(|&v| v != u && adjacent(u, v)) {
                match side[v] {
                    None => {
                        side[v] = Some(!s);
                        queue.push_back(v);
                    }
                    Some(t) if t == s => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub fn bipartite() -> Property {
    Property::predicate("bipartite", Palette::digraph(), is_bipartite)
}

/// Undirected, with an edge exactly between the two sides of some
/// partition (either side may be empty).
pub fn is_complete_bipartite(g: &Hypergraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let side: Vec<u8> = (0..n).map(|v| if v == 0 { 0 } else { g.get2(0, v) }).collect();
    for u in 0..n {
        for v in u + 1..n {
            let e = g.get2(u, v);
            if e != g.get2(v, u) || e != (side[u] != side[v]) as u8 {
                return false;
            }
        }
    }
    true
}

pub fn complete_bipartite() -> Property {
    Property::predicate("complete-bipartite", Palette::digraph(), is_complete_bipartite)
}
