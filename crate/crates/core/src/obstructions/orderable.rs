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


//! Consistent orderability: every derived relation `b >_r b'` must be
//! realized by one total order of the vertices.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::leq3::{leq3_constraints, leq3_palette};
use super::uniform3::{derived_relations, uniform3_palette};
use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::properties::Property;

/// `greater >_via smaller`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderConstraint {
    pub greater: usize,
    pub smaller: usize,
    pub via: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orderability {
    /// Vertices in increasing order.
    Orderable(Vec<usize>),
    /// Two constraints asking for opposite orders of one pair.
    Opposed(OrderConstraint, OrderConstraint),
    /// `cycle[0] < cycle[1] < ... < cycle[0]` is demanded.
    Cycle(Vec<usize>),
}

impl Orderability {
    pub fn is_orderable(&self) -> bool {
        matches!(self, Orderability::Orderable(_))
    }
}

/// All derived constraints, for either supported palette.
pub fn order_constraints(g: &Hypergraph) -> Result<Vec<OrderConstraint>> {
    if g.palette().compatible(&leq3_palette()) {
        Ok(leq3_constraints(g))
    } else if g.palette().compatible(&uniform3_palette()) {
        Ok(derived_relations(g).constraints(g))
    } else {
        Err(Error::InvalidParameter(format!(
            "no orderability notion for palette {:?}",
            g.palette().sizes()
        )))
    }
}

/// Builds the constraint digraph and sorts it topologically, smallest
/// available vertex first.
pub fn is_consistently_orderable(g: &Hypergraph) -> Result<Orderability> {
    Ok(solve(g.n(), &order_constraints(g)?))
}

pub(crate) fn solve(n: usize, constraints: &[OrderConstraint]) -> Orderability {
    // first witness for each arc smaller -> greater
    let mut arcs: BTreeMap<(usize, usize), OrderConstraint> = BTreeMap::new();
    for &c in constraints {
        arcs.entry((c.smaller, c.greater)).or_insert(c);
    }
    for (&(s, g), &c) in &arcs {
        if let Some(&d) = arcs.get(&(g, s)) {
            return Orderability::Opposed(c, d);
        }
    }
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(s, g) in arcs.keys() {
        succ[s].push(g);
        pred[g].push(s);
        indegree[g] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        return Orderability::Orderable(order);
    }
    // every leftover vertex has a leftover predecessor; walk back until a repeat
    let start = (0..n).find(|&v| indegree[v] > 0).expect("leftover vertex");
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = vec![start];
    seen_at[start] = 0;
    let mut v = start;
    loop {
        let p = *pred[v].iter().find(|&&p| indegree[p] > 0).expect("leftover predecessor");
        if seen_at[p] != usize::MAX {
            let mut cycle = walk[seen_at[p]..].to_vec();
            // walked backwards, so reverse to list increasing demands
            cycle.reverse();
            return Orderability::Cycle(cycle);
        }
        seen_at[p] = walk.len();
        walk.push(p);
        v = p;
    }
}

/// Tries every total order. Refuses above 9 vertices.
pub fn orderable_by_brute_force(g: &Hypergraph) -> Result<bool> {
    let n = g.n();
    if n > 9 {
        return Err(Error::InvalidParameter(format!("brute force over {n}! orders refused")));
    }
    let constraints = order_constraints(g)?;
    let mut position: Vec<usize> = (0..n).collect();
    // Heap's algorithm over positions
    let ok = |pos: &[usize]| constraints.iter().all(|c| pos[c.greater] > pos[c.smaller]);
    if ok(&position) {
        return Ok(true);
    }
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                position.swap(0, i);
            } else {
                position.swap(c[i], i);
            }
            if ok(&position) {
                return Ok(true);
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(false)
}

fn orderable_and_undirected(g: &Hypergraph) -> bool {
    g.is_undirected() && is_consistently_orderable(g).map(|o| o.is_orderable()).unwrap_or(false)
}

/// Undirected and consistently orderable, on `{pt, {0,1}, {0,1}, {0,1}}`.
pub fn orderable_leq3_property() -> Property {
    Property::predicate("orderable-leq3", leq3_palette(), orderable_and_undirected)
}

/// Undirected and consistently orderable, on `{0,1}_3`.
pub fn orderable_3u_property() -> Property {
    Property::predicate("orderable-3u", uniform3_palette(), orderable_and_undirected)
}
