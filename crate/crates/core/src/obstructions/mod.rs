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


//! Corrupted instances on which no local rule can repair, and searches for
//! the witnesses that show it.
//!
//! * Directed total orders: an indistinguishable pair forces every rule to
//!   color both orderings of the pair alike.
//! * `{pt, {0,1}, {0,1}, {0,1}}` hypergraphs: an inconsistent quadruplet.
//! * 3-uniform hypergraphs: an inconsistent 9-tuple.

mod leq3;
mod order;
mod orderable;
mod uniform3;

use std::fmt;

use crate::error::{Error, Result};
use crate::format::Lines;

pub use leq3::{find_inconsistent_quad, gen_leq3, leq3_palette, validate_quad};
pub use order::{defeat_rule_order, find_indistinguishable_pair, gen_corrupted_order};
pub use orderable::{
    is_consistently_orderable, orderable_3u_property, orderable_by_brute_force, orderable_leq3_property,
    order_constraints, OrderConstraint, Orderability,
};
pub use uniform3::{derived_relations, find_inconsistent_nine, gen_3uniform, uniform3_palette, validate_nine, DerivedRelations};

/// Size, flip probability and seed of a corrupted instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorruptionSpec {
    pub m: usize,
    pub sigma: f64,
    pub seed: u64,
}

impl CorruptionSpec {
    pub fn new(m: usize, sigma: f64, seed: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("M = {m} below 2")));
        }
        if !(0.0..=1.0).contains(&sigma) {
            return Err(Error::InvalidParameter(format!("sigma = {sigma} outside [0, 1]")));
        }
        Ok(CorruptionSpec { m, sigma, seed })
    }
}

/// Limits for the quadruplet and 9-tuple searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Candidate probes before giving up.
    pub probes: u64,
    /// Seeds the order in which candidates are visited.
    pub seed: u64,
}

impl SearchBudget {
    pub fn new(probes: u64, seed: u64) -> Self {
        SearchBudget { probes, seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionKind {
    Pair,
    Quad,
    Nine,
}

impl ObstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObstructionKind::Pair => "pair",
            ObstructionKind::Quad => "quad",
            ObstructionKind::Nine => "nine",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pair" => Some(ObstructionKind::Pair),
            "quad" => Some(ObstructionKind::Quad),
            "nine" => Some(ObstructionKind::Nine),
            _ => None,
        }
    }
}

/// A located obstruction. Vertices are labels of the input `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub kind: ObstructionKind,
    pub anchors: Vec<usize>,
    pub witness: Vec<usize>,
    /// Identifiers of the clauses the witness was checked against.
    pub clauses: Vec<String>,
    /// Candidates examined before the witness turned up.
    pub probes: u64,
}

impl ObstructionReport {
    /// Parses the block written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new("OBSTRUCTION", text);
        let f = lines.expect("OBSTRUCTION")?;
        let version: u32 = lines.single(&f)?;
        if version != 1 {
            return Err(lines.error(format!("unsupported version {version}")));
        }
        let f = lines.expect("kind")?;
        let kind = match f.as_slice() {
            [k] => ObstructionKind::parse(k).ok_or_else(|| lines.error(format!("unknown kind `{k}`")))?,
            _ => return Err(lines.error("expected one kind")),
        };
        let f = lines.expect("anchors")?;
        let anchors = lines.parse_all(&f)?;
        let f = lines.expect("witness")?;
        let witness = lines.parse_all(&f)?;
        let f = lines.expect("clauses")?;
        let clauses = f.iter().map(|s| s.to_string()).collect();
        let f = lines.expect("probes")?;
        let probes = lines.single(&f)?;
        lines.expect("end")?;
        if lines.peek().is_some() {
            lines.next_line();
            return Err(lines.error("trailing content"));
        }
        Ok(ObstructionReport {
            kind,
            anchors,
            witness,
            clauses,
            probes,
        })
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OBSTRUCTION 1")?;
        writeln!(f, "kind {}", self.kind.as_str())?;
        writeln!(f, "anchors {}", join(&self.anchors))?;
        writeln!(f, "witness {}", join(&self.witness))?;
        writeln!(f, "clauses {}", self.clauses.join(" "))?;
        writeln!(f, "probes {}", self.probes)?;
        writeln!(f, "end")
    }
}

/// Ascending positions of the vertices outside `anchors`: `out[v]` is the
/// label of `v` in the repaired hypergraph.
pub(crate) fn output_labels(n: usize, anchors: &[usize]) -> Vec<Option<usize>> {
    let mut is_anchor = vec![false; n];
    for &a in anchors {
        is_anchor[a] = true;
    }
    let mut next = 0;
    is_anchor
        .into_iter()
        .map(|a| {
            (!a).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

pub(crate) fn check_anchors(n: usize, anchors: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    for &a in anchors {
        if a >= n {
            return Err(Error::VertexOutOfRange { vertex: a, n });
        }
        if std::mem::replace(&mut seen[a], true) {
            return Err(Error::InvalidParameter(format!("anchor {a} repeated")));
        }
    }
    Ok(())
}
