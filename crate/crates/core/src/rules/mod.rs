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


//! Local modification rules.
//!
//! A rule with training size `a` recolors an ordered `j`-tuple of the
//! remaining vertices by looking only at the pullback of the input to the
//! training vertices followed by the tuple. Rules see that pullback
//! through a [`View`]; training vertices are `0..a`, tuple vertices
//! `a..a + j` in tuple order. Since every ordering of an edge is recolored
//! from its own view, the modification map is equivariant by construction.

mod builtin;
mod hgt;
mod majority;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercore::combinatorics::{factorial, for_each_subset, perm_unrank};
use crate::hypercore::{Color, Hypergraph, Morphism, Palette};
use crate::properties::{enumerate_hypergraphs, hypergraph_count, random_hypergraph, Property};
use crate::rng;

pub use builtin::{anchor_order, bipartite_delete, constant_zero, identity_copy, random_hash, FnRule};
pub use hgt::{read_hgt, write_hgt, TableRule};
pub use majority::{bipartite_majority, MajorityFit, MajorityRule, EXACT_FIT_LIMIT, FIT_BUDGET};

/// Names accepted by [`rule_by_name`].
pub const NAMES: &[&str] = &[
    "identity-copy",
    "constant-0",
    "bipartite-delete",
    "bipartite-majority",
    "anchor-order",
    "random-hash",
];

/// A pullback of the input to `A ⊎ [j]`, read lazily.
#[derive(Clone, Copy)]
pub struct View<'a> {
    g: &'a Hypergraph,
    map: &'a [usize],
    a: usize,
}

impl<'a> View<'a> {
    pub fn new(g: &'a Hypergraph, map: &'a [usize], a: usize) -> Self {
        debug_assert!(a <= map.len());
        View { g, map, a }
    }

    /// Vertex count `a + j`.
    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn a_size(&self) -> usize {
        self.a
    }

    /// Order of the tuple being recolored.
    pub fn j(&self) -> usize {
        self.map.len() - self.a
    }

    pub fn palette(&self) -> &Palette {
        self.g.palette()
    }

    pub fn color0(&self) -> Color {
        self.g.color0()
    }

    #[inline]
    pub fn get2(&self, u: usize, v: usize) -> Color {
        self.g.get2(self.map[u], self.map[v])
    }

    #[inline]
    pub fn get3(&self, u: usize, v: usize, w: usize) -> Color {
        self.g.get3(self.map[u], self.map[v], self.map[w])
    }

    pub fn get(&self, tuple: &[usize]) -> Color {
        let mut buf = [0usize; 16];
        assert!(tuple.len() <= buf.len(), "tuple order above 16");
        for (slot, &t) in buf.iter_mut().zip(tuple) {
            *slot = self.map[t];
        }
        self.g.get(&buf[..tuple.len()])
    }

    /// Color of the tuple being recolored.
    pub fn edge_color(&self) -> Color {
        let tuple: Vec<usize> = (self.a..self.map.len()).collect();
        self.get(&tuple)
    }

    /// The view as a hypergraph on `a + j` vertices.
    pub fn materialize(&self) -> Hypergraph {
        let phi = Morphism::new(self.map.to_vec(), self.g.n()).expect("view map is injective");
        self.g.pullback(&phi).expect("view map targets the input")
    }
}

/// Recoloring functions after the training analysis is done.
pub trait Recolor: Send + Sync {
    /// Color in `K_j` for the tuple `a..a + j` of `view`.
    fn recolor(&self, view: &View<'_>) -> Color;
}

/// A local modification rule `(A, T)`.
pub trait LocalRule: Send + Sync {
    fn name(&self) -> &str;
    fn palette(&self) -> &Arc<Palette>;
    fn a_size(&self) -> usize;
    /// Runs once per application on the pullback of the input to the
    /// training vertices. Everything it computes is a function of data
    /// every view already contains, so locality is preserved.
    fn prepare<'s>(&'s self, training: &Hypergraph) -> Box<dyn Recolor + 's>;
}

/// Anything that colors ordered tuples of `0..n`.
pub trait EdgeColors {
    fn n(&self) -> usize;
    fn color(&self, tuple: &[usize]) -> Color;
}

impl EdgeColors for Hypergraph {
    fn n(&self) -> usize {
        Hypergraph::n(self)
    }

    fn color(&self, tuple: &[usize]) -> Color {
        self.get(tuple)
    }
}

/// `T_phi(G)` evaluated on demand. Output vertex `i` is the `i`-th smallest
/// vertex of `G` outside the anchors.
pub struct LazyModification<'a> {
    g: &'a Hypergraph,
    prepared: Box<dyn Recolor + 'a>,
    palette: Arc<Palette>,
    anchors: Vec<usize>,
    rest: Vec<usize>,
}

impl<'a> LazyModification<'a> {
    pub fn new(rule: &'a dyn LocalRule, g: &'a Hypergraph, anchors: &[usize]) -> Result<Self> {
        if !g.palette().compatible(rule.palette()) {
            return Err(Error::PaletteMismatch);
        }
        if anchors.len() != rule.a_size() {
            return Err(Error::SizeMismatch {
                expected: rule.a_size(),
                found: anchors.len(),
            });
        }
        let phi = Morphism::new(anchors.to_vec(), g.n())?;
        let mut used = vec![false; g.n()];
        for &a in anchors {
            used[a] = true;
        }
        let rest = (0..g.n()).filter(|&v| !used[v]).collect();
        let training = g.pullback(&phi)?;
        Ok(LazyModification {
            g,
            prepared: rule.prepare(&training),
            palette: rule.palette().clone(),
            anchors: anchors.to_vec(),
            rest,
        })
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// Input vertex behind output vertex `i`.
    pub fn source_vertex(&self, i: usize) -> usize {
        self.rest[i]
    }

    /// Output index of input vertex `v`, `None` for anchors.
    pub fn output_index(&self, v: usize) -> Option<usize> {
        self.rest.binary_search(&v).ok()
    }

    fn color_into(&self, tuple: &[usize], map: &mut Vec<usize>) -> Color {
        map.truncate(self.anchors.len());
        map.extend(tuple.iter().map(|&t| self.rest[t]));
        self.prepared.recolor(&View::new(self.g, map, self.anchors.len()))
    }

    /// The full output hypergraph.
    pub fn materialize(&self) -> Hypergraph {
        let m = self.rest.len();
        let mut out = Hypergraph::new(self.palette.clone(), m);
        let mut map = self.anchors.clone();
        out.set_color0(self.color_into(&[], &mut map)).expect("rule color in range");
        let mut tuple = Vec::new();
        for j in 1..=self.palette.order() {
            let patterns: Vec<Vec<usize>> = (0..factorial(j)).map(|p| perm_unrank(p, j)).collect();
            let (slots, data) = out.level_data_mut(j);
            debug_assert_eq!(slots, patterns.len());
            let mut rank = 0;
            for_each_subset(m, j, |s| {
                for (p, pattern) in patterns.iter().enumerate() {
                    tuple.clear();
                    tuple.extend(pattern.iter().map(|&i| s[i]));
                    data[rank * slots + p] = self.color_into(&tuple, &mut map);
                }
                rank += 1;
            });
            let size = self.palette.size(j);
            assert!(data.iter().all(|&c| (c as usize) < size), "rule color out of range");
        }
        out.compacted()
    }
}

impl EdgeColors for LazyModification<'_> {
    fn n(&self) -> usize {
        self.rest.len()
    }

    fn color(&self, tuple: &[usize]) -> Color {
        let mut map = self.anchors.clone();
        self.color_into(tuple, &mut map)
    }
}

/// Modification map on `A ⊎ V`: the first `a_size` vertices of `g` are
/// the training set, the output lives on the rest.
pub fn modification_map(rule: &dyn LocalRule, g: &Hypergraph) -> Result<Hypergraph> {
    let a = rule.a_size();
    if g.n() < a {
        return Err(Error::InvalidParameter(format!(
            "{} vertices cannot hold a training set of {a}",
            g.n()
        )));
    }
    let anchors: Vec<usize> = (0..a).collect();
    Ok(LazyModification::new(rule, g, &anchors)?.materialize())
}

/// `T_phi(G)` on `V \ phi(A)`, ascending labels.
pub fn apply_rule(rule: &dyn LocalRule, g: &Hypergraph, phi: &Morphism) -> Result<Hypergraph> {
    if phi.target() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: phi.target(),
        });
    }
    Ok(LazyModification::new(rule, g, phi.image())?.materialize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntailmentMode {
    /// Every hypergraph on `A ⊎ V`; refuses past `ceiling` instances.
    Exhaustive { ceiling: u128 },
    /// `samples` uniform hypergraphs per size of `V`.
    MonteCarlo { samples: usize, seed: u64 },
}

impl EntailmentMode {
    pub const DEFAULT_CEILING: u128 = 1 << 26;

    pub fn exhaustive() -> Self {
        EntailmentMode::Exhaustive {
            ceiling: Self::DEFAULT_CEILING,
        }
    }
}

/// First input whose modification fails the property.
#[derive(Debug, Clone)]
pub struct Counterexample {
    /// Input on `A ⊎ V`, training vertices first.
    pub input: Hypergraph,
    pub output: Hypergraph,
    /// `|V|`.
    pub v_size: usize,
}

/// Checks that `modification_map(rule, G)` obeys `property` for every
/// input with `|V| <= n_max`, smallest `|V|` first.
pub fn verify_entailment_upto(
    rule: &dyn LocalRule,
    property: &Property,
    n_max: usize,
    mode: EntailmentMode,
) -> Result<Option<Counterexample>> {
    if !rule.palette().compatible(property.palette()) {
        return Err(Error::PaletteMismatch);
    }
    let palette = rule.palette().clone();
    let a = rule.a_size();
    let check = |input: Hypergraph, v_size: usize| -> Result<Option<Counterexample>> {
        let output = modification_map(rule, &input)?;
        Ok((!property.obeys(&output)?).then_some(Counterexample { input, output, v_size }))
    };
    match mode {
        EntailmentMode::Exhaustive { ceiling } => {
            let total = (0..=n_max)
                .map(|v| hypergraph_count(&palette, a + v).unwrap_or(u128::MAX))
                .fold(0u128, u128::saturating_add);
            if total > ceiling {
                return Err(Error::TooLarge { count: total, ceiling });
            }
            for v in 0..=n_max {
                for input in enumerate_hypergraphs(palette.clone(), a + v, ceiling)? {
                    if let Some(c) = check(input, v)? {
                        return Ok(Some(c));
                    }
                }
            }
        }
        EntailmentMode::MonteCarlo { samples, seed } => {
            for v in 0..=n_max {
                let mut r = rng::stream(seed, v as u64);
                for _ in 0..samples {
                    if let Some(c) = check(random_hypergraph(&palette, a + v, &mut r), v)? {
                        return Ok(Some(c));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Builtin rule by name. `a_size` overrides the default training size
/// where the rule allows it; `palette` is used by palette-generic rules.
pub fn rule_by_name(name: &str, palette: Arc<Palette>, a_size: Option<usize>, seed: u64) -> Result<Box<dyn LocalRule>> {
    Ok(match name {
        "identity-copy" => Box::new(identity_copy(palette, a_size.unwrap_or(0))),
        "constant-0" => Box::new(constant_zero(palette, a_size.unwrap_or(0))),
        "bipartite-delete" => {
            if a_size.is_some_and(|a| a != 1) {
                return Err(Error::InvalidParameter("bipartite-delete has training size 1".into()));
            }
            Box::new(bipartite_delete())
        }
        "bipartite-majority" => Box::new(bipartite_majority(a_size.unwrap_or(30))?),
        "anchor-order" => Box::new(anchor_order(a_size.unwrap_or(5))),
        "random-hash" => Box::new(random_hash(palette, a_size.unwrap_or(5), seed)),
        _ => {
            return Err(Error::Unknown {
                kind: "rule",
                name: name.to_string(),
            })
        }
    })
}
