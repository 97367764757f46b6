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

//! Palettes, hypergraphs keyed by injective tuples, morphisms, pullback
//! and restriction, plus the HGR text format.

pub mod combinatorics;
mod hgr;
mod hypergraph;
mod morphism;
mod palette;

pub use combinatorics::{enumerate_injections, Injections};
pub use hgr::{read_hgr, write_hgr};
pub(crate) use hgr::{read_hgr_from, write_hgr_into};
pub use hypergraph::Hypergraph;
pub use morphism::Morphism;
pub use palette::{Color, Palette, Semilattice};

use crate::error::Result;

/// Pullback of `g` along `phi`.
pub fn pullback(g: &Hypergraph, phi: &Morphism) -> Result<Hypergraph> {
    g.pullback(phi)
}

/// Induced sub-hypergraph on `subset`, relabeled ascending.
pub fn restrict(g: &Hypergraph, subset: &[usize]) -> Result<Hypergraph> {
    g.restrict(subset)
}

pub fn is_undirected(g: &Hypergraph) -> bool {
    g.is_undirected()
}

pub fn meet(a: &Hypergraph, b: &Hypergraph) -> Result<Hypergraph> {
    a.meet(b)
}

pub fn is_partite_edge(g: &Hypergraph, tuple: &[usize]) -> bool {
    g.is_partite_edge(tuple)
}

pub fn partite_equivalent(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    a.partite_equivalent(b)
}
