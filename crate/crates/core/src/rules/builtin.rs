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


//! Small builtin rules.

use std::sync::Arc;

use super::{LocalRule, Recolor, View};
use crate::hypercore::{Color, Hypergraph, Palette};

type RecolorFn = dyn Fn(&View<'_>) -> Color + Send + Sync;

/// A rule whose recoloring needs no training analysis.
pub struct FnRule {
    name: String,
    palette: Arc<Palette>,
    a_size: usize,
    f: Arc<RecolorFn>,
}

impl FnRule {
    pub fn new(
        name: impl Into<String>,
        palette: impl Into<Arc<Palette>>,
        a_size: usize,
        f: impl Fn(&View<'_>) -> Color + Send + Sync + 'static,
    ) -> Self {
        FnRule {
            name: name.into(),
            palette: palette.into(),
            a_size,
            f: Arc::new(f),
        }
    }
}

struct Plain(Arc<RecolorFn>);

impl Recolor for Plain {
    fn recolor(&self, view: &View<'_>) -> Color {
        (self.0)(view)
    }
}

impl LocalRule for FnRule {
    fn name(&self) -> &str {
        &self.name
    }

    fn palette(&self) -> &Arc<Palette> {
        &self.palette
    }

    fn a_size(&self) -> usize {
        self.a_size
    }

    fn prepare<'s>(&'s self, _training: &Hypergraph) -> Box<dyn Recolor + 's> {
        Box::new(Plain(self.f.clone()))
    }
}

/// Every tuple keeps its color.
pub fn identity_copy(palette: Arc<Palette>, a_size: usize) -> FnRule {
    FnRule::new("identity-copy", palette, a_size, |v| {
        if v.j() == 0 {
            v.color0()
        } else {
            v.edge_color()
        }
    })
}

pub fn constant_zero(palette: Arc<Palette>, a_size: usize) -> FnRule {
    FnRule::new("constant-0", palette, a_size, |_| 0)
}

/// Keeps `(v, w)` iff `G(v, w) = G(w, t) = 1` and `G(v, t) = 0`, with `t`
/// the single training vertex. The output is bipartite between the
/// vertices that do not point at `t` and those that do.
pub fn bipartite_delete() -> FnRule {
    FnRule::new("bipartite-delete", Palette::digraph(), 1, |v| {
        if v.j() != 2 {
            return 0;
        }
        (v.get2(1, 2) == 1 && v.get2(2, 0) == 1 && v.get2(1, 0) == 0) as Color
    })
}

/// Orders the pair by how many anchors point into each endpoint, breaking
/// ties with the pair's own edge. Used to exercise the order obstruction.
pub fn anchor_order(a_size: usize) -> FnRule {
    FnRule::new("anchor-order", Palette::digraph(), a_size, move |v| {
        if v.j() != 2 {
            return 0;
        }
        let a = v.a_size();
        let below = |x: usize| (0..a).filter(|&i| v.get2(i, x) == 1).count();
        let (sv, sw) = (below(a), below(a + 1));
        (sv < sw || (sv == sw && v.get2(a, a + 1) == 1)) as Color
    })
}

/// A pseudo-random function of the whole view. Any rule at all is a
/// function of the view, so this is the generic adversary.
pub fn random_hash(palette: Arc<Palette>, a_size: usize, seed: u64) -> FnRule {
    FnRule::new("random-hash", palette, a_size, move |v| {
        let size = v.palette().size(v.j()) as u64;
        if size == 1 {
            return 0;
        }
        let mut h = seed ^ 0xCBF2_9CE4_8422_2325;
        for c in v.materialize().encoding() {
            h = (h ^ c as u64).wrapping_mul(0x0000_0100_0000_01B3);
        }
        h ^= h >> 33;
        h = h.wrapping_mul(0xFF51_AFD7_ED55_8CCD);
        h ^= h >> 33;
        (h % size) as Color
    })
}
