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

//! Hereditary properties and the measurements built on them.

pub mod builtins;
mod containment;
mod hgp;
mod monotone;
mod ramsey;
mod satisfaction;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Palette};

pub use containment::{contains_induced, find_induced};
pub use hgp::{read_hgp, write_hgp};
pub use monotone::{check_meet_closed, enumerate_hypergraphs, hypergraph_count, random_hypergraph, MeetSearch};
pub use ramsey::{find_monochromatic, is_monochromatic};
pub use satisfaction::{distance, local_satisfaction, locally_almost_obeys, Mode, Satisfaction, TesterParams};

pub type PredicateFn = dyn Fn(&Hypergraph) -> bool + Send + Sync;

#[derive(Clone)]
pub enum PropertyBody {
    /// Obeyed iff no member occurs as an induced sub-hypergraph.
    Forbidden(Vec<Hypergraph>),
    /// Opaque test. Callers promise it is closed under restriction.
    Predicate(Arc<PredicateFn>),
}

/// A hereditary property on a fixed palette.
#[derive(Clone)]
pub struct Property {
    name: String,
    palette: Arc<Palette>,
    body: PropertyBody,
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match &self.body {
            PropertyBody::Forbidden(m) => format!("Forbidden({} members)", m.len()),
            PropertyBody::Predicate(_) => "Predicate".to_string(),
        };
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("palette", &self.palette.sizes())
            .field("body", &body)
            .finish()
    }
}

impl Property {
    pub fn forbidden(name: impl Into<String>, palette: impl Into<Arc<Palette>>, members: Vec<Hypergraph>) -> Result<Self> {
        let palette = palette.into();
        if members.iter().any(|m| !m.palette().compatible(&palette)) {
            return Err(Error::PaletteMismatch);
        }
        Ok(Property {
            name: name.into(),
            palette,
            body: PropertyBody::Forbidden(members),
        })
    }

    pub fn predicate(
        name: impl Into<String>,
        palette: impl Into<Arc<Palette>>,
        test: impl Fn(&Hypergraph) -> bool + Send + Sync + 'static,
    ) -> Self {
        Property {
            name: name.into(),
            palette: palette.into(),
            body: PropertyBody::Predicate(Arc::new(test)),
        }
    }

    /// Same property over a palette with the same color sets, e.g. one
    /// carrying order specifications.
    pub fn with_palette(mut self, palette: impl Into<Arc<Palette>>) -> Result<Self> {
        let palette = palette.into();
        if !palette.compatible(&self.palette) {
            return Err(Error::PaletteMismatch);
        }
        self.palette = palette;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn palette_arc(&self) -> &Arc<Palette> {
        &self.palette
    }

    pub fn body(&self) -> &PropertyBody {
        &self.body
    }

    pub(crate) fn check_palette(&self, g: &Hypergraph) -> Result<()> {
        if !g.palette().compatible(&self.palette) {
            return Err(Error::PaletteMismatch);
        }
        Ok(())
    }

    /// Whether `g` obeys the property.
    pub fn obeys(&self, g: &Hypergraph) -> Result<bool> {
        self.check_palette(g)?;
        Ok(self.obeys_unchecked(g))
    }

    pub(crate) fn obeys_unchecked(&self, g: &Hypergraph) -> bool {
        match &self.body {
            PropertyBody::Predicate(test) => test(g),
            PropertyBody::Forbidden(members) => {
                // largest members first
                let mut order: Vec<&Hypergraph> = members.iter().collect();
                order.sort_by_key(|m| std::cmp::Reverse(m.n()));
                !order.into_iter().any(|m| contains_induced(g, m))
            }
        }
    }
}

pub fn obeys(property: &Property, g: &Hypergraph) -> Result<bool> {
    property.obeys(g)
}
