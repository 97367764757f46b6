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

//! Testing and repair of hereditary properties of colored, directed,
//! non-uniform hypergraphs.
//!
//! * [`hypercore`]: palettes, hypergraphs, pullback and restriction.
//! * [`properties`]: hereditary properties, local satisfaction, distance,
//!   Ramsey search and meet-closure checks.
//! * [`rules`]: local modification rules and finitised entailment checks.
//! * [`obstructions`]: corrupted instances and the witnesses that defeat
//!   every local rule on them.
//! * [`repairs`]: non-local total-order repair and majority bipartite repair.
//! * [`graphon`]: graphon sampling and cell-based triangle-free repair.

pub mod error;
mod format;
pub mod graphon;
pub mod hypercore;
pub mod obstructions;
pub mod properties;
pub mod repairs;
pub mod rng;
pub mod rules;

pub use error::{Error, Result};
pub use hypercore::{Color, Hypergraph, Morphism, Palette};
