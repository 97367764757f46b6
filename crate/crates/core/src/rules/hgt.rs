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


//! Lookup-table rules and their HGT v1 text form.
//!
//! ```text
//! HGT 1
//! name <name>
//! order <k>
//! palette <|K_0|> ... <|K_k|>
//! a_size <a>
//! entry <j> <encoding of the view on a + j vertices> <color>
//! ```
//!
//! Views missing from the table recolor to 0. The writer lists entries in
//! `(j, encoding)` order and omits zero outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::{LocalRule, Recolor, View};
use crate::error::{Error, Result};
use crate::format::Lines;
use crate::hypercore::{Color, Hypergraph, Palette};
use crate::properties::{enumerate_hypergraphs, hypergraph_count};

#[derive(Debug, Clone, PartialEq)]
pub struct TableRule {
    name: String,
    palette: Arc<Palette>,
    a_size: usize,
    table: BTreeMap<(usize, Vec<Color>), Color>,
}

impl TableRule {
    pub fn new(name: impl Into<String>, palette: impl Into<Arc<Palette>>, a_size: usize) -> Self {
        TableRule {
            name: name.into(),
            palette: palette.into(),
            a_size,
            table: BTreeMap::new(),
        }
    }

    /// Sets the output for views with this encoding.
    pub fn insert(&mut self, j: usize, encoding: Vec<Color>, color: Color) -> Result<()> {
        if j > self.palette.order() {
            return Err(Error::InvalidParameter(format!("level {j} above the palette order")));
        }
        self.palette.check_color(j, color as usize)?;
        // validates length and digits
        Hypergraph::from_encoding(self.palette.clone(), self.a_size + j, &encoding)?;
        if color == 0 {
            self.table.remove(&(j, encoding));
        } else {
            self.table.insert((j, encoding), color);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Tabulates `rule` over every possible view, refusing when more than
    /// `ceiling` views would be visited.
    pub fn materialize(rule: &dyn LocalRule, ceiling: u128) -> Result<TableRule> {
        let palette = rule.palette().clone();
        let a = rule.a_size();
        let order = palette.order();
        let total = (0..=order)
            .map(|j| hypergraph_count(&palette, a + j).unwrap_or(u128::MAX))
            .fold(0u128, u128::saturating_add);
        if total > ceiling {
            return Err(Error::TooLarge { count: total, ceiling });
        }
        let mut out = TableRule::new(rule.name(), palette.clone(), a);
        let training: Vec<usize> = (0..a).collect();
        for j in 0..=order {
            let map: Vec<usize> = (0..a + j).collect();
            for g in enumerate_hypergraphs(palette.clone(), a + j, ceiling)? {
                let prepared = rule.prepare(&g.restrict(&training)?);
                let color = prepared.recolor(&View::new(&g, &map, a));
                if color != 0 {
                    out.table.insert((j, g.encoding()), color);
                }
            }
        }
        Ok(out)
    }
}

struct Lookup<'s>(&'s TableRule);

impl Recolor for Lookup<'_> {
    fn recolor(&self, view: &View<'_>) -> Color {
        let key = (view.j(), view.materialize().encoding());
        self.0.table.get(&key).copied().unwrap_or(0)
    }
}

impl LocalRule for TableRule {
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
        Box::new(Lookup(self))
    }
}

pub fn write_hgt(rule: &TableRule) -> String {
    let p = &rule.palette;
    let mut out = String::from("HGT 1\n");
    let _ = writeln!(out, "name {}", rule.name);
    let _ = writeln!(out, "order {}", p.order());
    let sizes: Vec<String> = p.sizes().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "palette {}", sizes.join(" "));
    let _ = writeln!(out, "a_size {}", rule.a_size);
    for ((j, enc), color) in &rule.table {
        let _ = write!(out, "entry {j}");
        for c in enc {
            let _ = write!(out, " {c}");
        }
        let _ = writeln!(out, " {color}");
    }
    out
}

pub fn read_hgt(text: &str) -> Result<TableRule> {
    let mut lines = Lines::new("HGT", text);
    let f = lines.expect("HGT")?;
    let version: u32 = lines.single(&f)?;
    if version != 1 {
        return Err(lines.error(format!("unsupported HGT version {version}")));
    }
    let f = lines.expect("name")?;
    let name: String = lines.single(&f)?;
    let f = lines.expect("order")?;
    let order: usize = lines.single(&f)?;
    let f = lines.expect("palette")?;
    let sizes: Vec<usize> = lines.parse_all(&f)?;
    if sizes.len() != order + 1 {
        return Err(lines.error(format!("palette lists {} sizes for order {order}", sizes.len())));
    }
    let palette = Palette::new(sizes).map_err(|e| lines.error(e.to_string()))?;
    let f = lines.expect("a_size")?;
    let a_size: usize = lines.single(&f)?;
    let mut rule = TableRule::new(name, palette, a_size);
    while lines.peek().is_some() {
        let f = lines.expect("entry")?;
        let nums: Vec<usize> = lines.parse_all(&f)?;
        let Some((&j, rest)) = nums.split_first() else {
            return Err(lines.error("empty entry"));
        };
        let Some((&color, enc)) = rest.split_last() else {
            return Err(lines.error("entry without a color"));
        };
        if color > Color::MAX as usize || enc.iter().any(|&c| c > Color::MAX as usize) {
            return Err(lines.error("color out of range"));
        }
        let enc = enc.iter().map(|&c| c as Color).collect();
        rule.insert(j, enc, color as Color)
            .map_err(|e| lines.error(e.to_string()))?;
    }
    Ok(rule)
}
