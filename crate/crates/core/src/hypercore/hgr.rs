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

//! HGR v1 text interchange.
//!
//! ```text
//! HGR 1
//! order <k>
//! palette <|K_0|> ... <|K_k|>
//! n <n>
//! color0 <c>
//! edge <j> <v_1> ... <v_j> <color>
//! ```
//!
//! Unlisted tuples are color 0. The writer emits non-zero entries in
//! (level, subset rank, permutation rank) order; the reader accepts any
//! order and lets the last write win.

use std::fmt::Write as _;
use std::sync::Arc;

use super::hypergraph::Hypergraph;
use super::palette::{Color, Palette};
use crate::error::Result;
use crate::format::Lines;

pub fn write_hgr(g: &Hypergraph) -> String {
    let mut out = String::new();
    write_hgr_into(g, &mut out);
    out
}

pub(crate) fn write_hgr_into(g: &Hypergraph, out: &mut String) {
    let p = g.palette();
    out.push_str("HGR 1\n");
    let _ = writeln!(out, "order {}", p.order());
    let sizes: Vec<String> = p.sizes().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "palette {}", sizes.join(" "));
    let _ = writeln!(out, "n {}", g.n());
    let _ = writeln!(out, "color0 {}", g.color0());
    g.for_each_entry(|tuple, color| {
        if color != 0 {
            let _ = write!(out, "edge {}", tuple.len());
            for v in tuple {
                let _ = write!(out, " {v}");
            }
            let _ = writeln!(out, " {color}");
        }
    });
}

pub fn read_hgr(text: &str) -> Result<Hypergraph> {
    let mut lines = Lines::new("HGR", text);
    let g = read_hgr_from(&mut lines, None)?;
    if lines.peek().is_some() {
        lines.next_line();
        return Err(lines.error("trailing content"));
    }
    Ok(g)
}

/// Reads one HGR body, stopping before a line whose first field is
/// `terminator`.
pub(crate) fn read_hgr_from(lines: &mut Lines<'_>, terminator: Option<&str>) -> Result<Hypergraph> {
    let version: u32 = field(lines, "HGR")?;
    if version != 1 {
        return Err(lines.error(format!("unsupported HGR version {version}")));
    }
    let order: usize = field(lines, "order")?;
    let sizes: Vec<usize> = {
        let f = lines.expect("palette")?;
        lines.parse_all(&f)?
    };
    if sizes.len() != order + 1 {
        return Err(lines.error(format!(
            "palette lists {} sizes for order {order}",
            sizes.len()
        )));
    }
    let palette = Palette::new(sizes).map_err(|e| lines.error(e.to_string()))?;
    let n: usize = field(lines, "n")?;
    let c0: Color = field(lines, "color0")?;
    let mut g = Hypergraph::new(Arc::new(palette), n);
    g.set_color0(c0).map_err(|e| lines.error(e.to_string()))?;
    while let Some(fields) = lines.peek() {
        if Some(fields[0]) == terminator {
            break;
        }
        let fields = lines.next_line().expect("peeked");
        if fields[0] != "edge" {
            return Err(lines.error(format!("unexpected `{}`", fields[0])));
        }
        let nums: Vec<usize> = lines.parse_all(&fields[1..])?;
        let Some((&j, rest)) = nums.split_first() else {
            return Err(lines.error("empty edge line"));
        };
        if rest.len() != j + 1 {
            return Err(lines.error(format!("edge of order {j} needs {} fields", j + 1)));
        }
        let color = rest[j];
        if color > Color::MAX as usize {
            return Err(lines.error(format!("color {color} out of range")));
        }
        g.set(&rest[..j], color as Color)
            .map_err(|e| lines.error(e.to_string()))?;
    }
    Ok(g.compacted())
}

fn field<T: std::str::FromStr>(lines: &mut Lines<'_>, key: &str) -> Result<T> {
    let f = lines.expect(key)?;
    lines.single(&f)
}
