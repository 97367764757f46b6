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


//! HGP v1: a forbidden-family property as text.
//!
//! ```text
//! HGP 1
//! name <name>
//! order <k>
//! palette <|K_0|> ... <|K_k|>
//! forbid
//! <HGR v1 body>
//! end
//! ```
//!
//! with one `forbid ... end` block per member.

use std::fmt::Write as _;

use super::{Property, PropertyBody};
use crate::error::{Error, Result};
use crate::format::Lines;
use crate::hypercore::{read_hgr_from, write_hgr_into, Palette};

/// Fails for predicate properties, which have no text form.
pub fn write_hgp(property: &Property) -> Result<String> {
    let PropertyBody::Forbidden(members) = property.body() else {
        return Err(Error::InvalidParameter(format!(
            "property `{}` is a predicate and cannot be serialized",
            property.name()
        )));
    };
    if property.name().split_whitespace().count() != 1 {
        return Err(Error::InvalidParameter("property name must be one token".into()));
    }
    let p = property.palette();
    let mut out = String::from("HGP 1\n");
    let _ = writeln!(out, "name {}", property.name());
    let _ = writeln!(out, "order {}", p.order());
    let sizes: Vec<String> = p.sizes().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "palette {}", sizes.join(" "));
    for m in members {
        out.push_str("forbid\n");
        write_hgr_into(m, &mut out);
        out.push_str("end\n");
    }
    Ok(out)
}

pub fn read_hgp(text: &str) -> Result<Property> {
    let mut lines = Lines::new("HGP", text);
    let version: u32 = {
        let f = lines.expect("HGP")?;
        lines.single(&f)?
    };
    if version != 1 {
        return Err(lines.error(format!("unsupported HGP version {version}")));
    }
    let name: String = {
        let f = lines.expect("name")?;
        lines.single(&f)?
    };
    let order: usize = {
        let f = lines.expect("order")?;
        lines.single(&f)?
    };
    let sizes: Vec<usize> = {
        let f = lines.expect("palette")?;
        lines.parse_all(&f)?
    };
    if sizes.len() != order + 1 {
        return Err(lines.error(format!("palette lists {} sizes for order {order}", sizes.len())));
    }
    let palette = Palette::new(sizes).map_err(|e| lines.error(e.to_string()))?;
    let mut members = Vec::new();
    while lines.peek().is_some() {
        let f = lines.expect("forbid")?;
        if !f.is_empty() {
            return Err(lines.error("`forbid` takes no arguments"));
        }
        let m = read_hgr_from(&mut lines, Some("end"))?;
        lines.expect("end")?;
        if !m.palette().compatible(&palette) {
            return Err(lines.error("member palette differs from the header"));
        }
        members.push(m);
    }
    Property::forbidden(name, palette, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::builtins;

    #[test]
    fn round_trip_is_byte_identical() {
        for p in [builtins::triangle_free(), builtins::complete()] {
            let text = write_hgp(&p).unwrap();
            let back = read_hgp(&text).unwrap();
            assert_eq!(back.name(), p.name());
            assert_eq!(write_hgp(&back).unwrap(), text);
        }
    }

    #[test]
    fn predicates_and_bad_input_are_rejected() {
        assert!(write_hgp(&builtins::total_order()).is_err());
        assert!(read_hgp("HGP 2\n").is_err());
        let text = "HGP 1\nname x\norder 2\npalette 1 1 2\nforbid\nHGR 1\norder 1\npalette 1 2\nn 1\ncolor0 0\nend\n";
        assert!(read_hgp(text).is_err());
        // unterminated block
        let text = "HGP 1\nname x\norder 2\npalette 1 1 2\nforbid\nHGR 1\norder 2\npalette 1 1 2\nn 2\ncolor0 0\n";
        assert!(read_hgp(text).is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# empty family\nHGP 1\n\nname none  # trailing\norder 2\npalette 1 1 2\n";
        let p = read_hgp(text).unwrap();
        assert!(matches!(p.body(), PropertyBody::Forbidden(m) if m.is_empty()));
    }
}
