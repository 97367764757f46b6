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

//! Line-oriented text formats share one tokenizer: UTF-8, `#` starts a
//! comment, blank lines are ignored, fields are whitespace separated.

use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) struct Lines<'a> {
    format: &'static str,
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub fn new(format: &'static str, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, line)| {
                let line = line.split('#').next().unwrap_or("");
                let fields: Vec<&str> = line.split_whitespace().collect();
                (!fields.is_empty()).then_some((i + 1, fields))
            })
            .collect();
        Lines { format, lines, pos: 0 }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let line = self
            .lines
            .get(self.pos.saturating_sub(1))
            .map_or(0, |(l, _)| *l);
        Error::Parse {
            format: self.format,
            line,
            msg: msg.into(),
        }
    }

    pub fn peek(&self) -> Option<&[&'a str]> {
        self.lines.get(self.pos).map(|(_, f)| f.as_slice())
    }

    pub fn next_line(&mut self) -> Option<Vec<&'a str>> {
        let out = self.lines.get(self.pos).map(|(_, f)| f.clone());
        if out.is_some() {
            self.pos += 1;
        }
        out
    }

    /// Next line, which must start with `keyword`; returns the remaining fields.
    pub fn expect(&mut self, keyword: &str) -> Result<Vec<&'a str>> {
        match self.next_line() {
            Some(f) if f[0] == keyword => Ok(f[1..].to_vec()),
            Some(f) => Err(self.error(format!("expected `{keyword}`, found `{}`", f[0]))),
            None => {
                self.pos += 1;
                Err(self.error(format!("expected `{keyword}`, found end of input")))
            }
        }
    }

    pub fn parse<T: FromStr>(&self, field: &str) -> Result<T> {
        field
            .parse()
            .map_err(|_| self.error(format!("cannot parse `{field}`")))
    }

    pub fn parse_all<T: FromStr>(&self, fields: &[&str]) -> Result<Vec<T>> {
        fields.iter().map(|f| self.parse(f)).collect()
    }

    pub fn single<T: FromStr>(&self, fields: &[&str]) -> Result<T> {
        match fields {
            [f] => self.parse(f),
            _ => Err(self.error(format!("expected one value, found {}", fields.len()))),
        }
    }
}
