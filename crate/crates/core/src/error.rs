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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid palette: {0}")]
    Palette(String),
    #[error("palette mismatch between operands")]
    PaletteMismatch,
    #[error("vertex count mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("color {color} out of range at level {level} (palette size {size})")]
    ColorOutOfRange { level: usize, color: usize, size: usize },
    #[error("palette has no order specification at level {0}")]
    Unordered(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration of {count} instances exceeds the ceiling of {ceiling}")]
    TooLarge { count: u128, ceiling: u128 },
    #[error("{format} parse error at line {line}: {msg}")]
    Parse {
        format: &'static str,
        line: usize,
        msg: String,
    },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
