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

use crate::error::{Error, Result};

/// An injective map `[m] -> [n]`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    target: usize,
    image: Vec<usize>,
}

impl Morphism {
    pub fn new(image: Vec<usize>, target: usize) -> Result<Self> {
        let mut seen = vec![false; target];
        for &v in &image {
            if v >= target {
                return Err(Error::VertexOutOfRange { vertex: v, n: target });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Morphism(format!("vertex {v} repeated in image")));
            }
        }
        Ok(Self { target, image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            image: (0..n).collect(),
        }
    }

    /// Inclusion of a vertex subset, labeled in ascending order.
    pub fn inclusion(subset: &[usize], n: usize) -> Result<Self> {
        let mut image = subset.to_vec();
        image.sort_unstable();
        image.dedup();
        Self::new(image, n)
    }

    pub fn source(&self) -> usize {
        self.image.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// `self ∘ inner`, i.e. first `inner`, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target != self.source() {
            return Err(Error::SizeMismatch {
                expected: self.source(),
                found: inner.target,
            });
        }
        Ok(Morphism {
            target: self.target,
            image: inner.image.iter().map(|&v| self.image[v]).collect(),
        })
    }
}
