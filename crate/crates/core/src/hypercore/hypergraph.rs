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

use std::sync::{Arc, OnceLock};

use super::combinatorics::{binom, factorial, for_each_subset, next_subset, perm_rank, perm_unrank, subset_rank};
use super::morphism::Morphism;
use super::palette::{Color, Palette};
use crate::error::{Error, Result};

/// Color store for one level `j`: `C(n, j)` blocks in colex subset order,
/// each block holding either `j!` colors (one per ordering, Lehmer ranked)
/// or a single color shared by all orderings.
#[derive(Debug, Clone)]
struct Level {
    j: usize,
    slots: usize,
    data: Vec<Color>,
}

impl Level {
    fn new(n: usize, j: usize, symmetric: bool) -> Self {
        let slots = if symmetric { 1 } else { factorial(j) };
        Level {
            j,
            slots,
            data: vec![0; binom(n, j) * slots],
        }
    }

    #[inline]
    fn index(&self, rank: usize, perm: usize) -> usize {
        if self.slots == 1 {
            rank
        } else {
            rank * self.slots + perm
        }
    }

    fn expand(&mut self) {
        if self.slots != 1 || self.j < 2 {
            return;
        }
        let slots = factorial(self.j);
        self.data = self
            .data
            .iter()
            .flat_map(|&c| std::iter::repeat_n(c, slots))
            .collect();
        self.slots = slots;
    }

    fn is_symmetric(&self) -> bool {
        self.slots == 1 || self.data.chunks(self.slots).all(|b| b.iter().all(|&c| c == b[0]))
    }
}

/// A palette-colored hypergraph on vertices `0..n`: a color in `K_j` for
/// every ordered `j`-tuple of distinct vertices, `0 <= j <= k`.
///
/// Hypergraphs built with [`Hypergraph::new_undirected`] store one color
/// per subset until an asymmetric write forces the full layout.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    palette: Arc<Palette>,
    n: usize,
    levels: Vec<Level>,
    undirected: OnceLock<bool>,
}

#[inline]
fn sort3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut s = [a, b, c];
    if s[0] > s[1] {
        s.swap(0, 1);
    }
    if s[1] > s[2] {
        s.swap(1, 2);
    }
    if s[0] > s[1] {
        s.swap(0, 1);
    }
    s
}

#[inline]
fn locate(tuple: &[usize]) -> (usize, usize) {
    match *tuple {
        [] => (0, 0),
        [a] => (a, 0),
        [a, b] => {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            (hi * (hi - 1) / 2 + lo, (a > b) as usize)
        }
        [a, b, c] => {
            let s = sort3(a, b, c);
            (binom(s[2], 3) + binom(s[1], 2) + s[0], perm_rank(tuple))
        }
        _ => {
            let mut s = tuple.to_vec();
            s.sort_unstable();
            (subset_rank(&s), perm_rank(tuple))
        }
    }
}

impl Hypergraph {
    /// All-zero hypergraph with full (directed) storage.
    pub fn new(palette: impl Into<Arc<Palette>>, n: usize) -> Self {
        Self::build(palette.into(), n, false)
    }

    /// All-zero hypergraph with one color slot per subset.
    pub fn new_undirected(palette: impl Into<Arc<Palette>>, n: usize) -> Self {
        Self::build(palette.into(), n, true)
    }

    fn build(palette: Arc<Palette>, n: usize, symmetric: bool) -> Self {
        let levels = (0..=palette.order())
            .map(|j| Level::new(n, j, symmetric || j < 2))
            .collect();
        Hypergraph {
            palette,
            n,
            levels,
            undirected: OnceLock::new(),
        }
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn palette_arc(&self) -> &Arc<Palette> {
        &self.palette
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.palette.order()
    }

    pub fn color0(&self) -> Color {
        self.levels[0].data[0]
    }

    pub fn set_color0(&mut self, color: Color) -> Result<()> {
        self.palette.check_color(0, color as usize)?;
        self.levels[0].data[0] = color;
        Ok(())
    }

    /// Whether level `j` keeps one slot per subset.
    pub fn is_compact(&self, j: usize) -> bool {
        self.levels[j].slots == 1
    }

    /// Color of an ordered tuple of distinct vertices. Unchecked apart
    /// from debug assertions; see [`Hypergraph::try_get`].
    #[inline]
    pub fn get(&self, tuple: &[usize]) -> Color {
        debug_assert!(tuple.len() <= self.order());
        debug_assert!(tuple.iter().all(|&v| v < self.n));
        let level = &self.levels[tuple.len()];
        let (rank, perm) = locate(tuple);
        level.data[level.index(rank, perm)]
    }

    #[inline]
    pub fn get2(&self, u: usize, v: usize) -> Color {
        self.get(&[u, v])
    }

    #[inline]
    pub fn get3(&self, a: usize, b: usize, c: usize) -> Color {
        self.get(&[a, b, c])
    }

    /// Color of a subset in a level known to be symmetric; reads the
    /// ascending ordering.
    #[inline]
    pub fn get_set3(&self, a: usize, b: usize, c: usize) -> Color {
        let s = sort3(a, b, c);
        let level = &self.levels[3];
        let rank = binom(s[2], 3) + binom(s[1], 2) + s[0];
        level.data[level.index(rank, 0)]
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() > self.order() {
            return Err(Error::InvalidParameter(format!(
                "tuple of length {} exceeds palette order {}",
                tuple.len(),
                self.order()
            )));
        }
        for (i, &v) in tuple.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if tuple[..i].contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "tuple repeats vertex {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn try_get(&self, tuple: &[usize]) -> Result<Color> {
        self.check_tuple(tuple)?;
        Ok(self.get(tuple))
    }

    /// Sets the color of one ordering of an edge. Other orderings of the
    /// same subset keep their colors.
    pub fn set(&mut self, tuple: &[usize], color: Color) -> Result<()> {
        self.check_tuple(tuple)?;
        let j = tuple.len();
        self.palette.check_color(j, color as usize)?;
        let (rank, perm) = locate(tuple);
        let level = &mut self.levels[j];
        if level.slots == 1 && j >= 2 && level.data[rank] != color {
            level.expand();
        }
        let idx = level.index(rank, perm);
        level.data[idx] = color;
        self.undirected = OnceLock::new();
        Ok(())
    }

    /// Sets every ordering of the subset spanned by `vertices`.
    pub fn set_subset(&mut self, vertices: &[usize], color: Color) -> Result<()> {
        self.check_tuple(vertices)?;
        let j = vertices.len();
        self.palette.check_color(j, color as usize)?;
        let mut s = vertices.to_vec();
        s.sort_unstable();
        let rank = subset_rank(&s);
        let level = &mut self.levels[j];
        let start = level.index(rank, 0);
        level.data[start..start + level.slots].fill(color);
        self.undirected = OnceLock::new();
        Ok(())
    }

    /// Raw slot access for bulk generators: `(slots, data)` of level `j`.
    pub(crate) fn level_data_mut(&mut self, j: usize) -> (usize, &mut Vec<Color>) {
        self.undirected = OnceLock::new();
        let level = &mut self.levels[j];
        (level.slots, &mut level.data)
    }

    pub(crate) fn level_data(&self, j: usize) -> (usize, &[Color]) {
        let level = &self.levels[j];
        (level.slots, &level.data)
    }

    /// True iff every ordering of every subset carries the same color.
    pub fn is_undirected(&self) -> bool {
        *self
            .undirected
            .get_or_init(|| self.levels.iter().all(Level::is_symmetric))
    }

    /// Visits every ordered tuple at levels `1..=k` in
    /// (level, subset rank, permutation rank) order.
    pub fn for_each_entry(&self, mut f: impl FnMut(&[usize], Color)) {
        for j in 1..=self.order() {
            let perms: Vec<Vec<usize>> = (0..factorial(j)).map(|p| perm_unrank(p, j)).collect();
            let level = &self.levels[j];
            let mut tuple = vec![0; j];
            let mut rank = 0;
            for_each_subset(self.n, j, |s| {
                for (p, pattern) in perms.iter().enumerate() {
                    for (slot, &pos) in tuple.iter_mut().zip(pattern) {
                        *slot = s[pos];
                    }
                    f(&tuple, level.data[level.index(rank, p)]);
                }
                rank += 1;
            });
        }
    }

    /// Every color slot in canonical order, level 0 first, with compact
    /// levels expanded. Two hypergraphs on the same palette and vertex
    /// count are equal iff their encodings are.
    pub fn encoding(&self) -> Vec<Color> {
        let mut out = Vec::new();
        for level in &self.levels {
            let full = factorial(level.j);
            if level.slots == full {
                out.extend_from_slice(&level.data);
            } else {
                for &c in &level.data {
                    out.extend(std::iter::repeat_n(c, full));
                }
            }
        }
        out
    }

    /// Pullback along `phi: [m] -> [n]`: the result colors `psi` with
    /// `self(phi ∘ psi)`.
    pub fn pullback(&self, phi: &Morphism) -> Result<Hypergraph> {
        if phi.target() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: phi.target(),
            });
        }
        let m = phi.source();
        let image = phi.image();
        let mut levels = Vec::with_capacity(self.levels.len());
        levels.push(self.levels[0].clone());
        for src in &self.levels[1..] {
            let j = src.j;
            let mut dst = Level::new(m, j, src.slots == 1);
            if j > m {
                levels.push(dst);
                continue;
            }
            let mut s: Vec<usize> = (0..j).collect();
            let mut img = vec![0; j];
            let mut rank = 0;
            if dst.slots == 1 {
                loop {
                    for (slot, &v) in img.iter_mut().zip(&s) {
                        *slot = image[v];
                    }
                    let (src_rank, _) = locate(&img);
                    dst.data[rank] = src.data[src_rank];
                    rank += 1;
                    if !next_subset(&mut s, m) {
                        break;
                    }
                }
            } else {
                let patterns: Vec<Vec<usize>> = (0..dst.slots).map(|p| perm_unrank(p, j)).collect();
                let mut tuple = vec![0; j];
                loop {
                    for (slot, &v) in img.iter_mut().zip(&s) {
                        *slot = image[v];
                    }
                    for (p, pattern) in patterns.iter().enumerate() {
                        for (slot, &pos) in tuple.iter_mut().zip(pattern) {
                            *slot = img[pos];
                        }
                        let (src_rank, src_perm) = locate(&tuple);
                        dst.data[rank * dst.slots + p] = src.data[src.index(src_rank, src_perm)];
                    }
                    rank += 1;
                    if !next_subset(&mut s, m) {
                        break;
                    }
                }
            }
            levels.push(dst);
        }
        Ok(Hypergraph {
            palette: self.palette.clone(),
            n: m,
            levels,
            undirected: OnceLock::new(),
        })
    }

    /// Induced sub-hypergraph on `subset`, relabeled in ascending order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Hypergraph> {
        self.pullback(&Morphism::inclusion(subset, self.n)?)
    }

    /// Rebuilds a hypergraph from [`Hypergraph::encoding`] output.
    pub fn from_encoding(palette: impl Into<Arc<Palette>>, n: usize, encoding: &[Color]) -> Result<Self> {
        let mut g = Self::new(palette, n);
        let total: usize = g.levels.iter().map(|l| l.data.len()).sum();
        if encoding.len() != total {
            return Err(Error::InvalidParameter(format!(
                "encoding has {} slots, expected {total}",
                encoding.len()
            )));
        }
        let mut offset = 0;
        for (j, level) in g.levels.iter_mut().enumerate() {
            let chunk = &encoding[offset..offset + level.data.len()];
            if let Some(&c) = chunk.iter().find(|&&c| c as usize >= g.palette.size(j)) {
                return Err(Error::ColorOutOfRange {
                    level: j,
                    color: c as usize,
                    size: g.palette.size(j),
                });
            }
            level.data.copy_from_slice(chunk);
            offset += level.data.len();
        }
        Ok(g)
    }

    /// Number of color slots in the full encoding.
    pub fn encoding_len(&self) -> usize {
        self.levels.iter().map(|l| binom(self.n, l.j) * factorial(l.j)).sum()
    }

    /// Switches every symmetric level to one slot per subset.
    pub fn compacted(mut self) -> Hypergraph {
        for level in &mut self.levels {
            if level.slots > 1 && level.is_symmetric() {
                level.data = level.data.chunks(level.slots).map(|b| b[0]).collect();
                level.slots = 1;
            }
        }
        self
    }

    /// Copy in which every ordering of a subset takes the color of the
    /// subset's ascending ordering.
    pub fn symmetrized(&self) -> Hypergraph {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                if l.slots == 1 {
                    l.clone()
                } else {
                    Level {
                        j: l.j,
                        slots: 1,
                        data: l.data.chunks(l.slots).map(|b| b[0]).collect(),
                    }
                }
            })
            .collect();
        Hypergraph {
            palette: self.palette.clone(),
            n: self.n,
            levels,
            undirected: OnceLock::new(),
        }
    }

    fn check_compatible(&self, other: &Hypergraph) -> Result<()> {
        if !Arc::ptr_eq(&self.palette, &other.palette) && !self.palette.compatible(&other.palette) {
            return Err(Error::PaletteMismatch);
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Pointwise meet under the palette's per-level semilattices.
    pub fn meet(&self, other: &Hypergraph) -> Result<Hypergraph> {
        self.check_compatible(other)?;
        self.palette.require_ordered()?;
        let mut levels = Vec::with_capacity(self.levels.len());
        for (j, (a, b)) in self.levels.iter().zip(&other.levels).enumerate() {
            let lattice = self.palette.semilattice(j).expect("checked ordered");
            let (mut a, mut b) = (a.clone(), b.clone());
            if a.slots != b.slots {
                a.expand();
                b.expand();
            }
            for (x, &y) in a.data.iter_mut().zip(&b.data) {
                *x = lattice.meet(*x, y);
            }
            levels.push(a);
        }
        Ok(Hypergraph {
            palette: self.palette.clone(),
            n: self.n,
            levels,
            undirected: OnceLock::new(),
        })
    }

    /// Whether `G_1` is injective on the tuple's vertices.
    pub fn is_partite_edge(&self, tuple: &[usize]) -> bool {
        if self.order() < 1 {
            return tuple.len() <= 1;
        }
        let level = &self.levels[1];
        tuple
            .iter()
            .enumerate()
            .all(|(i, &v)| tuple[..i].iter().all(|&w| level.data[w] != level.data[v]))
    }

    /// Equal vertex colors and equal colors on every partite edge.
    pub fn partite_equivalent(&self, other: &Hypergraph) -> Result<bool> {
        self.check_compatible(other)?;
        if self.color0() != other.color0() {
            return Ok(false);
        }
        if self.order() >= 1 && self.levels[1].data != other.levels[1].data {
            return Ok(false);
        }
        let mut equal = true;
        for j in 2..=self.order() {
            for tuple in super::combinatorics::enumerate_injections(j, self.n) {
                if self.is_partite_edge(&tuple) && self.get(&tuple) != other.get(&tuple) {
                    equal = false;
                    break;
                }
            }
        }
        Ok(equal)
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        if self.check_compatible(other).is_err() {
            return false;
        }
        self.levels.iter().zip(&other.levels).all(|(a, b)| {
            if a.slots == b.slots {
                a.data == b.data
            } else {
                let (mut a, mut b) = (a.clone(), b.clone());
                a.expand();
                b.expand();
                a.data == b.data
            }
        })
    }
}

impl Eq for Hypergraph {}
