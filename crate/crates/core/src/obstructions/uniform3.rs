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


//! 3-uniform encoding of the `<= 3`-uniform construction, with a set of
//! green vertices whose tetrahedra mark them out.
//!
//! A vertex prefers only when it is red in the sense of [`DerivedRelations`]:
//! it likes two vertices `b, b'` with `{r, b, b'}` an edge. Without that
//! condition a blue vertex prefers between the reds it likes and the
//! uncorrupted encoding stops being orderable.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use super::leq3::uncorrupted;
use super::orderable::OrderConstraint;
use super::{check_anchors, output_labels, CorruptionSpec, ObstructionKind, ObstructionReport, SearchBudget};
use crate::error::{Error, Result};
use crate::hypercore::{Color, Hypergraph, Palette};
use crate::rng;
use crate::rules::EdgeColors;

pub fn uniform3_palette() -> Palette {
    Palette::uniform(3, 2).expect("valid")
}

/// `(G1, G)` on `2M` vertices. Blue is `[0, M/2)`, red `[M/2, M)`, green
/// `[M, 2M)`; a triple is an edge when it is all green, or red + blue +
/// green with the red liking the blue, or a red ranking two blues
/// correctly. `G` flips each triple with probability sigma.
pub fn gen_3uniform(spec: &CorruptionSpec) -> (Hypergraph, Hypergraph) {
    let m = spec.m;
    let blues = m / 2;
    let g0 = uncorrupted(m, blues, spec.seed);
    let n = 2 * m;
    let mut g1 = Hypergraph::new_undirected(uniform3_palette(), n);
    {
        let (_, e) = g1.level_data_mut(3);
        let mut rank = 0;
        for z in 2..n {
            for y in 1..z {
                for x in 0..y {
                    // x < y < z and blue < red < green by index
                    let member = if x >= m {
                        true
                    } else if x < blues && y >= blues && y < m && z >= m {
                        g0.get2(x, y) == 1
                    } else if y < blues && z >= blues && z < m {
                        g0.get3(x, y, z) == 1
                    } else {
                        false
                    };
                    e[rank] = member as Color;
                    rank += 1;
                }
            }
        }
    }
    let mut g = g1.clone();
    let (_, e) = g.level_data_mut(3);
    let len = e.len();
    let mut r = rng::stream(spec.seed, 1);
    rng::for_each_bernoulli(&mut r, len, spec.sigma, |i| e[i] ^= 1);
    (g1, g)
}

/// Square bit matrix.
#[derive(Clone, Debug)]
struct Bits {
    words: usize,
    data: Vec<u64>,
}

impl Bits {
    fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Bits { words, data: vec![0; rows * words] }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            (b != 0).then(|| {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                w * 64 + t
            })
        })
    })
}

/// Vertex classification and pairwise relations read off a 3-uniform
/// hypergraph. Green and nongreen may overlap on corrupted inputs.
#[derive(Clone, Debug)]
pub struct DerivedRelations {
    n: usize,
    green: Vec<bool>,
    nongreen: Vec<bool>,
    red: Vec<bool>,
    likes: Bits,
    dislikes: Bits,
    similar: Bits,
}

pub fn derived_relations(g: &Hypergraph) -> DerivedRelations {
    let n = g.n();
    // link[x][y] = { z : {x, y, z} in E }
    let mut link = Bits::new(n * n.max(1), n);
    let mut rank = 0;
    let e = g.level_data(3).1;
    for z in 2..n {
        for y in 1..z {
            for x in 0..y {
                if e[rank] == 1 {
                    for (a, b, c) in [(x, y, z), (y, x, z), (x, z, y), (z, x, y), (y, z, x), (z, y, x)] {
                        link.set(a * n + b, c);
                    }
                }
                rank += 1;
            }
        }
    }
    let pair = |x: usize, y: usize| link.row(x * n + y);
    let green: Vec<bool> = (0..n)
        .map(|v| {
            (0..n).any(|y| {
                ones(pair(v, y)).filter(|&z| z > y).any(|z| {
                    pair(v, y).iter().zip(pair(v, z)).zip(pair(y, z)).any(|((a, b), c)| a & b & c != 0)
                })
            })
        })
        .collect();
    let mut greens = Bits::new(1, n);
    for v in (0..n).filter(|&v| green[v]) {
        greens.set(0, v);
    }
    let gmask = greens.row(0);
    // greens outside {x, y} missing from (or present in) the row
    let excluded = |row: &[u64], x: usize, y: usize, present: bool| {
        ones(gmask).any(|w| w != x && w != y && (row[w / 64] >> (w % 64) & 1 == 1) == present)
    };
    let nongreen: Vec<bool> = (0..n)
        .map(|x| ones(gmask).filter(|&gv| gv != x).any(|gv| excluded(pair(x, gv), x, gv, false)))
        .collect();
    let mut likes = Bits::new(n, n);
    let mut dislikes = Bits::new(n, n);
    for x in (0..n).filter(|&x| nongreen[x]) {
        for y in (0..n).filter(|&y| y != x && nongreen[y]) {
            if excluded(pair(x, y), x, y, true) {
                likes.set(x, y);
            }
            if excluded(pair(x, y), x, y, false) {
                dislikes.set(x, y);
            }
        }
    }
    let mut similar = Bits::new(n, n);
    for x in 0..n {
        for x2 in 0..n {
            if x != x2 && likes.row(x).iter().zip(likes.row(x2)).any(|(a, b)| a & b != 0) {
                similar.set(x, x2);
            }
        }
    }
    let red: Vec<bool> = (0..n)
        .map(|r| {
            nongreen[r]
                && ones(likes.row(r)).any(|b| {
                    ones(likes.row(r)).any(|b2| b2 != b && pair(r, b)[b2 / 64] >> (b2 % 64) & 1 == 1)
                })
        })
        .collect();
    DerivedRelations { n, green, nongreen, red, likes, dislikes, similar }
}

impl DerivedRelations {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn green(&self, v: usize) -> bool {
        self.green[v]
    }

    pub fn nongreen(&self, v: usize) -> bool {
        self.nongreen[v]
    }

    /// Nongreen and likes some `b, b'` spanning an edge with it.
    pub fn red(&self, v: usize) -> bool {
        self.red[v]
    }

    pub fn likes(&self, x: usize, y: usize) -> bool {
        self.likes.get(x, y)
    }

    pub fn dislikes(&self, x: usize, y: usize) -> bool {
        self.dislikes.get(x, y)
    }

    pub fn similar(&self, x: usize, y: usize) -> bool {
        self.similar.get(x, y)
    }

    pub fn prefers(&self, r: usize, b: usize, b2: usize) -> bool {
        r != b
            && r != b2
            && b != b2
            && self.red[r]
            && self.nongreen[b]
            && self.nongreen[b2]
            && self.similar(b, b2)
            && self.likes(r, b)
            && self.dislikes(r, b2)
    }

    /// Every `b >_r b'` the relations force on `g`.
    pub fn constraints(&self, g: &Hypergraph) -> Vec<OrderConstraint> {
        let mut out = Vec::new();
        for r in (0..self.n).filter(|&r| self.red[r]) {
            for b in ones(self.likes.row(r)) {
                for b2 in ones(self.dislikes.row(r)) {
                    if !self.prefers(r, b, b2) {
                        continue;
                    }
                    let (greater, smaller) = if g.get_set3(r, b, b2) == 1 { (b, b2) } else { (b2, b) };
                    out.push(OrderConstraint { greater, smaller, via: r });
                }
            }
        }
        out
    }
}

struct Reader<'a>(&'a dyn EdgeColors);

impl Reader<'_> {
    fn e(&self, x: usize, y: usize, z: usize) -> bool {
        let mut s = [x, y, z];
        s.sort_unstable();
        self.0.color(&s) == 1
    }
}

fn symmetric(g: &Reader<'_>, anchors: &[usize], r1: usize, r2: usize, b1: usize, b2: usize, line: usize) -> bool {
    match line {
        0 => g.e(r1, r2, b1) == g.e(r1, r2, b2),
        1 => g.e(b1, b2, r1) == g.e(b1, b2, r2),
        2 => anchors.iter().all(|&a| g.e(r1, b1, a) == g.e(r2, b2, a)),
        3 => anchors.iter().all(|&a| g.e(r1, b2, a) == g.e(r2, b1, a)),
        _ => {
            let (x1, x2) = if line == 4 { (r1, r2) } else { (b1, b2) };
            (0..anchors.len()).all(|i| {
                (i + 1..anchors.len()).all(|j| g.e(x1, anchors[i], anchors[j]) == g.e(x2, anchors[i], anchors[j]))
            })
        }
    }
}

const SYMMETRIES: [&str; 6] = ["iv-1", "iv-2", "iv-3", "iv-4", "iv-5", "iv-6"];

/// `r` is red in `G'` through `b, b'` drawn from `pool`, with `g` a green
/// witness for the likes.
fn red_in(gp: &Reader<'_>, r: usize, g: usize, pool: &[usize]) -> bool {
    let liked: Vec<usize> = pool.iter().copied().filter(|&b| b != r && b != g && gp.e(r, b, g)).collect();
    liked.iter().enumerate().any(|(i, &b)| liked[i + 1..].iter().any(|&b2| gp.e(r, b, b2)))
}

/// Checks every clause of an inconsistent 9-tuple
/// `(r1, r2, r3, b1, b2, g1, g2, g3, g4)`, with `G'` labels given by
/// deleting the anchors. Clause `v` asks that `r1` and `r2` be red in `G'`,
/// witnessed by nongreen vertices liked through `g1`.
pub fn validate_nine(
    g: &Hypergraph,
    g_prime: &dyn EdgeColors,
    anchors: &[usize],
    witness: &[usize],
) -> std::result::Result<Vec<String>, String> {
    let [r1, r2, r3, b1, b2, g1, g2, g3, g4] = *witness else {
        return Err("arity".into());
    };
    let out = output_labels(g.n(), anchors);
    let mut seen = witness.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 9 || witness.iter().any(|&v| v >= g.n() || out[v].is_none()) {
        return Err("distinct".into());
    }
    let o = |v: usize| out[v].expect("checked");
    let gp = Reader(g_prime);
    let gg = Reader(g);
    let mut ok = vec!["distinct".to_string()];
    let mut need = |cond: bool, id: &str| -> std::result::Result<(), String> {
        if cond {
            ok.push(id.to_string());
            Ok(())
        } else {
            Err(id.to_string())
        }
    };
    let gs = [o(g1), o(g2), o(g3), o(g4)];
    need(
        (0..4).all(|skip| {
            let t: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| gs[i]).collect();
            gp.e(t[0], t[1], t[2])
        }),
        "i",
    )?;
    need([r1, r2, r3, b1, b2].iter().all(|&x| !gp.e(o(x), gs[0], gs[1])), "ii")?;
    let rs = [r1, r2, r3];
    let bs = [b1, b2];
    need(
        (0..3).all(|i| (0..2).all(|j| gp.e(o(rs[i]), o(bs[j]), gs[0]) == !matches!((i, j), (0, 0) | (1, 1)))),
        "iii",
    )?;
    for (line, id) in SYMMETRIES.iter().enumerate() {
        need(symmetric(&gg, anchors, r1, r2, b1, b2, line), id)?;
    }
    // nongreen through (g1, g2): everything failing clause ii against them
    let pool: Vec<usize> = (0..g.n())
        .filter_map(|v| out[v])
        .filter(|&x| !gs.contains(&x) && !gp.e(x, gs[0], gs[1]))
        .collect();
    need(red_in(&gp, o(r1), gs[0], &pool) && red_in(&gp, o(r2), gs[0], &pool), "v")?;
    Ok(ok)
}

/// Searches for an inconsistent 9-tuple of `G` against `G'`.
///
/// Finds a tetrahedron of `G'` by sampling 4-sets, takes as candidates the
/// vertices `x` with `{x, g1, g2}` missing from `G'`, and reads likes
/// through `g1`. Candidates are bucketed by their edges with anchor pairs;
/// each `(r1, r2, b1, b2)` with the crossed likes pattern costs one probe.
pub fn find_inconsistent_nine(
    g: &Hypergraph,
    g_prime: &dyn EdgeColors,
    anchors: &[usize],
    budget: SearchBudget,
) -> Result<Option<ObstructionReport>> {
    check_anchors(g.n(), anchors)?;
    if !g.palette().compatible(&uniform3_palette()) {
        return Err(Error::PaletteMismatch);
    }
    if g_prime.n() + anchors.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n() - anchors.len(),
            found: g_prime.n(),
        });
    }
    let out = output_labels(g.n(), anchors);
    let free: Vec<usize> = (0..g.n()).filter(|&v| out[v].is_some()).collect();
    let o = |v: usize| out[v].expect("not an anchor");
    let gp = Reader(g_prime);
    let gg = Reader(g);
    if free.len() < 9 {
        return Ok(None);
    }
    let mut r = rng::stream(budget.seed, 0);
    let mut probes = 0u64;
    let tetra = loop {
        if probes >= budget.probes {
            return Ok(None);
        }
        probes += 1;
        let mut t: Vec<usize> = rng::sample_subset(&mut r, free.len(), 4).into_iter().map(|i| free[i]).collect();
        t.sort_unstable();
        let ot: Vec<usize> = t.iter().map(|&v| o(v)).collect();
        if (0..4).all(|skip| {
            let s: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| ot[i]).collect();
            gp.e(s[0], s[1], s[2])
        }) {
            break t;
        }
    };
    let (g1, g2) = (o(tetra[0]), o(tetra[1]));
    let cand: Vec<usize> = free
        .iter()
        .copied()
        .filter(|v| !tetra.contains(v) && !gp.e(o(*v), g1, g2))
        .collect();
    let mut idx = vec![usize::MAX; g.n()];
    for (i, &v) in cand.iter().enumerate() {
        idx[v] = i;
    }
    let k = cand.len();
    let mut like = vec![false; k * k];
    for i in 0..k {
        for j in i + 1..k {
            let l = gp.e(o(cand[i]), o(cand[j]), g1);
            like[i * k + j] = l;
            like[j * k + i] = l;
        }
    }
    let lk = |x: usize, y: usize| like[idx[x] * k + idx[y]];
    let pool: Vec<usize> = cand.iter().map(|&v| o(v)).collect();
    let certified: Vec<bool> = cand.iter().map(|&v| red_in(&gp, o(v), g1, &pool)).collect();
    let mut map: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for &v in &cand {
        let sig: Vec<bool> = (0..anchors.len())
            .flat_map(|i| (i + 1..anchors.len()).map(move |j| (i, j)))
            .map(|(i, j)| gg.e(v, anchors[i], anchors[j]))
            .collect();
        map.entry(sig).or_default().push(v);
    }
    let mut buckets: Vec<Vec<usize>> = map.into_values().filter(|b| b.len() >= 2).collect();
    for b in buckets.iter_mut() {
        b.shuffle(&mut r);
    }
    let reds: Vec<Vec<usize>> =
        buckets.iter().map(|b| b.iter().copied().filter(|v| certified[idx[*v]]).collect()).collect();
    let weight = |n: usize| (n * n.saturating_sub(1)) as u128;
    let mut pairs: Vec<(usize, usize)> =
        (0..buckets.len()).flat_map(|i| (0..buckets.len()).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| std::cmp::Reverse(weight(reds[i].len()) * weight(buckets[j].len())));
    for (i, j) in pairs {
        for &r1 in &reds[i] {
            for &r2 in &reds[i] {
                if r1 == r2 {
                    continue;
                }
                let bs = &buckets[j];
                let ok = |b: usize| b != r1 && b != r2;
                for &b1 in bs.iter().filter(|&&b| ok(b) && lk(r2, b) && !lk(r1, b)) {
                    for &b2 in bs.iter().filter(|&&b| ok(b) && lk(r1, b) && !lk(r2, b)) {
                        if probes >= budget.probes {
                            return Ok(None);
                        }
                        probes += 1;
                        if !(0..4).all(|line| symmetric(&gg, anchors, r1, r2, b1, b2, line)) {
                            continue;
                        }
                        let Some(&r3) = cand.iter().find(|&&v| ![r1, r2, b1, b2].contains(&v) && lk(v, b1) && lk(v, b2))
                        else {
                            continue;
                        };
                        let witness = vec![r1, r2, r3, b1, b2, tetra[0], tetra[1], tetra[2], tetra[3]];
                        if let Ok(clauses) = validate_nine(g, g_prime, anchors, &witness) {
                            return Ok(Some(ObstructionReport {
                                kind: ObstructionKind::Nine,
                                anchors: anchors.to_vec(),
                                witness,
                                clauses,
                                probes,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
