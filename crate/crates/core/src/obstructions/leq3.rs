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


//! Undirected `{pt, {0,1}, {0,1}, {0,1}}` hypergraphs `(V, E1, E2, E3)`.
//!
//! `b` is blue when `{b} ∈ E1`, red otherwise; red `r` likes blue `b` when
//! `{r, b} ∈ E2`; `r` prefers `b` to `b'` when it likes `b` and not `b'`.
//! Then `b >_r b'` when `r` prefers `b` to `b'` and `{r, b, b'} ∈ E3`, or
//! prefers `b'` to `b` and `{r, b, b'} ∉ E3`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::orderable::OrderConstraint;
use super::{check_anchors, output_labels, CorruptionSpec, ObstructionKind, ObstructionReport, SearchBudget};
use crate::error::{Error, Result};
use crate::hypercore::{Color, Hypergraph, Palette};
use crate::rng;
use crate::rules::EdgeColors;

pub fn leq3_palette() -> Palette {
    Palette::new(vec![1, 2, 2, 2]).expect("valid")
}

#[inline]
fn rank3(x: usize, y: usize, z: usize) -> usize {
    // x < y < z
    z * (z - 1) * (z - 2) / 6 + y * (y - 1) / 2 + x
}

/// Whether red `r` ranks blue `lo < hi` correctly in the uncorrupted
/// instance: it likes both, likes neither, or prefers `hi` to `lo`.
#[inline]
pub(crate) fn ranks_correctly(likes_lo: bool, likes_hi: bool) -> bool {
    !(likes_lo && !likes_hi)
}

/// Uncorrupted instance on `0..m`: vertices below `blues` are blue, `E2`
/// has density 1/2, `E3` holds the correctly ranked triples.
pub(crate) fn uncorrupted(m: usize, blues: usize, seed: u64) -> Hypergraph {
    let mut g = Hypergraph::new_undirected(leq3_palette(), m);
    {
        let (_, e1) = g.level_data_mut(1);
        for c in e1.iter_mut().take(blues) {
            *c = 1;
        }
    }
    {
        let (_, e2) = g.level_data_mut(2);
        let mut r = rng::stream(seed, 0);
        for c in e2.iter_mut() {
            *c = r.gen::<bool>() as Color;
        }
    }
    let likes = |g: &Hypergraph, r: usize, b: usize| g.get2(b, r) == 1;
    let mut e3 = vec![0 as Color; g.level_data(3).1.len()];
    for z in blues..m {
        for y in 1..blues.min(z) {
            let hi = likes(&g, z, y);
            for x in 0..y {
                if ranks_correctly(likes(&g, z, x), hi) {
                    e3[rank3(x, y, z)] = 1;
                }
            }
        }
    }
    *g.level_data_mut(3).1 = e3;
    g
}

/// `G0` and its corruption, where each 3-subset's membership in `E3` is
/// flipped with probability sigma. `E1` and `E2` are left alone.
pub fn gen_leq3(spec: &CorruptionSpec) -> Result<(Hypergraph, Hypergraph)> {
    if !spec.m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("M = {} must be even", spec.m)));
    }
    let g0 = uncorrupted(spec.m, spec.m / 2, spec.seed);
    let mut g = g0.clone();
    let (_, e3) = g.level_data_mut(3);
    let mut r = rng::stream(spec.seed, 1);
    let len = e3.len();
    rng::for_each_bernoulli(&mut r, len, spec.sigma, |i| e3[i] ^= 1);
    Ok((g0, g))
}

/// Colors read on ascending tuples.
struct Reader<'a>(&'a dyn EdgeColors);

impl Reader<'_> {
    fn e1(&self, v: usize) -> bool {
        self.0.color(&[v]) == 1
    }

    fn e2(&self, u: usize, v: usize) -> bool {
        self.0.color(&[u.min(v), u.max(v)]) == 1
    }

    fn e3(&self, x: usize, y: usize, z: usize) -> bool {
        let mut s = [x, y, z];
        s.sort_unstable();
        self.0.color(&s) == 1
    }
}

pub(crate) fn leq3_constraints(g: &Hypergraph) -> Vec<OrderConstraint> {
    let rd = Reader(g);
    let n = g.n();
    let (blue, red): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| rd.e1(v));
    let mut out = Vec::new();
    for &r in &red {
        let (liked, unliked): (Vec<usize>, Vec<usize>) = blue.iter().partition(|&&b| rd.e2(r, b));
        for &b in &liked {
            for &b2 in &unliked {
                let (greater, smaller) = if rd.e3(r, b, b2) { (b, b2) } else { (b2, b) };
                out.push(OrderConstraint { greater, smaller, via: r });
            }
        }
    }
    out
}

/// Checks every clause of an inconsistent quadruplet `(r1, r2, b1, b2)`.
/// Returns the satisfied clause identifiers, or the first failing one.
pub fn validate_quad(
    g: &Hypergraph,
    g_prime: &dyn EdgeColors,
    anchors: &[usize],
    witness: &[usize],
) -> std::result::Result<Vec<String>, String> {
    let [r1, r2, b1, b2] = *witness else {
        return Err("arity".into());
    };
    let out = output_labels(g.n(), anchors);
    let mut seen = witness.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != 4 || witness.iter().any(|&v| v >= g.n() || out[v].is_none()) {
        return Err("distinct".into());
    }
    let o = |v: usize| out[v].expect("checked");
    let gg = Reader(g);
    let gp = Reader(g_prime);
    let mut ok = vec!["distinct".to_string()];
    let mut need = |cond: bool, id: &str| -> std::result::Result<(), String> {
        if cond {
            ok.push(id.to_string());
            Ok(())
        } else {
            Err(id.to_string())
        }
    };
    need(
        !gg.e1(r1) && !gg.e1(r2) && gg.e1(b1) && gg.e1(b2)
            && !gp.e1(o(r1)) && !gp.e1(o(r2)) && gp.e1(o(b1)) && gp.e1(o(b2)),
        "i",
    )?;
    need(
        gp.e2(o(r1), o(b1)) && !gp.e2(o(r1), o(b2)) && gp.e2(o(r2), o(b2)) && !gp.e2(o(r2), o(b1)),
        "ii",
    )?;
    need(
        anchors.iter().all(|&a| gg.e2(b1, a) == gg.e2(b2, a) && gg.e2(r1, a) == gg.e2(r2, a)),
        "iii-e2-anchors",
    )?;
    need(gg.e2(r1, b1) == gg.e2(r2, b2) && gg.e2(r1, b2) == gg.e2(r2, b1), "iii-e2-pairs")?;
    need(gg.e3(r1, r2, b1) == gg.e3(r1, r2, b2), "iii-e3-1")?;
    need(gg.e3(b1, b2, r1) == gg.e3(b1, b2, r2), "iii-e3-2")?;
    need(anchors.iter().all(|&a| gg.e3(r1, b1, a) == gg.e3(r2, b2, a)), "iii-e3-3")?;
    need(anchors.iter().all(|&a| gg.e3(r1, b2, a) == gg.e3(r2, b1, a)), "iii-e3-4")?;
    let pairs = || {
        (0..anchors.len()).flat_map(move |i| (i + 1..anchors.len()).map(move |j| (anchors[i], anchors[j])))
    };
    need(pairs().all(|(a, c)| gg.e3(r1, a, c) == gg.e3(r2, a, c)), "iii-e3-5")?;
    need(pairs().all(|(a, c)| gg.e3(b1, a, c) == gg.e3(b2, a, c)), "iii-e3-6")?;
    Ok(ok)
}

/// Anchor-connectivity signature: `E2` to each anchor, then `E3` with each
/// anchor pair.
fn signature(g: &Reader<'_>, v: usize, anchors: &[usize]) -> Vec<bool> {
    let mut s: Vec<bool> = anchors.iter().map(|&a| g.e2(v, a)).collect();
    for i in 0..anchors.len() {
        for j in i + 1..anchors.len() {
            s.push(g.e3(v, anchors[i], anchors[j]));
        }
    }
    s
}

fn buckets(g: &Reader<'_>, vs: &[usize], anchors: &[usize]) -> Vec<Vec<usize>> {
    let mut map: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for &v in vs {
        map.entry(signature(g, v, anchors)).or_default().push(v);
    }
    map.into_values().filter(|b| b.len() >= 2).collect()
}

/// Searches for an inconsistent quadruplet of `G` against the repaired
/// `G'` (on `V` minus the anchors, ascending labels).
///
/// Reds and blues are bucketed by anchor signature, so the anchor clauses
/// hold automatically inside a bucket pair. Bucket pairs are visited
/// largest first, members in a seeded random order; each candidate
/// quadruplet with the required `G'` likes pattern costs one probe.
pub fn find_inconsistent_quad(
    g: &Hypergraph,
    g_prime: &dyn EdgeColors,
    anchors: &[usize],
    budget: SearchBudget,
) -> Result<Option<ObstructionReport>> {
    check_anchors(g.n(), anchors)?;
    if !g.palette().compatible(&leq3_palette()) {
        return Err(Error::PaletteMismatch);
    }
    if g_prime.n() + anchors.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n() - anchors.len(),
            found: g_prime.n(),
        });
    }
    let out = output_labels(g.n(), anchors);
    let gg = Reader(g);
    let gp = Reader(g_prime);
    let o = |v: usize| out[v].expect("not an anchor");
    let free: Vec<usize> = (0..g.n()).filter(|&v| out[v].is_some()).collect();
    let reds: Vec<usize> = free.iter().copied().filter(|&v| !gg.e1(v) && !gp.e1(o(v))).collect();
    let blues: Vec<usize> = free.iter().copied().filter(|&v| gg.e1(v) && gp.e1(o(v))).collect();
    let mut r = rng::stream(budget.seed, 0);
    let mut red_buckets = buckets(&gg, &reds, anchors);
    let mut blue_buckets = buckets(&gg, &blues, anchors);
    for b in red_buckets.iter_mut().chain(blue_buckets.iter_mut()) {
        b.shuffle(&mut r);
    }
    let mut pairs: Vec<(usize, usize)> = (0..red_buckets.len())
        .flat_map(|i| (0..blue_buckets.len()).map(move |j| (i, j)))
        .collect();
    let weight = |n: usize| (n * (n - 1)) as u128;
    pairs.sort_by_key(|&(i, j)| std::cmp::Reverse(weight(red_buckets[i].len()) * weight(blue_buckets[j].len())));
    // G' likes, filled on demand: 0 no, 1 yes, 2 unknown
    let n = g.n();
    let mut likes = vec![2u8; n * n];
    let mut probes = 0u64;
    for (i, j) in pairs {
        let (rb, bb) = (&red_buckets[i], &blue_buckets[j]);
        for &rv in rb {
            for &bv in bb {
                if likes[rv * n + bv] == 2 {
                    likes[rv * n + bv] = gp.e2(o(rv), o(bv)) as u8;
                }
            }
        }
        let lk = |r: usize, b: usize| likes[r * n + b] == 1;
        for &r1 in rb {
            for &r2 in rb {
                if r1 == r2 {
                    continue;
                }
                for &b1 in bb.iter().filter(|&&b| lk(r1, b) && !lk(r2, b)) {
                    for &b2 in bb.iter().filter(|&&b| lk(r2, b) && !lk(r1, b)) {
                        if probes >= budget.probes {
                            return Ok(None);
                        }
                        probes += 1;
                        let quick = gg.e2(r1, b1) == gg.e2(r2, b2)
                            && gg.e2(r1, b2) == gg.e2(r2, b1)
                            && gg.e3(b1, b2, r1) == gg.e3(b1, b2, r2)
                            && gg.e3(r1, r2, b1) == gg.e3(r1, r2, b2)
                            && anchors.iter().all(|&a| {
                                gg.e3(r1, b1, a) == gg.e3(r2, b2, a) && gg.e3(r1, b2, a) == gg.e3(r2, b1, a)
                            });
                        if !quick {
                            continue;
                        }
                        let witness = vec![r1, r2, b1, b2];
                        if let Ok(clauses) = validate_quad(g, g_prime, anchors, &witness) {
                            return Ok(Some(ObstructionReport {
                                kind: ObstructionKind::Quad,
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::orderable::solve;
    use crate::obstructions::{is_consistently_orderable, orderable_leq3_property};
    use crate::hypercore::combinatorics::binom;

    #[test]
    fn uncorrupted_instance_is_orderable_by_the_standard_order() {
        for seed in 0..5 {
            let (g0, g) = gen_leq3(&CorruptionSpec::new(24, 0.0, seed).unwrap()).unwrap();
            assert_eq!(g0, g);
            assert!(g0.is_undirected());
            let cons = leq3_constraints(&g0);
            assert!(!cons.is_empty());
            assert!(cons.iter().all(|c| c.greater > c.smaller));
            assert!(solve(24, &cons).is_orderable());
            assert!(orderable_leq3_property().obeys(&g0).unwrap());
        }
    }

    #[test]
    fn odd_m_is_rejected() {
        assert!(gen_leq3(&CorruptionSpec::new(7, 0.0, 0).unwrap()).is_err());
    }

    #[test]
    fn degenerate_colorings_have_no_triples() {
        // one blue cannot form {r, b, b'}
        let g = uncorrupted(6, 1, 3);
        assert!(g.level_data(3).1.iter().all(|&c| c == 0));
        let g = uncorrupted(6, 6, 3);
        assert!(g.level_data(3).1.iter().all(|&c| c == 0));
    }

    #[test]
    fn corruption_touches_only_e3_at_the_expected_rate() {
        let m = 120;
        let sigma = 0.02;
        let (g0, g) = gen_leq3(&CorruptionSpec::new(m, sigma, 5).unwrap()).unwrap();
        assert_eq!(g0.level_data(1), g.level_data(1));
        assert_eq!(g0.level_data(2), g.level_data(2));
        let flips = g0.level_data(3).1.iter().zip(g.level_data(3).1).filter(|(a, b)| a != b).count() as f64;
        let total = binom(m, 3) as f64;
        assert!((flips - sigma * total).abs() < 3.0 * (sigma * total).sqrt());
        assert!(!is_consistently_orderable(&g).unwrap().is_orderable());
    }

    /// Writes the clauses of an inconsistent quadruplet directly.
    #[test]
    fn hand_built_quadruplet_is_found() {
        // 0, 1 red; 2, 3 blue; 4 anchor (blue)
        let mut g = Hypergraph::new_undirected(leq3_palette(), 5);
        for b in [2, 3, 4] {
            g.set_subset(&[b], 1).unwrap();
        }
        g.set_subset(&[0, 2], 1).unwrap();
        g.set_subset(&[1, 3], 1).unwrap();
        g.set_subset(&[0, 4], 1).unwrap();
        g.set_subset(&[1, 4], 1).unwrap();
        g.set_subset(&[0, 2, 3], 1).unwrap();
        g.set_subset(&[1, 2, 3], 1).unwrap();
        let gp = g.restrict(&[0, 1, 2, 3]).unwrap();
        let report = find_inconsistent_quad(&g, &gp, &[4], SearchBudget::new(100, 0))
            .unwrap()
            .expect("planted");
        let mut w = report.witness.clone();
        w.sort_unstable();
        assert_eq!(w, vec![0, 1, 2, 3]);
        assert_eq!(report.clauses.len(), 11);
        // breaking one symmetry removes it
        g.set_subset(&[1, 2, 3], 0).unwrap();
        let gp = g.restrict(&[0, 1, 2, 3]).unwrap();
        assert!(find_inconsistent_quad(&g, &gp, &[4], SearchBudget::new(100, 0)).unwrap().is_none());
    }

    #[test]
    fn sigma_zero_has_no_quadruplet() {
        let (_, g) = gen_leq3(&CorruptionSpec::new(60, 0.0, 2).unwrap()).unwrap();
        let anchors = [3, 40, 17];
        let keep: Vec<usize> = (0..60).filter(|v| !anchors.contains(v)).collect();
        let gp = g.restrict(&keep).unwrap();
        assert!(find_inconsistent_quad(&g, &gp, &anchors, SearchBudget::new(10_000_000, 1)).unwrap().is_none());
    }

    #[test]
    fn corrupted_instance_yields_a_validated_quadruplet() {
        let (_, g) = gen_leq3(&CorruptionSpec::new(100, 0.05, 2).unwrap()).unwrap();
        let anchors = [3, 80, 17];
        let keep: Vec<usize> = (0..100).filter(|v| !anchors.contains(v)).collect();
        let gp = g.restrict(&keep).unwrap();
        let report = find_inconsistent_quad(&g, &gp, &anchors, SearchBudget::new(10_000_000, 1))
            .unwrap()
            .expect("found");
        assert!(validate_quad(&g, &gp, &anchors, &report.witness).is_ok());
        // the contradiction it certifies: r1 and r2 demand opposite orders
        let [r1, r2, b1, b2] = report.witness[..] else { panic!() };
        let o = |v: usize| keep.iter().position(|&x| x == v).unwrap();
        let cons = leq3_constraints(&gp);
        let has = |via, gr, sm| cons.iter().any(|c| c.via == o(via) && c.greater == o(gr) && c.smaller == o(sm));
        assert!((has(r1, b1, b2) && has(r2, b2, b1)) || (has(r1, b2, b1) && has(r2, b1, b2)));
    }
}
