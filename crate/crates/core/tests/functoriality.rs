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


//! Property-based checks of the hypergraph category laws and of the
//! plumbing built on them.

use std::sync::Arc;

use proptest::prelude::*;

use hedra_core::hypercore::{read_hgr, write_hgr, Hypergraph, Morphism, Palette};
use hedra_core::properties::{distance, random_hypergraph};
use hedra_core::rng;
use hedra_core::rules::{apply_rule, identity_copy};

fn palettes() -> Vec<Arc<Palette>> {
    vec![
        Arc::new(Palette::digraph()),
        Arc::new(Palette::uniform(3, 2).unwrap()),
        Arc::new(Palette::new(vec![2, 3, 2]).unwrap()),
        Arc::new(Palette::uniform(2, 3).unwrap().with_chain_orders()),
    ]
}

fn graph(pal: usize, n: usize, seed: u64) -> Hypergraph {
    random_hypergraph(&palettes()[pal], n, &mut rng::rng(seed))
}

/// An injection `[m] -> [n]` read off a shuffle.
fn injection(m: usize, n: usize, seed: u64) -> Morphism {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut rng::rng(seed));
    v.truncate(m);
    Morphism::new(v, n).unwrap()
}

fn sizes() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..=7).prop_flat_map(|n| (Just(n), 0..=n)).prop_flat_map(|(n, m)| (Just(n), Just(m), 0..=m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pullback_composes((n, m, l) in sizes(), pal in 0usize..4, seed: u64) {
        let g = graph(pal, n, seed);
        let phi = injection(m, n, seed ^ 1);
        let psi = injection(l, m, seed ^ 2);
        let lhs = g.pullback(&phi).unwrap().pullback(&psi).unwrap();
        let rhs = g.pullback(&phi.compose(&psi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_pullback_is_trivial(n in 0usize..7, pal in 0usize..4, seed: u64) {
        let g = graph(pal, n, seed);
        prop_assert_eq!(g.pullback(&Morphism::identity(n)).unwrap(), g);
    }

    #[test]
    fn restrictions_nest(n in 0usize..8, pal in 0usize..4, seed: u64, outer_bits: u8, inner_bits: u8) {
        let g = graph(pal, n, seed);
        let outer: Vec<usize> = (0..n).filter(|v| outer_bits >> v & 1 == 1).collect();
        let inner: Vec<usize> = (0..outer.len()).filter(|i| inner_bits >> i & 1 == 1).collect();
        let direct: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        prop_assert_eq!(g.restrict(&outer).unwrap().restrict(&inner).unwrap(), g.restrict(&direct).unwrap());
    }

    #[test]
    fn encoding_and_text_round_trip(n in 0usize..7, pal in 0usize..4, seed: u64) {
        let g = graph(pal, n, seed);
        let back = Hypergraph::from_encoding(g.palette_arc().clone(), n, &g.encoding()).unwrap();
        prop_assert_eq!(&back, &g);
        let text = write_hgr(&g);
        prop_assert_eq!(write_hgr(&read_hgr(&text).unwrap()), text);
    }

    #[test]
    fn symmetrized_is_undirected_and_stays_so((n, m, _) in sizes(), pal in 0usize..4, seed: u64) {
        let s = graph(pal, n, seed).symmetrized();
        prop_assert!(s.is_undirected());
        prop_assert!(s.pullback(&injection(m, n, seed)).unwrap().is_undirected());
    }

    #[test]
    fn meet_is_commutative_and_idempotent(n in 0usize..6, seed: u64) {
        let (a, b) = (graph(3, n, seed), graph(3, n, seed ^ 9));
        prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
        prop_assert_eq!(a.meet(&a).unwrap(), a);
    }

    #[test]
    fn distance_is_a_symmetric_fraction(n in 2usize..7, pal in 0usize..3, seed: u64) {
        let (a, b) = (graph(pal, n, seed), graph(pal, n, seed ^ 3));
        let d = distance(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, distance(&b, &a).unwrap());
        prop_assert_eq!(distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn identity_copy_is_restriction((n, a, _) in sizes(), pal in 0usize..4, seed: u64) {
        let g = graph(pal, n, seed);
        let phi = injection(a, n, seed ^ 5);
        let rule = identity_copy(g.palette_arc().clone(), a);
        let rest: Vec<usize> = (0..n).filter(|v| !phi.image().contains(v)).collect();
        prop_assert_eq!(apply_rule(&rule, &g, &phi).unwrap(), g.restrict(&rest).unwrap());
    }
}
